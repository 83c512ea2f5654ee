#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace vdwcp {

// Philox 4x32-10 counter-based generator. A block is a pure function of
// (key, counter), so random numbers can be addressed by (path, step) and the
// stream is identical for any worker count or evaluation order.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                            std::array<std::uint32_t, 4> ctr) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      std::array<std::uint32_t, 4> out;
      out[0] = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0;
      out[1] = static_cast<std::uint32_t>(p1);
      out[2] = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1;
      out[3] = static_cast<std::uint32_t>(p0);
      ctr = out;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return ctr;
  }
};

// 53-bit uniform in (0, 1]; never returns 0, so log(u) is safe.
inline double uniform_open(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

struct NormalTriple {
  double z0, z1, z2;
};

// Three standard normals addressed by (path, step), via Box-Muller on two
// Philox blocks. The fourth lane of the counter tags the consumer stream.
inline NormalTriple normal_triple(std::uint64_t key, std::uint32_t path,
                                  std::uint32_t step, std::uint32_t stream = 0) {
  auto a = Philox4x32::block(key, {path, step, 0u, stream});
  auto b = Philox4x32::block(key, {path, step, 1u, stream});
  double u0 = uniform_open(a[0], a[1]);
  double u1 = uniform_open(a[2], a[3]);
  double u2 = uniform_open(b[0], b[1]);
  double u3 = uniform_open(b[2], b[3]);
  constexpr double two_pi = 6.283185307179586476925286766559;
  double r0 = std::sqrt(-2.0 * std::log(u0));
  double r1 = std::sqrt(-2.0 * std::log(u2));
  return {r0 * std::cos(two_pi * u1), r0 * std::sin(two_pi * u1),
          r1 * std::cos(two_pi * u3)};
}

// Two uniforms in (0, 1] addressed the same way (independent of normal_triple
// because the third counter lane differs).
inline std::array<double, 2> uniform_pair(std::uint64_t key, std::uint32_t path,
                                          std::uint32_t step,
                                          std::uint32_t stream = 0) {
  auto a = Philox4x32::block(key, {path, step, 2u, stream});
  return {uniform_open(a[0], a[1]), uniform_open(a[2], a[3])};
}

}  // namespace vdwcp
