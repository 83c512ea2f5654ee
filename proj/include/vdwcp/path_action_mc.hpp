#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vdwcp/errors.hpp"
#include "vdwcp/parallel.hpp"
#include "vdwcp/philox.hpp"
#include "vdwcp/photon_kernels.hpp"
#include "vdwcp/quadrature.hpp"
#include "vdwcp/smearing_profile.hpp"

namespace vdwcp {

// One double-time-integral action sample per Brownian path: the discrete form
//   A = 4 pi alpha sum_{j < i} dq_i . W(q_i - q_j, (i - j) dt) . dq_j
// over a path of horizon tau / alpha^2 with left-endpoint positions.
struct PathConfig {
  double alpha = 0.4;
  double tau = 1.0;
  double dt = 0.0;  // 0 selects min(horizon/400, 1/64)
  std::size_t paths = 2000;
  std::uint64_t seed = 1;
  // Increments of step k are sums of leaf_splits finer normals addressed at
  // leaf index k * leaf_splits + j. Halving dt while halving leaf_splits
  // therefore reuses the same Brownian leaves, so a refinement comparison
  // isolates the discretization bias from the sampling noise.
  int leaf_splits = 1;
  bool reverse_paths = false;     // run on the time-reversed increments
  double pair_time_cutoff = 0.0;  // 0 keeps every pair (the unbiased sum)
  double envelope_factor = 6.5;   // table reach in units of sqrt(horizon)
  int table_s_nodes = 320;
  int table_t_nodes = 96;

  double horizon() const { return tau / (alpha * alpha); }

  std::size_t resolved_steps() const {
    double t = horizon();
    double d = dt > 0.0 ? dt : std::min(t / 400.0, 1.0 / 64.0);
    auto n = static_cast<long long>(std::llround(t / d));
    return static_cast<std::size_t>(std::max(50LL, n));
  }

  double resolved_dt() const { return horizon() / resolved_steps(); }

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ConfigError("path sampling requires alpha in (0, 1)");
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw ConfigError("path sampling requires tau > 0");
    if (dt < 0.0 || !std::isfinite(dt))
      throw ConfigError("path step dt must be >= 0 (0 selects the default)");
    if (dt > 0.0 && dt > horizon() / 50.0)
      throw ConfigError("path step dt must not exceed horizon/50");
    if (paths < 2) throw ConfigError("path sampling requires at least 2 paths");
    if (leaf_splits < 1 || leaf_splits > 16)
      throw ConfigError("leaf_splits must lie in [1, 16]");
    if (!(envelope_factor >= 3.0))
      throw ConfigError("envelope_factor must be at least 3");
    if (table_s_nodes < 8 || table_t_nodes < 8)
      throw ConfigError("propagator table needs at least 8 nodes per axis");
    if (pair_time_cutoff < 0.0 || !std::isfinite(pair_time_cutoff))
      throw ConfigError("pair_time_cutoff must be >= 0");
  }
};

// Bicubic interpolation of the two propagator components on a grid linear in
// the displacement s and logarithmic in the time lag t. Grid rows share one
// radial panel decomposition, so a whole t-row costs little more than the
// single most demanding entry.
class PropagatorTable {
 public:
  struct TStencil {
    int idx[4];
    double w[4];
  };

  PropagatorTable(const SmearingProfile& profile, double s_max, double t_min,
                  double t_max, int s_nodes, int t_nodes)
      : s_max_(s_max),
        t_min_(t_min),
        t_max_(t_max),
        ns_(s_nodes),
        nt_(t_nodes) {
    if (!(s_max > 0.0) || !(t_min > 0.0) || !(t_max > t_min))
      throw ConfigError("propagator table needs s_max > 0, 0 < t_min < t_max");
    inv_ds_ = (ns_ - 1) / s_max_;
    lt0_ = std::log(t_min_);
    dlt_ = std::log(t_max_ / t_min_) / (nt_ - 1);
    data_.assign(static_cast<std::size_t>(ns_) * nt_ * 2, 0.0);

    std::vector<double> tgrid(nt_);
    for (int j = 0; j < nt_; ++j) tgrid[j] = std::exp(lt0_ + j * dlt_);
    tgrid[0] = t_min_;
    tgrid[nt_ - 1] = t_max_;

    const double scale = profile.scale();
    const double base_width = profile.compact()
                                  ? 3.14159265358979323846 / (4.0 * scale)
                                  : 0.5 / scale;
    const double hard_rmax = profile.compact() ? 400.0 / scale : 40.0 / scale;
    const auto& rule = gauss_legendre(16);
    constexpr double pi = 3.14159265358979323846;

    parallel_for(static_cast<std::size_t>(ns_), [&](std::size_t i) {
      const double s = i / inv_ds_;
      const double width =
          s > 0.0 ? std::min(base_width, pi / (2.0 * s)) : base_width;
      double* row = data_.data() + i * static_cast<std::size_t>(nt_) * 2;
      double max_mag = 0.0;
      int quiet = 0;
      for (int p = 0; p * width < hard_rmax; ++p) {
        const double a = p * width, h = 0.5 * width;
        double mag = 0.0;
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
          const double r = a + h * (1.0 + rule.x[k]);
          const double wgt = pi * h * rule.w[k] * r * profile.rho_hat(r);
          const TransverseShapes b = g_profiles(r * s);
          const double cp = wgt * b.b1, cl = wgt * b.b3;
          mag += (std::abs(cp) + std::abs(cl)) * std::exp(-r * t_min_);
          for (int j = 0; j < nt_; ++j) {
            const double rt = r * tgrid[j];
            if (rt > 700.0) break;  // exp underflow; t ascends, so done
            const double e = std::exp(-rt);
            row[2 * j] += cp * e;
            row[2 * j + 1] += cl * e;
          }
        }
        max_mag = std::max(max_mag, mag);
        quiet = mag < 1e-15 * max_mag ? quiet + 1 : 0;
        if (quiet >= 2) break;
      }
    });
  }

  double s_max() const { return s_max_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

  TStencil t_stencil(double t) const {
    double jf = (std::log(t) - lt0_) / dlt_;
    jf = std::clamp(jf, 0.0, static_cast<double>(nt_ - 1));
    int j0 = std::min(static_cast<int>(jf), nt_ - 2);
    double f = jf - j0;
    TStencil st;
    catmull_rom(f, st.w);
    st.idx[0] = std::max(j0 - 1, 0);
    st.idx[1] = j0;
    st.idx[2] = j0 + 1;
    st.idx[3] = std::min(j0 + 2, nt_ - 1);
    return st;
  }

  // caller guarantees 0 <= s <= s_max
  PropagatorComponents eval(double s, const TStencil& ts) const {
    double sf = s * inv_ds_;
    int i0 = std::min(static_cast<int>(sf), ns_ - 2);
    double f = sf - i0;
    double sw[4];
    catmull_rom(f, sw);
    const int si[4] = {std::max(i0 - 1, 0), i0, i0 + 1, std::min(i0 + 2, ns_ - 1)};
    double perp = 0.0, par = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double* rowp = data_.data() + si[a] * static_cast<std::size_t>(nt_) * 2;
      double rp = 0.0, rl = 0.0;
      for (int b = 0; b < 4; ++b) {
        rp += ts.w[b] * rowp[2 * ts.idx[b]];
        rl += ts.w[b] * rowp[2 * ts.idx[b] + 1];
      }
      perp += sw[a] * rp;
      par += sw[a] * rl;
    }
    return {perp, par};
  }

 private:
  static void catmull_rom(double f, double w[4]) {
    w[0] = ((-0.5 * f + 1.0) * f - 0.5) * f;
    w[1] = (1.5 * f - 2.5) * f * f + 1.0;
    w[2] = ((-1.5 * f + 2.0) * f + 0.5) * f;
    w[3] = (0.5 * f - 0.5) * f * f;
  }

  double s_max_, t_min_, t_max_, inv_ds_, lt0_, dlt_;
  int ns_, nt_;
  std::vector<double> data_;
};

struct ActionStats {
  double mean = 0.0, mean_se = 0.0;
  double variance = 0.0, variance_se = 0.0;
  std::array<double, 3> covariance{};     // cov(action, endpoint component)
  std::array<double, 3> covariance_se{};
  std::size_t paths = 0, steps = 0;
  double dt = 0.0, horizon = 0.0, alpha = 0.0, tau = 0.0;

  void validate() const {
    for (double v : {mean, mean_se, variance, variance_se})
      if (!std::isfinite(v)) throw ConsistencyError("nonfinite path statistic");
    if (variance < 0.0) throw ConsistencyError("negative action variance");
  }
};

// Raw per-path output; kept so distributional checks (symmetry of the action
// law, coupling of refined and unrefined discretizations through shared
// Brownian leaves) can see individual samples, not just moments.
struct PathSamples {
  std::vector<double> action;
  std::vector<double> end_x, end_y, end_z;
  std::size_t steps = 0;
  double dt = 0.0;
  double horizon = 0.0;
  double alpha = 0.0;
  double tau = 0.0;
};

inline PathSamples sample_paths(const SmearingProfile& profile,
                                const PathConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.resolved_steps();
  const double dtv = cfg.resolved_dt();
  const double horizon = cfg.horizon();
  const double s_max = cfg.envelope_factor * std::sqrt(horizon);

  PropagatorTable table(profile, s_max, dtv, horizon, cfg.table_s_nodes,
                        cfg.table_t_nodes);

  const std::size_t lag_limit =
      cfg.pair_time_cutoff > 0.0
          ? std::min<std::size_t>(
                n - 1, static_cast<std::size_t>(cfg.pair_time_cutoff / dtv))
          : n - 1;
  std::vector<PropagatorTable::TStencil> stencils(lag_limit + 1);
  for (std::size_t lag = 1; lag <= lag_limit; ++lag)
    stencils[lag] = table.t_stencil(lag * dtv);

  const std::size_t m = cfg.paths;
  std::vector<double> action(m), ex(m), ey(m), ez(m);
  const int leaves = cfg.leaf_splits;
  const double leaf_scale = std::sqrt(dtv / leaves);
  constexpr double four_pi = 4.0 * 3.14159265358979323846;

  parallel_for(m, [&](std::size_t p) {
    std::vector<double> dqx(n), dqy(n), dqz(n), qx(n), qy(n), qz(n);
    for (std::size_t k = 0; k < n; ++k) {
      double sx = 0.0, sy = 0.0, sz = 0.0;
      for (int l = 0; l < leaves; ++l) {
        auto z = normal_triple(cfg.seed, static_cast<std::uint32_t>(p),
                               static_cast<std::uint32_t>(k * leaves + l));
        sx += z.z0;
        sy += z.z1;
        sz += z.z2;
      }
      dqx[k] = leaf_scale * sx;
      dqy[k] = leaf_scale * sy;
      dqz[k] = leaf_scale * sz;
    }
    if (cfg.reverse_paths) {
      std::reverse(dqx.begin(), dqx.end());
      std::reverse(dqy.begin(), dqy.end());
      std::reverse(dqz.begin(), dqz.end());
      for (std::size_t k = 0; k < n; ++k) {
        dqx[k] = -dqx[k];
        dqy[k] = -dqy[k];
        dqz[k] = -dqz[k];
      }
    }
    qx[0] = qy[0] = qz[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      qx[k] = qx[k - 1] + dqx[k - 1];
      qy[k] = qy[k - 1] + dqy[k - 1];
      qz[k] = qz[k - 1] + dqz[k - 1];
    }

    double acc = 0.0;
    for (std::size_t lag = 1; lag <= lag_limit; ++lag) {
      const PropagatorTable::TStencil& st = stencils[lag];
      for (std::size_t i = lag; i < n; ++i) {
        const std::size_t j = i - lag;
        const double dx = qx[i] - qx[j], dy = qy[i] - qy[j], dz = qz[i] - qz[j];
        const double s2 = dx * dx + dy * dy + dz * dz;
        const double s = std::sqrt(s2);
        if (s > s_max)
          throw TableRangeError(
              "path excursion left the propagator table: |x| = " +
              std::to_string(s) + " at time lag t = " +
              std::to_string(lag * dtv) + " (table reach " +
              std::to_string(s_max) + "); raise envelope_factor");
        const PropagatorComponents w = table.eval(s, st);
        const double dot = dqx[i] * dqx[j] + dqy[i] * dqy[j] + dqz[i] * dqz[j];
        double term = w.perp * dot;
        if (s2 > 1e-24) {
          const double pi_ = dqx[i] * dx + dqy[i] * dy + dqz[i] * dz;
          const double pj_ = dqx[j] * dx + dqy[j] * dy + dqz[j] * dz;
          term += (w.par - w.perp) * pi_ * pj_ / s2;
        }
        acc += term;
      }
    }
    const double a = four_pi * cfg.alpha * acc;
    if (!std::isfinite(a))
      throw ConsistencyError("nonfinite action accumulation on path " +
                             std::to_string(p));
    action[p] = a;
    ex[p] = qx[n - 1] + dqx[n - 1];
    ey[p] = qy[n - 1] + dqy[n - 1];
    ez[p] = qz[n - 1] + dqz[n - 1];
  });

  PathSamples samples;
  samples.action = std::move(action);
  samples.end_x = std::move(ex);
  samples.end_y = std::move(ey);
  samples.end_z = std::move(ez);
  samples.steps = n;
  samples.dt = dtv;
  samples.horizon = horizon;
  samples.alpha = cfg.alpha;
  samples.tau = cfg.tau;
  return samples;
}

inline ActionStats summarize(const PathSamples& samples) {
  const std::size_t m = samples.action.size();
  if (m < 2) throw ConfigError("need at least two paths to form moments");
  const std::vector<double>& action = samples.action;

  ActionStats out;
  out.paths = m;
  out.steps = samples.steps;
  out.dt = samples.dt;
  out.horizon = samples.horizon;
  out.alpha = samples.alpha;
  out.tau = samples.tau;

  double mean = 0.0;
  for (double a : action) mean += a;
  mean /= static_cast<double>(m);
  double m2 = 0.0, m4 = 0.0;
  for (double a : action) {
    double d = a - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(m);
  m4 /= static_cast<double>(m);
  out.mean = mean;
  out.variance = m2 * static_cast<double>(m) / static_cast<double>(m - 1);
  out.mean_se = std::sqrt(m2 / static_cast<double>(m - 1));
  out.variance_se =
      std::sqrt(std::max(m4 - m2 * m2, 0.0) / static_cast<double>(m));

  const std::vector<double>* ends[3] = {&samples.end_x, &samples.end_y,
                                        &samples.end_z};
  for (int c = 0; c < 3; ++c) {
    const std::vector<double>& e = *ends[c];
    double emean = 0.0;
    for (double v : e) emean += v;
    emean /= static_cast<double>(m);
    double cv = 0.0, cv2 = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      double t = (action[p] - mean) * (e[p] - emean);
      cv += t;
      cv2 += t * t;
    }
    out.covariance[c] = cv / static_cast<double>(m - 1);
    double cm = cv / static_cast<double>(m);
    out.covariance_se[c] = std::sqrt(
        std::max(cv2 / static_cast<double>(m) - cm * cm, 0.0) /
        static_cast<double>(m));
  }
  out.validate();
  return out;
}

inline ActionStats sample_action(const SmearingProfile& profile,
                                 const PathConfig& cfg) {
  return summarize(sample_paths(profile, cfg));
}

// Weighted linear fit of the sampled action variance against alpha; the
// intercept estimates the alpha -> 0 limit 2 a0 tau.
struct ExtrapolationResult {
  double intercept = 0.0, intercept_se = 0.0;
  double slope = 0.0, slope_se = 0.0;
  double chi2 = 0.0;
  std::vector<ActionStats> stats;
};

inline ExtrapolationResult variance_extrapolation(
    const SmearingProfile& profile, const std::vector<PathConfig>& configs) {
  if (configs.size() < 3)
    throw FitError("variance extrapolation needs at least 3 alpha values");
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t j = i + 1; j < configs.size(); ++j)
      if (configs[i].alpha == configs[j].alpha)
        throw FitError("variance extrapolation needs distinct alpha values");
    if (configs[i].tau != configs[0].tau)
      throw ConfigError("variance extrapolation requires a common tau");
  }

  ExtrapolationResult out;
  out.stats.reserve(configs.size());
  for (const auto& cfg : configs) out.stats.push_back(sample_action(profile, cfg));

  double sw = 0.0, sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
  for (const auto& st : out.stats) {
    if (!(st.variance_se > 0.0))
      throw FitError("degenerate variance standard error in extrapolation");
    double w = 1.0 / (st.variance_se * st.variance_se);
    sw += w;
    sx += w * st.alpha;
    sxx += w * st.alpha * st.alpha;
    sy += w * st.variance;
    sxy += w * st.alpha * st.variance;
  }
  double delta = sw * sxx - sx * sx;
  if (!(delta > 1e-12 * sw * sxx))
    throw FitError("collinear design in variance extrapolation");
  out.intercept = (sxx * sy - sx * sxy) / delta;
  out.slope = (sw * sxy - sx * sy) / delta;
  out.intercept_se = std::sqrt(sxx / delta);
  out.slope_se = std::sqrt(sw / delta);
  for (const auto& st : out.stats) {
    double r = st.variance - out.intercept - out.slope * st.alpha;
    out.chi2 += r * r / (st.variance_se * st.variance_se);
  }
  return out;
}

}  // namespace vdwcp
