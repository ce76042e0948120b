#pragma once

// Projection onto G-balls {g : ||g||_G <= r} by the fixed-point dual
// iteration, the ROF split built on it, and projection onto TV-balls by
// bisection over the ROF weight. The dual variable p is kept as a
// certificate: the output always satisfies projection = r * div(p)/h with
// |p| <= 1 pointwise, i.e. an explicit F = r*p with f = div F.

#include <cmath>
#include <string>
#include <vector>

#include "lpdec/field.hpp"

namespace lpdec {

struct ProjectionConfig {
  double tau = 0.125;      // fixed-point step; stable for tau <= 1/8
  int maxIterations = 5000;
  double tolerance = 1e-6; // on max pixel change of the projection, relative to range(f)

  void validate() const {
    if (!(tau > 0.0 && tau <= 0.125))
      throw InvalidArgument("ProjectionConfig: tau must be in (0, 1/8]");
    if (maxIterations < 1) throw InvalidArgument("ProjectionConfig: maxIterations >= 1");
    if (!(tolerance > 0.0)) throw InvalidArgument("ProjectionConfig: tolerance > 0");
  }
};

struct ProjectionResult {
  Field projection;
  VectorField dual;            // |dual| <= 1 pointwise; F = radius * dual
  int iterations = 0;
  double finalResidual = 0.0;  // last max pixel change of the projection
  bool converged = true;
  std::vector<double> energyHistory;  // ||f - r div p||_2 per iterate
};

namespace detail {

inline double max_dual_magnitude(const VectorField& p) {
  double m = 0.0;
  for (size_t i = 0; i < p.p1.size(); ++i) {
    double a = p.p1.samples[i], b = p.p2.samples[i];
    m = std::max(m, std::sqrt(a * a + b * b));
  }
  return m;
}

}  // namespace detail

// Nearest point of {g : ||g||_G <= r} in L2 distance. f must be zero-mean
// (G on the torus contains only zero-mean distributions). Internally the
// iteration runs on plain pixel differences; the continuous-units radius r
// maps to the pixel-units weight s = r/h.
inline ProjectionResult project_g_ball(const Field& f, double radius,
                                       const ProjectionConfig& cfg = {},
                                       const VectorField* warmStart = nullptr) {
  cfg.validate();
  if (radius < 0.0) throw InvalidArgument("project_g_ball: radius must be >= 0");
  const double range = field_range(f);
  if (std::abs(mean(f)) > 1e-9 * std::max(range, 1e-300))
    throw NotZeroMean("project_g_ball: input mean " + std::to_string(mean(f)) +
                      " exceeds 1e-9 of range");

  const int W = f.width, H = f.height;
  ProjectionResult res;
  res.projection = Field(W, H);
  res.dual = VectorField(W, H);
  if (radius == 0.0 || range == 0.0) {
    res.energyHistory.push_back(norm_l2(f));
    res.finalResidual = 0.0;
    return res;
  }

  const double h = grid_spacing(f);
  const double s = radius / h;  // projection = s * div(p)
  const double tau = cfg.tau;
  const double tol = cfg.tolerance * range;

  std::vector<double> p1(f.size(), 0.0), p2(f.size(), 0.0);
  if (warmStart) {
    check_same_dims(warmStart->p1, f, "project_g_ball warm start");
    p1 = warmStart->p1.samples;
    p2 = warmStart->p2.samples;
  }
  std::vector<double> d(f.size(), 0.0);   // div p minus f/s
  const double* fs = f.samples.data();

  auto compute_d = [&]() {
    for (int i = 0; i < H; ++i) {
      const size_t row = static_cast<size_t>(i) * W;
      const size_t rowUp = static_cast<size_t>(i == 0 ? H - 1 : i - 1) * W;
      for (int k = 0; k < W; ++k) {
        const size_t kp = row + (k == 0 ? W - 1 : k - 1);
        d[row + k] = p1[row + k] - p1[kp] + p2[row + k] - p2[rowUp + k] - fs[row + k] / s;
      }
    }
  };

  compute_d();
  // energy of the current iterate: ||f - s div p||; d holds div p - f/s
  auto record_energy = [&]() {
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
      double diff = -s * d[i];  // f - s div p = -s (div p - f/s)
      acc += diff * diff;
    }
    res.energyHistory.push_back(std::sqrt(h * h * acc));
  };
  record_energy();

  res.converged = false;
  for (int n = 0; n < cfg.maxIterations; ++n) {
    for (int i = 0; i < H; ++i) {
      const size_t row = static_cast<size_t>(i) * W;
      const size_t rowDn = static_cast<size_t>((i + 1) == H ? 0 : i + 1) * W;
      for (int k = 0; k < W; ++k) {
        const size_t idx = row + k;
        const size_t kn = row + ((k + 1) == W ? 0 : k + 1);
        double gx = d[kn] - d[idx];
        double gy = d[rowDn + k] - d[idx];
        double denom = 1.0 + tau * std::sqrt(gx * gx + gy * gy);
        p1[idx] = (p1[idx] + tau * gx) / denom;
        p2[idx] = (p2[idx] + tau * gy) / denom;
      }
    }
    double maxChange = 0.0;
    for (int i = 0; i < H; ++i) {
      const size_t row = static_cast<size_t>(i) * W;
      const size_t rowUp = static_cast<size_t>(i == 0 ? H - 1 : i - 1) * W;
      for (int k = 0; k < W; ++k) {
        const size_t idx = row + k;
        const size_t kp = row + (k == 0 ? W - 1 : k - 1);
        double nd = p1[idx] - p1[kp] + p2[idx] - p2[rowUp + k] - fs[idx] / s;
        maxChange = std::max(maxChange, std::abs(s * (nd - d[idx])));
        d[idx] = nd;
      }
    }
    record_energy();
    res.iterations = n + 1;
    res.finalResidual = maxChange;
    if (maxChange <= tol) {
      res.converged = true;
      break;
    }
  }

  for (size_t i = 0; i < f.size(); ++i)
    res.projection.samples[i] = s * (d[i] + fs[i] / s);
  res.dual.p1.samples = std::move(p1);
  res.dual.p2.samples = std::move(p2);
  return res;
}

struct RofResult {
  Field u;  // cartoon part, carries mean(f)
  Field v;  // zero-mean residual with ||v||_G <= 1/(2 lambda), certified by stats.dual
  ProjectionResult stats;
};

// Two-part split minimizing TV(u) + lambda ||f-u||_2^2, realized as
// v = P_G(f - mean, 1/(2 lambda)), u = f - v.
inline RofResult rof(const Field& f, double lambda, const ProjectionConfig& cfg = {},
                     const VectorField* warmStart = nullptr) {
  if (!(lambda > 0.0)) throw InvalidArgument("rof: lambda must be > 0");
  RofResult r;
  r.stats = project_g_ball(zero_mean(f), 1.0 / (2.0 * lambda), cfg, warmStart);
  r.v = r.stats.projection;
  r.u = f - r.v;
  return r;
}

struct TvProjectionResult {
  Field projection;    // nearest point with norm_tv <= budget; mean preserved
  Field complement;    // input - projection; equals gRadius * div(dual)/h
  VectorField dual;
  double gRadius = 0.0;  // certified ||complement||_G bound (= 1/(2 alpha))
  double alpha = 0.0;    // final ROF weight (0 when no solve was needed)
  int bisectionSteps = 0;
  int innerIterations = 0;
  bool innerConverged = true;
};

// Upper bound on ||f||_G from the explicit field F = grad(Poisson(f)):
// solves the discrete Laplace problem spectrally, so div F = f holds to
// machine precision. f must be zero-mean.
inline double g_norm_upper_bound(const Field& f, VectorField* witness = nullptr) {
  const double range = field_range(f);
  if (range == 0.0) {
    if (witness) *witness = VectorField(f.width, f.height);
    return 0.0;
  }
  if (std::abs(mean(f)) > 1e-9 * range)
    throw NotZeroMean("g_norm_upper_bound: input must be zero-mean");
  Spectrum s = forward_transform(f);
  const double h = grid_spacing(f);
  for (int m = 0; m < s.height; ++m)
    for (int n = 0; n < s.width; ++n) {
      if (m == 0 && n == 0) {
        s.at(0, 0) = 0.0;
        continue;
      }
      double sx = std::sin(kPi * n / s.width);
      double sy = std::sin(kPi * m / s.height);
      double lap = -4.0 * (sx * sx + sy * sy);  // symbol of div(grad(.))
      s.at(m, n) *= h / lap;
    }
  Field u = inverse_transform(s);
  VectorField F = gradient(u);
  double bound = detail::max_dual_magnitude(F);
  if (witness) *witness = std::move(F);
  return bound;
}

// Nearest point of {v : norm_tv(v) <= budget}, via bisection over the ROF
// weight until the output TV matches the budget to 1%. The complement is
// the exact G-ball projection at the final weight, so its dual certifies
// ||complement||_G <= 1/(2 alpha).
inline TvProjectionResult project_tv_ball_certified(const Field& sigma, double budget,
                                                    const ProjectionConfig& cfg = {},
                                                    double alphaHint = 1.0) {
  cfg.validate();
  if (budget < 0.0) throw InvalidArgument("project_tv_ball: budget must be >= 0");
  TvProjectionResult out;
  const double tv0 = norm_tv(sigma);
  if (tv0 <= budget) {
    out.projection = sigma;
    out.complement = Field(sigma.width, sigma.height);
    out.dual = VectorField(sigma.width, sigma.height);
    return out;
  }
  const double m = mean(sigma);
  Field sz = zero_mean(sigma);
  if (budget == 0.0) {
    out.projection = Field(sigma.width, sigma.height);
    for (double& v : out.projection.samples) v = m;
    out.complement = sz;
    out.gRadius = g_norm_upper_bound(sz, &out.dual);
    // scale the witness to |dual| <= 1 so complement = gRadius * div(dual)/h
    if (out.gRadius > 0.0) {
      out.dual.p1 = (1.0 / out.gRadius) * out.dual.p1;
      out.dual.p2 = (1.0 / out.gRadius) * out.dual.p2;
    }
    return out;
  }

  VectorField warm(sigma.width, sigma.height);
  auto evaluate = [&](double alpha) {
    ProjectionResult pr = project_g_ball(sz, 1.0 / (2.0 * alpha), cfg, &warm);
    warm = pr.dual;
    out.innerIterations += pr.iterations;
    if (!pr.converged) out.innerConverged = false;
    return pr;
  };

  const double kAlphaMin = 1e-14, kAlphaMax = 1e14;
  double alpha = std::clamp(alphaHint, kAlphaMin, kAlphaMax);
  ProjectionResult pr = evaluate(alpha);
  double tv = norm_tv(sz - pr.projection);
  int evals = 1;
  // Larger alpha keeps more TV in the projection; expand to a bracket.
  double lo = alpha, hi = alpha;
  Field vLo, vHi;
  if (tv < budget) {
    while (tv < budget) {
      if (++evals > 60 || hi >= kAlphaMax)
        throw BisectionStall("project_tv_ball: could not bracket the TV budget");
      lo = hi;
      hi = std::min(hi * 16.0, kAlphaMax);
      pr = evaluate(hi);
      tv = norm_tv(sz - pr.projection);
    }
  } else {
    while (tv > budget) {
      if (++evals > 60 || lo <= kAlphaMin)
        throw BisectionStall("project_tv_ball: could not bracket the TV budget");
      hi = lo;
      lo = std::max(lo / 16.0, kAlphaMin);
      pr = evaluate(lo);
      tv = norm_tv(sz - pr.projection);
    }
  }
  alpha = tv >= budget ? hi : lo;

  // Log-space bisection to |tv - budget| <= 1% of budget.
  while (std::abs(tv - budget) > 0.01 * budget) {
    if (++evals > 200)
      throw BisectionStall("project_tv_ball: bisection failed to reach the 1% band");
    alpha = std::sqrt(lo * hi);
    pr = evaluate(alpha);
    tv = norm_tv(sz - pr.projection);
    if (tv > budget)
      hi = alpha;
    else
      lo = alpha;
  }

  out.complement = pr.projection;
  out.projection = sigma - pr.projection;  // carries mean(sigma)
  out.dual = pr.dual;
  out.gRadius = 1.0 / (2.0 * alpha);
  out.alpha = alpha;
  out.bisectionSteps = evals;
  return out;
}

inline Field project_tv_ball(const Field& sigma, double budget,
                             const ProjectionConfig& cfg = {}) {
  return project_tv_ball_certified(sigma, budget, cfg).projection;
}

}  // namespace lpdec
