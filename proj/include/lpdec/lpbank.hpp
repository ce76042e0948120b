#pragma once

// Littlewood-Paley radial masks and their directional shell-sector
// variants. A scale-j mask is exactly 1 on the dyadic ring
// 2^{j-1} <= |xi| <= 2^j, exactly 0 outside (2^{j-2}, 2^{j+1}), and ramps
// between with Meyer's auxiliary polynomial in log2-radial coordinate.
// Directional masks multiply in an angular window over sectors of [0,pi);
// the windows form an exact partition of unity so the sectors of a scale
// recombine into its radial mask.

#include <cmath>
#include <string>
#include <vector>

#include "lpdec/field.hpp"

namespace lpdec {

// Meyer's auxiliary ramp: 0 at t<=0, 1 at t>=1, C^3 monotone between.
inline double meyer_ramp(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - t * 20.0)));
}

struct FilterMask {
  int width = 0;
  int height = 0;
  std::vector<double> gains;  // aligned with Spectrum layout
  int scale = 0;
  int direction = -1;     // -1 = isotropic
  int directionCount = 1;

  double at(int m, int n) const { return gains[static_cast<size_t>(m) * width + n]; }
};

namespace detail {

// Radial profile evaluated from the exact squared radius; plateau and
// stopband decisions compare rho^2 against exact powers of four so the
// per-bin support constraints hold bit-exactly.
inline double radial_gain_sq(int j, double rho2) {
  const double plateauLo = std::ldexp(1.0, 2 * (j - 1));
  const double plateauHi = std::ldexp(1.0, 2 * j);
  const double stopLo = std::ldexp(1.0, 2 * (j - 2));
  const double stopHi = std::ldexp(1.0, 2 * (j + 1));
  if (rho2 <= stopLo || rho2 >= stopHi) return 0.0;
  if (rho2 >= plateauLo && rho2 <= plateauHi) return 1.0;
  const double log2rho = 0.5 * std::log2(rho2);
  if (rho2 < plateauLo) return meyer_ramp(log2rho - (j - 2));
  return meyer_ramp(1.0 - (log2rho - j));
}

inline void check_scale_fits(int j, int width, int height) {
  const int nyquist = std::min(width, height) / 2;
  if (j < 0 || (1 << j) > nyquist)
    throw ScaleOutOfRange("scale j=" + std::to_string(j) + " does not fit a " +
                          std::to_string(width) + "x" + std::to_string(height) +
                          " grid (plateau must stay under Nyquist)");
}

}  // namespace detail

// Radial gain of scale j at radial frequency rho (cycles per torus).
inline double radial_gain(int j, double rho) {
  return detail::radial_gain_sq(j, rho * rho);
}

inline FilterMask make_radial_mask(int j, int width, int height) {
  check_grid_dims(width, height);
  detail::check_scale_fits(j, width, height);
  FilterMask m;
  m.width = width;
  m.height = height;
  m.scale = j;
  m.gains.resize(static_cast<size_t>(width) * height);
  for (int mm = 0; mm < height; ++mm) {
    double fy = mm < height / 2 ? mm : mm - height;
    for (int nn = 0; nn < width; ++nn) {
      double fx = nn < width / 2 ? nn : nn - width;
      m.gains[static_cast<size_t>(mm) * width + nn] =
          detail::radial_gain_sq(j, fx * fx + fy * fy);
    }
  }
  return m;
}

// Angular window of sector l out of L over [0,pi): plateau of half-sector
// width around the sector center, Meyer ramps of half-sector width into the
// neighbors. Adjacent ramps are complementary, so sum_l A_l(theta) = 1.
inline double angular_gain(int l, int L, double theta) {
  const double delta = kPi / L;
  const double center = (l + 0.5) * delta;
  const double d = std::abs(std::remainder(theta - center, kPi));
  if (d <= 0.25 * delta) return 1.0;
  if (d >= 0.75 * delta) return 0.0;
  return meyer_ramp((0.75 * delta - d) / (0.5 * delta));
}

inline FilterMask make_directional_mask(int j, int l, int L, int width, int height) {
  check_grid_dims(width, height);
  detail::check_scale_fits(j, width, height);
  if (L < 2) throw InvalidArgument("directional masks need L >= 2 sectors");
  if (l < 0 || l >= L)
    throw BadDirectionIndex("direction index " + std::to_string(l) + " outside [0," +
                            std::to_string(L) + ")");
  FilterMask m;
  m.width = width;
  m.height = height;
  m.scale = j;
  m.direction = l;
  m.directionCount = L;
  m.gains.resize(static_cast<size_t>(width) * height);
  for (int mm = 0; mm < height; ++mm) {
    double fy = mm < height / 2 ? mm : mm - height;
    for (int nn = 0; nn < width; ++nn) {
      double fx = nn < width / 2 ? nn : nn - width;
      double g = detail::radial_gain_sq(j, fx * fx + fy * fy);
      if (g != 0.0) {
        // evaluate the angle on the canonical half-plane representative so
        // gain(-xi) == gain(xi) holds bit-exactly
        double cx = fx, cy = fy;
        if (cy < 0.0 || (cy == 0.0 && cx < 0.0)) {
          cx = -cx;
          cy = -cy;
        }
        g *= angular_gain(l, L, std::atan2(cy, cx));
      }
      m.gains[static_cast<size_t>(mm) * width + nn] = g;
    }
  }
  return m;
}

// Spectral multiplication: inverse(gains * forward(f)). The symmetry of
// the masked spectrum is checked against the scale of the unmasked one, so
// an asymmetric (broken) mask is flagged even when it leaves only a sliver
// of the input's energy.
inline Field apply_mask(const Field& f, const FilterMask& m) {
  if (f.width != m.width || f.height != m.height)
    throw DimensionMismatch("apply_mask: field and mask dimensions differ");
  Spectrum s = forward_transform(f);
  const double inputScale = detail::max_coeff_abs(s);
  for (size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= m.gains[i];
  if (inputScale > 0.0 && detail::hermitian_defect_abs(s) > 1e-6 * inputScale)
    throw NonHermitianSpectrum("apply_mask: masked spectrum lost Hermitian symmetry");
  return detail::inverse_unchecked(s);
}

// The scale whose plateau holds omega: ceil(log2 omega), with exact powers
// of two mapping omega = 2^j to j.
inline int select_scale(double omega) {
  if (!(omega >= 1.0))
    throw FrequencyOutOfRange("select_scale: omega must be >= 1");
  return static_cast<int>(std::ceil(std::log2(omega)));
}

inline int select_scale(double omega, int gridSize) {
  int j = select_scale(omega);
  if ((1 << j) > gridSize / 2)
    throw FrequencyOutOfRange("select_scale: scale " + std::to_string(j) +
                              " does not fit a grid of size " + std::to_string(gridSize));
  return j;
}

// Scales (strictly decreasing) with a direction count per scale; L = 1
// means isotropic. The ramp identifier exists for forward compatibility;
// only Meyer's polynomial ramp is implemented.
struct BankSpec {
  std::vector<int> scales;
  std::vector<int> directionsPerScale;
  std::string ramp = "meyer";

  void validate(int width, int height) const {
    if (scales.empty()) throw InvalidArgument("BankSpec: no scales");
    if (ramp != "meyer") throw InvalidArgument("BankSpec: unknown ramp '" + ramp + "'");
    if (directionsPerScale.size() != scales.size())
      throw InvalidArgument("BankSpec: directionsPerScale must match scales");
    for (size_t i = 0; i < scales.size(); ++i) {
      detail::check_scale_fits(scales[i], width, height);
      if (i > 0 && scales[i] >= scales[i - 1])
        throw InvalidArgument("BankSpec: scales must be strictly decreasing");
      if (directionsPerScale[i] < 1) throw InvalidArgument("BankSpec: L >= 1 required");
    }
  }
};

}  // namespace lpdec
