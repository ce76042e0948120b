#pragma once

// Periodic grids on the torus [0,2pi)^2, their Fourier transforms, the
// discrete differential operators, and the norms everything else is
// measured in. Norms carry the cell-area factor h^2 (h = 2pi/width) so
// that parameter values stay meaningful across grid sizes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "lpdec/errors.hpp"

namespace lpdec {

inline constexpr double kPi = std::numbers::pi;

inline bool is_pow2(int v) { return v >= 1 && (v & (v - 1)) == 0; }

inline void check_grid_dims(int width, int height) {
  if (width < 2 || height < 2 || !is_pow2(width) || !is_pow2(height))
    throw InvalidArgument("grid dimensions must be powers of two, >= 2 (got " +
                          std::to_string(width) + "x" + std::to_string(height) + ")");
}

// Real samples on the torus, row-major. Sample (i,k) is
// f(x = 2pi*k/width, y = 2pi*i/height).
struct Field {
  int width = 0;
  int height = 0;
  std::vector<double> samples;

  Field() = default;
  Field(int w, int h) : width(w), height(h), samples(static_cast<size_t>(w) * h, 0.0) {
    check_grid_dims(w, h);
  }
  Field(int w, int h, std::vector<double> data)
      : width(w), height(h), samples(std::move(data)) {
    check_grid_dims(w, h);
    if (samples.size() != static_cast<size_t>(w) * h)
      throw DimensionMismatch("sample count does not match grid dimensions");
  }

  double& at(int i, int k) { return samples[static_cast<size_t>(i) * width + k]; }
  double at(int i, int k) const { return samples[static_cast<size_t>(i) * width + k]; }
  size_t size() const { return samples.size(); }

  bool same_dims(const Field& o) const { return width == o.width && height == o.height; }

  bool all_finite() const {
    for (double v : samples)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

inline void check_same_dims(const Field& a, const Field& b, const char* where) {
  if (!a.same_dims(b)) throw DimensionMismatch(std::string(where) + ": dimensions differ");
}

// Grid spacing h = 2pi/width (square grids assumed by the norm semantics).
inline double grid_spacing(const Field& f) { return 2.0 * kPi / f.width; }

inline double field_min(const Field& f) {
  return *std::min_element(f.samples.begin(), f.samples.end());
}
inline double field_max(const Field& f) {
  return *std::max_element(f.samples.begin(), f.samples.end());
}
inline double field_range(const Field& f) { return field_max(f) - field_min(f); }

inline double mean(const Field& f) {
  double s = 0.0;
  for (double v : f.samples) s += v;
  return s / static_cast<double>(f.size());
}

inline double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  check_same_dims(a, b, "max_abs_diff");
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
  return m;
}

inline Field operator+(const Field& a, const Field& b) {
  check_same_dims(a, b, "operator+");
  Field r = a;
  for (size_t i = 0; i < r.size(); ++i) r.samples[i] += b.samples[i];
  return r;
}
inline Field operator-(const Field& a, const Field& b) {
  check_same_dims(a, b, "operator-");
  Field r = a;
  for (size_t i = 0; i < r.size(); ++i) r.samples[i] -= b.samples[i];
  return r;
}
inline Field operator*(double s, const Field& a) {
  Field r = a;
  for (double& v : r.samples) v *= s;
  return r;
}
inline Field& operator+=(Field& a, const Field& b) {
  check_same_dims(a, b, "operator+=");
  for (size_t i = 0; i < a.size(); ++i) a.samples[i] += b.samples[i];
  return a;
}
inline Field& operator-=(Field& a, const Field& b) {
  check_same_dims(a, b, "operator-=");
  for (size_t i = 0; i < a.size(); ++i) a.samples[i] -= b.samples[i];
  return a;
}

inline Field zero_mean(const Field& f) {
  Field r = f;
  double m = mean(f);
  for (double& v : r.samples) v -= m;
  return r;
}

// Pair of fields (p1,p2); the dual variable / vector field F with f = div F.
struct VectorField {
  Field p1, p2;

  VectorField() = default;
  VectorField(Field a, Field b) : p1(std::move(a)), p2(std::move(b)) {
    check_same_dims(p1, p2, "VectorField");
  }
  VectorField(int w, int h) : p1(w, h), p2(w, h) {}

  int width() const { return p1.width; }
  int height() const { return p1.height; }
};

// Complex Fourier coefficients in standard DFT layout: entry (m,n) belongs
// to the integer frequency (xi_x, xi_y) with xi in [-N/2, N/2). The
// transform is unitary, so spectral and sample energies agree.
struct Spectrum {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> coeffs;

  Spectrum() = default;
  Spectrum(int w, int h)
      : width(w), height(h), coeffs(static_cast<size_t>(w) * h, {0.0, 0.0}) {
    check_grid_dims(w, h);
  }

  std::complex<double>& at(int m, int n) { return coeffs[static_cast<size_t>(m) * width + n]; }
  std::complex<double> at(int m, int n) const {
    return coeffs[static_cast<size_t>(m) * width + n];
  }

  int freq_x(int n) const { return n < width / 2 ? n : n - width; }
  int freq_y(int m) const { return m < height / 2 ? m : m - height; }
  double radial_frequency(int m, int n) const {
    double fx = freq_x(n), fy = freq_y(m);
    return std::sqrt(fx * fx + fy * fy);
  }
};

namespace detail {

inline std::vector<std::complex<double>> twiddle_table(size_t n) {
  std::vector<std::complex<double>> t(n / 2);
  for (size_t k = 0; k < n / 2; ++k)
    t[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  return t;
}

// Iterative radix-2 Cooley-Tukey; n must be a power of two.
inline void fft_pow2(std::complex<double>* a, size_t n,
                     const std::vector<std::complex<double>>& table, bool inverse) {
  if (n < 2) return;
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    size_t step = n / len;
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = table[k * step];
        if (inverse) w = std::conj(w);
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

// In-place 2-D FFT over a width x height row-major complex buffer.
inline void fft2(std::vector<std::complex<double>>& buf, int width, int height, bool inverse) {
  const auto rowTable = twiddle_table(static_cast<size_t>(width));
  for (int i = 0; i < height; ++i)
    fft_pow2(buf.data() + static_cast<size_t>(i) * width, width, rowTable, inverse);
  const auto colTable = twiddle_table(static_cast<size_t>(height));
  std::vector<std::complex<double>> col(height);
  for (int n = 0; n < width; ++n) {
    for (int m = 0; m < height; ++m) col[m] = buf[static_cast<size_t>(m) * width + n];
    fft_pow2(col.data(), height, colTable, inverse);
    for (int m = 0; m < height; ++m) buf[static_cast<size_t>(m) * width + n] = col[m];
  }
}

}  // namespace detail

// Unitary DFT: inverse_transform(forward_transform(f)) == f to machine
// precision, and sum|coeff|^2 == sum f^2.
inline Spectrum forward_transform(const Field& f) {
  Spectrum s(f.width, f.height);
  for (size_t i = 0; i < f.size(); ++i) s.coeffs[i] = f.samples[i];
  detail::fft2(s.coeffs, f.width, f.height, false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (auto& c : s.coeffs) c *= scale;
  return s;
}

namespace detail {

// Largest |C(xi) - conj(C(-xi))| over all bins.
inline double hermitian_defect_abs(const Spectrum& s) {
  double worst = 0.0;
  for (int m = 0; m < s.height; ++m) {
    int mm = (s.height - m) % s.height;
    for (int n = 0; n < s.width; ++n) {
      int nn = (s.width - n) % s.width;
      worst = std::max(worst, std::abs(s.at(m, n) - std::conj(s.at(mm, nn))));
    }
  }
  return worst;
}

inline double max_coeff_abs(const Spectrum& s) {
  double m = 0.0;
  for (const auto& c : s.coeffs) m = std::max(m, std::abs(c));
  return m;
}

// Inverse FFT taking real parts, without the symmetry check. Callers must
// have validated symmetry against the appropriate scale.
inline Field inverse_unchecked(const Spectrum& s) {
  std::vector<std::complex<double>> buf = s.coeffs;
  fft2(buf, s.width, s.height, true);
  Field f(s.width, s.height);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (size_t i = 0; i < buf.size(); ++i) f.samples[i] = buf[i].real() * scale;
  return f;
}

}  // namespace detail

// Max Hermitian-symmetry defect relative to the largest coefficient.
inline double hermitian_defect(const Spectrum& s) {
  double maxAbs = detail::max_coeff_abs(s);
  if (maxAbs == 0.0) return 0.0;
  return detail::hermitian_defect_abs(s) / maxAbs;
}

inline Field inverse_transform(const Spectrum& s) {
  check_grid_dims(s.width, s.height);
  if (s.coeffs.size() != static_cast<size_t>(s.width) * s.height)
    throw DimensionMismatch("spectrum coefficient count does not match dimensions");
  if (hermitian_defect(s) > 1e-6)
    throw NonHermitianSpectrum("spectrum violates Hermitian symmetry beyond 1e-6 relative");
  return detail::inverse_unchecked(s);
}

// Forward differences with periodic wrap; gray-level per pixel step.
inline VectorField gradient(const Field& u) {
  VectorField g(u.width, u.height);
  for (int i = 0; i < u.height; ++i) {
    int in = (i + 1) == u.height ? 0 : i + 1;
    for (int k = 0; k < u.width; ++k) {
      int kn = (k + 1) == u.width ? 0 : k + 1;
      g.p1.at(i, k) = u.at(i, kn) - u.at(i, k);
      g.p2.at(i, k) = u.at(in, k) - u.at(i, k);
    }
  }
  return g;
}

// Backward differences with periodic wrap; the negative adjoint of gradient.
inline Field divergence(const VectorField& p) {
  Field d(p.width(), p.height());
  const Field& p1 = p.p1;
  const Field& p2 = p.p2;
  for (int i = 0; i < d.height; ++i) {
    int ip = i == 0 ? d.height - 1 : i - 1;
    for (int k = 0; k < d.width; ++k) {
      int kp = k == 0 ? d.width - 1 : k - 1;
      d.at(i, k) = p1.at(i, k) - p1.at(i, kp) + p2.at(i, k) - p2.at(ip, k);
    }
  }
  return d;
}

inline double dot(const Field& a, const Field& b) {
  check_same_dims(a, b, "dot");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a.samples[i] * b.samples[i];
  return s;
}

inline double dot(const VectorField& a, const VectorField& b) {
  return dot(a.p1, b.p1) + dot(a.p2, b.p2);
}

// L1 norm with cell area: h^2 * sum |f|.
inline double norm_l1(const Field& f) {
  double h = grid_spacing(f);
  double s = 0.0;
  for (double v : f.samples) s += std::abs(v);
  return h * h * s;
}

// Squared L2 norm with cell area: h^2 * sum f^2.
inline double norm_l2sq(const Field& f) {
  double h = grid_spacing(f);
  return h * h * dot(f, f);
}

inline double norm_l2(const Field& f) { return std::sqrt(norm_l2sq(f)); }

// Isotropic total variation: h * sum sqrt((dx f)^2 + (dy f)^2). One h of
// the area element cancels against the 1/h of the difference quotient.
inline double norm_tv(const Field& f) {
  double h = grid_spacing(f);
  double s = 0.0;
  for (int i = 0; i < f.height; ++i) {
    int in = (i + 1) == f.height ? 0 : i + 1;
    for (int k = 0; k < f.width; ++k) {
      int kn = (k + 1) == f.width ? 0 : k + 1;
      double gx = f.at(i, kn) - f.at(i, k);
      double gy = f.at(in, k) - f.at(i, k);
      s += std::sqrt(gx * gx + gy * gy);
    }
  }
  return h * s;
}

// Spectral energy under the unitary convention: h^2 * sum |coeff|^2.
inline double spectral_energy(const Spectrum& s) {
  double h = 2.0 * kPi / s.width;
  double e = 0.0;
  for (const auto& c : s.coeffs) e += std::norm(c);
  return h * h * e;
}

}  // namespace lpdec
