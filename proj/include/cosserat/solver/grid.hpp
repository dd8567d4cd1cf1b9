#pragma once

// Structured discretization of D (x, periodic boxes by default) and of the
// fiber chart (y, the box [-r_y, r_y]^k in canonical coordinates).
// Bundle arrays are flattened as index = x_index * y_count + y_index.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/so3.hpp"

namespace cosserat::solver {

using so3::Mat3;
using so3::Vec3;

struct AxisSpec {
  int n = 1;
  double extent = 1.0;
  bool periodic = true;
  bool operator==(const AxisSpec&) const = default;
};

struct GridSpec {
  std::array<AxisSpec, 3> x{};
  std::array<int, 3> ny{1, 1, 1};
  double chart_radius = 1.0;
  int stencil_order = 2;
  bool operator==(const GridSpec&) const = default;

  bool has_fiber() const { return ny[0] > 1 || ny[1] > 1 || ny[2] > 1; }
};

inline std::vector<std::string> validate(const GridSpec& g) {
  std::vector<std::string> errors;
  for (int a = 0; a < 3; ++a) {
    const auto& ax = g.x[a];
    if (ax.n < 1 || (ax.n > 1 && ax.n < 4)) {
      errors.push_back("grid.nx" + std::to_string(a + 1) + " must be 1 (inactive) or >= 4");
    }
    if (!(ax.extent > 0.0)) errors.push_back("grid.lx" + std::to_string(a + 1) + " must be positive");
    if (g.ny[a] < 1 || (g.ny[a] > 1 && g.ny[a] < 4)) {
      errors.push_back("grid.ny" + std::to_string(a + 1) + " must be 1 (inactive) or >= 4");
    }
  }
  int active_y = 0;
  for (int n : g.ny) active_y += n > 1 ? 1 : 0;
  if (!(g.chart_radius > 0.0)) {
    errors.push_back("grid.chart_radius must be positive");
  } else if (active_y > 0 && !(g.chart_radius * std::sqrt(double(active_y)) < so3::kPi - so3::kChartMargin)) {
    errors.push_back("grid.chart_radius too large: fiber grid corners leave the chart ball");
  }
  if (g.stencil_order != 2) errors.push_back("grid.stencil_order must be 2");
  return errors;
}

class BundleGrid {
 public:
  explicit BundleGrid(const GridSpec& spec) : spec_(spec) {
    if (auto errors = validate(spec); !errors.empty()) throw ValidationError(std::move(errors));
    x_count_ = 1;
    y_count_ = 1;
    for (int a = 0; a < 3; ++a) {
      const auto& ax = spec.x[a];
      x_stride_[a] = x_count_;
      x_count_ *= static_cast<std::size_t>(ax.n);
      dx_[a] = ax.n > 1 ? (ax.periodic ? ax.extent / ax.n : ax.extent / (ax.n - 1)) : ax.extent;
      y_stride_[a] = y_count_;
      y_count_ *= static_cast<std::size_t>(spec.ny[a]);
      dy_[a] = spec.ny[a] > 1 ? 2.0 * spec.chart_radius / (spec.ny[a] - 1) : 0.0;
    }
    frames_.reserve(y_count_);
    for (std::size_t iy = 0; iy < y_count_; ++iy) frames_.push_back(so3::left_invariant_frame(y(iy)).matrix);
  }

  const GridSpec& spec() const { return spec_; }
  std::size_t x_count() const { return x_count_; }
  std::size_t y_count() const { return y_count_; }
  std::size_t size() const { return x_count_ * y_count_; }

  int nx(int a) const { return spec_.x[a].n; }
  int ny(int a) const { return spec_.ny[a]; }
  double dx(int a) const { return dx_[a]; }
  double dy(int a) const { return dy_[a]; }
  bool x_active(int a) const { return spec_.x[a].n > 1; }
  bool y_active(int a) const { return spec_.ny[a] > 1; }
  bool periodic(int a) const { return spec_.x[a].periodic; }

  /// Volume element of an x-cell (inactive axes contribute their extent).
  double cell_volume() const { return dx_[0] * dx_[1] * dx_[2]; }
  bool all_periodic() const {
    for (int a = 0; a < 3; ++a)
      if (x_active(a) && !periodic(a)) return false;
    return true;
  }

  std::array<int, 3> x_multi(std::size_t ix) const {
    return {int(ix % spec_.x[0].n), int((ix / x_stride_[1]) % spec_.x[1].n), int(ix / x_stride_[2])};
  }
  std::array<int, 3> y_multi(std::size_t iy) const {
    return {int(iy % spec_.ny[0]), int((iy / y_stride_[1]) % spec_.ny[1]), int(iy / y_stride_[2])};
  }
  std::size_t x_index(const std::array<int, 3>& m) const {
    return m[0] * x_stride_[0] + m[1] * x_stride_[1] + m[2] * x_stride_[2];
  }
  std::size_t y_index(const std::array<int, 3>& m) const {
    return m[0] * y_stride_[0] + m[1] * y_stride_[1] + m[2] * y_stride_[2];
  }

  Vec3 x(std::size_t ix) const {
    const auto m = x_multi(ix);
    Vec3 p;
    for (int a = 0; a < 3; ++a) p[a] = x_active(a) ? m[a] * dx_[a] : 0.0;
    return p;
  }
  Vec3 y(std::size_t iy) const {
    const auto m = y_multi(iy);
    Vec3 p;
    for (int a = 0; a < 3; ++a) p[a] = y_active(a) ? -spec_.chart_radius + m[a] * dy_[a] : 0.0;
    return p;
  }

  /// Left-invariant frame coefficients at fiber node iy.
  const Mat3& frame(std::size_t iy) const { return frames_[iy]; }

  std::size_t x_stride(int a) const { return x_stride_[a]; }
  std::size_t y_stride(int a) const { return y_stride_[a]; }

 private:
  GridSpec spec_;
  std::size_t x_count_ = 1, y_count_ = 1;
  std::array<std::size_t, 3> x_stride_{}, y_stride_{};
  std::array<double, 3> dx_{}, dy_{};
  std::vector<Mat3> frames_;
};

namespace stencil {

/// First derivative along one axis of a flattened array, second order:
/// central in the interior, periodic wrap or one-sided closure at the ends.
inline void first_derivative(const std::vector<double>& f, std::vector<double>& out, std::size_t stride, int n,
                             double h, bool periodic) {
  out.assign(f.size(), 0.0);
  if (n <= 1) return;
  const double inv2h = 1.0 / (2.0 * h);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const int p = int((idx / stride) % n);
    const std::size_t base = idx - p * stride;
    auto at = [&](int q) { return f[base + q * stride]; };
    if (p > 0 && p < n - 1) {
      out[idx] = (at(p + 1) - at(p - 1)) * inv2h;
    } else if (periodic) {
      const int up = (p + 1) % n, dn = (p - 1 + n) % n;
      out[idx] = (at(up) - at(dn)) * inv2h;
    } else if (p == 0) {
      out[idx] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
    } else {
      out[idx] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h;
    }
  }
}

/// Second derivative along one axis: compact three-point interior,
/// periodic wrap or second-order one-sided four-point closure.
inline void second_derivative(const std::vector<double>& f, std::vector<double>& out, std::size_t stride, int n,
                              double h, bool periodic) {
  out.assign(f.size(), 0.0);
  if (n <= 1) return;
  const double invh2 = 1.0 / (h * h);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const int p = int((idx / stride) % n);
    const std::size_t base = idx - p * stride;
    auto at = [&](int q) { return f[base + q * stride]; };
    if (p > 0 && p < n - 1) {
      out[idx] = (at(p + 1) - 2.0 * at(p) + at(p - 1)) * invh2;
    } else if (periodic) {
      const int up = (p + 1) % n, dn = (p - 1 + n) % n;
      out[idx] = (at(up) - 2.0 * at(p) + at(dn)) * invh2;
    } else if (p == 0) {
      out[idx] = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) * invh2;
    } else {
      out[idx] = (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) * invh2;
    }
  }
}

}  // namespace stencil

/// d/dx_a of a bundle array.
inline void dx_bundle(const BundleGrid& g, const std::vector<double>& f, int a, std::vector<double>& out) {
  stencil::first_derivative(f, out, g.x_stride(a) * g.y_count(), g.nx(a), g.dx(a), g.periodic(a));
}
/// d/dx_a of an x-grid array.
inline void dx_base(const BundleGrid& g, const std::vector<double>& f, int a, std::vector<double>& out) {
  stencil::first_derivative(f, out, g.x_stride(a), g.nx(a), g.dx(a), g.periodic(a));
}
/// d/dy_k of a bundle array (chart coordinates, one-sided at the chart box faces).
inline void dy_bundle(const BundleGrid& g, const std::vector<double>& f, int k, std::vector<double>& out) {
  stencil::first_derivative(f, out, g.y_stride(k), g.ny(k), g.dy(k), false);
}
inline void dxx_bundle(const BundleGrid& g, const std::vector<double>& f, int a, std::vector<double>& out) {
  stencil::second_derivative(f, out, g.x_stride(a) * g.y_count(), g.nx(a), g.dx(a), g.periodic(a));
}

/// E_j f for j = 0..2 on a bundle array: E_j = sum_k M_kj(y) d/dy_k.
inline std::array<std::vector<double>, 3> frame_derivatives(const BundleGrid& g, const std::vector<double>& f) {
  std::array<std::vector<double>, 3> dy, e;
  for (int k = 0; k < 3; ++k) dy_bundle(g, f, k, dy[k]);
  for (int j = 0; j < 3; ++j) e[j].assign(f.size(), 0.0);
  if (!g.spec().has_fiber()) return e;
  const std::size_t ny = g.y_count();
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const Mat3& m = g.frame(idx % ny);
    for (int j = 0; j < 3; ++j) e[j][idx] = m(0, j) * dy[0][idx] + m(1, j) * dy[1][idx] + m(2, j) * dy[2][idx];
  }
  return e;
}

}  // namespace cosserat::solver
