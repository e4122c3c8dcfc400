#include "gias/forward_models.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace gias {

double piecewise_function(double x) {
  double f = 2.0 * std::sin(50.0 * std::numbers::pi * x) + 25.0 * x;
  if (x >= 0.7) {
    f += 120.0;
  } else if (x >= 0.4) {
    f += 50.0;
  }
  return f;
}

Vector piecewise_signal(Index n) {
  if (n < 2) throw ParameterError("piecewise_signal: need N >= 2");
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    // i / (n - 1) hits 0.4 and 0.7 exactly when they are grid points.
    v[i] = piecewise_function(static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return v;
}

namespace {

struct Ellipse {
  double cx, cy, a, b, degrees, density;
};

// Original Shepp-Logan table (densities 2.0 skull, -0.98 brain, ...). The
// densities are halved below so the image lies in [0, 1].
constexpr std::array<Ellipse, 10> kSheppLogan = {{
    {0.0, 0.0, 0.69, 0.92, 0.0, 2.0},
    {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.98},
    {0.22, 0.0, 0.11, 0.31, -18.0, -0.02},
    {-0.22, 0.0, 0.16, 0.41, 18.0, -0.02},
    {0.0, 0.35, 0.21, 0.25, 0.0, 0.01},
    {0.0, 0.1, 0.046, 0.046, 0.0, 0.01},
    {0.0, -0.1, 0.046, 0.046, 0.0, 0.01},
    {-0.08, -0.605, 0.046, 0.023, 0.0, 0.01},
    {0.0, -0.605, 0.023, 0.023, 0.0, 0.01},
    {0.06, -0.605, 0.023, 0.046, 0.0, 0.01},
}};

constexpr double kDensityScale = 0.5;

}  // namespace

double shepp_logan_value(double x, double y) {
  double v = 0.0;
  for (const auto& e : kSheppLogan) {
    const double phi = e.degrees * std::numbers::pi / 180.0;
    const double dx = x - e.cx;
    const double dy = y - e.cy;
    const double xr = dx * std::cos(phi) + dy * std::sin(phi);
    const double yr = -dx * std::sin(phi) + dy * std::cos(phi);
    if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0) v += e.density;
  }
  return std::clamp(kDensityScale * v, 0.0, 1.0);
}

Phantom shepp_logan(Index n) {
  if (n < 16) throw ParameterError("shepp_logan: need n >= 16");
  Phantom p{n, n, Vector(n * n)};
  const double h = 2.0 / static_cast<double>(n);
  for (Index r = 0; r < n; ++r) {
    const double y = 1.0 - (static_cast<double>(r) + 0.5) * h;
    for (Index c = 0; c < n; ++c) {
      const double x = -1.0 + (static_cast<double>(c) + 0.5) * h;
      p.pixels[r * n + c] = shepp_logan_value(x, y);
    }
  }
  return p;
}

LinearOperator radon_parallel(const ParallelBeamGeometry& geometry) {
  if (geometry.grid < 1 || geometry.detectors < 1 || geometry.angles < 1) {
    throw ParameterError("radon_parallel: grid, detectors and angles must be positive");
  }
  const Index rows = geometry.angles * geometry.detectors;
  const Index cols = geometry.grid * geometry.grid;
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(2 * geometry.grid));
  for (Index q = 0; q < geometry.angles; ++q) {
    for (Index p = 0; p < geometry.detectors; ++p) {
      const Index row = q * geometry.detectors + p;
      trace_ray(geometry, q, p, [&](Index pixel, double length) {
        entries.emplace_back(row, pixel, length);
      });
    }
  }
  using Csr = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  auto a = std::make_shared<Csr>(rows, cols);
  a->setFromTriplets(entries.begin(), entries.end());
  a->makeCompressed();
  std::shared_ptr<const Csr> m = a;
  return {rows, cols, [m](const Vector& in, Vector& out) { out.noalias() = *m * in; },
          [m](const Vector& in, Vector& out) { out.noalias() = m->transpose() * in; }};
}

LinearOperator radon_parallel(Index n, Index detectors, Index angles) {
  return radon_parallel(ParallelBeamGeometry{n, detectors, angles, 0.0});
}

double NormalStream::uniform() {
  // 53 random bits; shifted by one ulp so log() never sees zero.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector synthesize_data(const LinearOperator& forward_fine, const Vector& x_fine,
                       const SynthesisSpec& spec) {
  if (spec.noise_variance < 0.0 || !std::isfinite(spec.noise_variance)) {
    throw ParameterError("synthesize_data: noise variance must be finite and nonnegative");
  }
  if (spec.fine_factor < 1) throw ParameterError("synthesize_data: fine_factor must be >= 1");
  Vector y = forward_fine.apply(x_fine);
  if (spec.noise_variance == 0.0) return y;
  NormalStream normal(spec.seed);
  const double sd = std::sqrt(spec.noise_variance);
  for (Index i = 0; i < y.size(); ++i) y[i] += sd * normal.next();
  return y;
}

double ct_noise_variance(const Vector& noiseless, double fraction) {
  if (noiseless.size() == 0) throw DimensionError("ct_noise_variance: empty signal");
  return fraction * noiseless.maxCoeff();
}

Vector block_average(const Vector& fine, Index fine_n, int factor) {
  if (factor < 1 || fine_n % factor != 0 || fine.size() != fine_n * fine_n) {
    throw DimensionError("block_average: fine grid is not a multiple of the factor");
  }
  const Index n = fine_n / factor;
  Vector coarse = Vector::Zero(n * n);
  for (Index r = 0; r < fine_n; ++r) {
    for (Index c = 0; c < fine_n; ++c) {
      coarse[(r / factor) * n + c / factor] += fine[r * fine_n + c];
    }
  }
  return coarse / static_cast<double>(factor * factor);
}

}  // namespace gias
