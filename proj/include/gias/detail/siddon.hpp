#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace gias {

template <class Visit>
void trace_ray(const ParallelBeamGeometry& geometry, Index angle, Index detector, Visit&& visit) {
  const Index n = geometry.grid;
  const double extent = geometry.extent > 0.0 ? geometry.extent : static_cast<double>(n);
  const double h = extent / static_cast<double>(n);
  const double half = 0.5 * extent;
  const double pitch = std::sqrt(2.0) * extent / static_cast<double>(geometry.detectors);
  const double s =
      (static_cast<double>(detector) - 0.5 * static_cast<double>(geometry.detectors - 1)) * pitch;
  const double phi = std::numbers::pi * static_cast<double>(angle) / static_cast<double>(geometry.angles);
  const double c = std::cos(phi);
  const double sn = std::sin(phi);
  // Ray: (x, y)(t) = s (c, sn) + t (-sn, c), unit speed.
  const double x0 = s * c;
  const double y0 = s * sn;
  const double dx = -sn;
  const double dy = c;
  constexpr double kParallel = 1e-14;

  double tmin = -INFINITY;
  double tmax = INFINITY;
  auto clip = [&](double origin, double dir) {
    if (std::abs(dir) < kParallel) {
      return origin > -half && origin < half;
    }
    double ta = (-half - origin) / dir;
    double tb = (half - origin) / dir;
    if (ta > tb) std::swap(ta, tb);
    tmin = std::max(tmin, ta);
    tmax = std::min(tmax, tb);
    return true;
  };
  if (!clip(x0, dx) || !clip(y0, dy) || !(tmax > tmin)) return;

  std::vector<double> ts;
  ts.reserve(2 * static_cast<std::size_t>(n) + 4);
  ts.push_back(tmin);
  ts.push_back(tmax);
  auto crossings = [&](double origin, double dir) {
    if (std::abs(dir) < kParallel) return;
    for (Index i = 0; i <= n; ++i) {
      const double t = (-half + static_cast<double>(i) * h - origin) / dir;
      if (t > tmin && t < tmax) ts.push_back(t);
    }
  };
  crossings(x0, dx);
  crossings(y0, dy);
  std::sort(ts.begin(), ts.end());

  const double min_len = 1e-12 * h;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double len = ts[k + 1] - ts[k];
    if (len <= min_len) continue;
    const double tm = 0.5 * (ts[k] + ts[k + 1]);
    const double x = x0 + tm * dx;
    const double y = y0 + tm * dy;
    const Index col = std::clamp<Index>(static_cast<Index>(std::floor((x + half) / h)), 0, n - 1);
    const Index from_bottom =
        std::clamp<Index>(static_cast<Index>(std::floor((y + half) / h)), 0, n - 1);
    const Index row = n - 1 - from_bottom;
    visit(row * n + col, len);
  }
}

}  // namespace gias
