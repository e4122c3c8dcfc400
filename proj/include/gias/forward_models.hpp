#pragma once

// Test problems: the piecewise signal, the Shepp-Logan phantom, a parallel
// beam projector and noisy data synthesis.

#include <cstdint>
#include <random>

#include "gias/operators.hpp"

namespace gias {

/// Row-major image with values in [0, 1].
struct Phantom {
  Index width = 0;
  Index height = 0;
  Vector pixels;
};

struct SynthesisSpec {
  int fine_factor = 1;
  double noise_variance = 0.0;
  std::uint64_t seed = 0;
};

/// f(x) = 2 sin(50 pi x) + 25 x, plus 50 on [0.4, 0.7) and 120 on [0.7, 1].
double piecewise_function(double x);

/// piecewise_function at N equispaced points of [0, 1] (endpoints included).
Vector piecewise_signal(Index n);

/// Shepp-Logan phantom sampled at pixel centres of an n x n grid covering
/// [-1, 1]^2 (row 0 is the top of the image).
Phantom shepp_logan(Index n);

/// Value of the phantom at the point (x, y) of [-1, 1]^2.
double shepp_logan_value(double x, double y);

struct ParallelBeamGeometry {
  Index grid = 0;        ///< image is grid x grid pixels
  Index detectors = 0;   ///< P
  Index angles = 0;      ///< Q, view angles q*pi/Q, q = 0..Q-1
  double extent = 0.0;   ///< physical side length of the image; 0 means `grid`
};

/// Discrete parallel-beam Radon transform. Rows are ordered angle-major
/// (row = q * P + p). Each entry is the exact intersection length of a ray
/// with a pixel. At angle 0 the rays run along the y-axis; the detector
/// array is centred and spans the image diagonal.
LinearOperator radon_parallel(const ParallelBeamGeometry& geometry);
LinearOperator radon_parallel(Index n, Index detectors, Index angles);

/// Every (pixel, length) pair hit by one ray.
template <class Visit>
void trace_ray(const ParallelBeamGeometry& geometry, Index angle, Index detector, Visit&& visit);

/// Deterministic N(0, 1) stream: std::mt19937_64 with Box-Muller. Unlike
/// std::normal_distribution the output is identical across standard
/// libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();  // (0, 1]
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// y = forward_fine * x_fine + e with e ~ N(0, spec.noise_variance I).
Vector synthesize_data(const LinearOperator& forward_fine, const Vector& x_fine,
                       const SynthesisSpec& spec);

/// 3% of the largest noiseless measurement.
double ct_noise_variance(const Vector& noiseless, double fraction = 0.03);

/// Block-average a fine (n*f x n*f) image down to n x n.
Vector block_average(const Vector& fine, Index fine_n, int factor);

}  // namespace gias

#include "gias/detail/siddon.hpp"
