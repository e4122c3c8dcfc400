#pragma once

// Reconstruction quality measures.

#include <optional>

#include "gias/operators.hpp"

namespace gias {

struct MetricReport {
  double rre = 0.0;
  double ssim = 0.0;
  double dp = 0.0;
  double nu_hat = 0.0;
};

/// |x - truth| / |truth|. Throws ParameterError for a zero truth.
double rre(const Vector& x, const Vector& truth);

struct SsimOptions {
  /// Image height for 2D inputs (width = size / height); unset means 1D.
  std::optional<Index> height;
  /// Dynamic range L; unset means max(truth) - min(truth).
  std::optional<double> data_range;
};

/// Mean SSIM over all fully contained Gaussian windows (sigma 1.5, 11 taps per
/// axis, K1 = 0.01, K2 = 0.03). `truth` is the reference image.
double ssim(const Vector& x, const Vector& truth, const SsimOptions& options = {});

}  // namespace gias
