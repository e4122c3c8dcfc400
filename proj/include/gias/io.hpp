#pragma once

// Plain-text and image formats for signals, images and sinograms.
//
// CSV vectors hold one value per line. PGM images are binary P5 with a
// 16-bit max value; intensities are linearly mapped from [min, max] to
// [0, maxval] and the mapping is written to a "<file>.range" sidecar so the
// values can be recovered.

#include <filesystem>
#include <string>

#include "gias/operators.hpp"

namespace gias::io {

struct Image {
  Index width = 0;
  Index height = 0;
  Vector pixels;  ///< row-major
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

void write_csv_vector(const std::filesystem::path& path, const Vector& v);
Vector read_csv_vector(const std::filesystem::path& path);

/// Writes a P5 image and its range sidecar.
void write_pgm(const std::filesystem::path& path, const Image& image, int maxval = 65535);

/// Reads a P5 image. When the sidecar exists the original value range is
/// restored, otherwise pixels are returned as raw / maxval.
Image read_pgm(const std::filesystem::path& path);

/// PGM when the file starts with "P5", one-column CSV otherwise. CSV input
/// must be square.
Image read_image(const std::filesystem::path& path);

}  // namespace gias::io
