#include "gias/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gias::io {

namespace {

std::runtime_error io_error(const std::filesystem::path& path, const std::string& what) {
  return std::runtime_error(path.string() + ": " + what);
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return path.string() + ".range";
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(in, ignored);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv_vector(const std::filesystem::path& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw io_error(path, "cannot open for writing");
  for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

Vector read_csv_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path, "cannot open for reading");
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    auto first = line.data();
    auto last = line.data() + line.size();
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw io_error(path, "line " + std::to_string(lineno) + ": not a number");
    }
    values.push_back(v);
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

void write_pgm(const std::filesystem::path& path, const Image& image, int maxval) {
  if (image.pixels.size() != image.width * image.height || image.width <= 0) {
    throw DimensionError("write_pgm: pixel count does not match width * height");
  }
  if (maxval < 256 || maxval > 65535) throw ParameterError("write_pgm: maxval must be 16-bit");
  const double lo = image.pixels.minCoeff();
  const double hi = image.pixels.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path, "cannot open for writing");
  out << "P5\n" << image.width << ' ' << image.height << '\n' << maxval << '\n';
  for (Index i = 0; i < image.pixels.size(); ++i) {
    const auto q = static_cast<unsigned>(std::lround((image.pixels[i] - lo) / span * maxval));
    const unsigned char be[2] = {static_cast<unsigned char>(q >> 8), static_cast<unsigned char>(q & 0xff)};
    out.write(reinterpret_cast<const char*>(be), 2);
  }
  std::ofstream range(sidecar(path));
  range << "min " << format_double(lo) << "\nmax " << format_double(hi) << '\n';
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path, "cannot open for reading");
  if (header_token(in) != "P5") throw io_error(path, "not a binary PGM (P5)");
  Image img;
  img.width = std::stol(header_token(in));
  img.height = std::stol(header_token(in));
  const long maxval = std::stol(header_token(in));
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 65535) {
    throw io_error(path, "bad PGM header");
  }
  const int bytes = maxval > 255 ? 2 : 1;
  img.pixels.resize(img.width * img.height);
  for (Index i = 0; i < img.pixels.size(); ++i) {
    unsigned char b[2] = {0, 0};
    if (!in.read(reinterpret_cast<char*>(b), bytes)) throw io_error(path, "truncated pixel data");
    const unsigned raw = bytes == 2 ? (static_cast<unsigned>(b[0]) << 8) | b[1] : b[0];
    img.pixels[i] = static_cast<double>(raw) / static_cast<double>(maxval);
  }
  std::ifstream range(sidecar(path));
  if (range) {
    std::string key;
    double lo = 0.0;
    double hi = 1.0;
    while (range >> key) {
      if (key == "min") range >> lo;
      if (key == "max") range >> hi;
    }
    const double span = hi > lo ? hi - lo : 1.0;
    img.pixels = (img.pixels.array() * span + lo).matrix();
  }
  return img;
}

Image read_image(const std::filesystem::path& path) {
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw io_error(path, "cannot open for reading");
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    if (magic[0] == 'P' && magic[1] == '5') return read_pgm(path);
  }
  Vector v = read_csv_vector(path);
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (side * side != v.size()) throw io_error(path, "CSV image is not square");
  return Image{side, side, std::move(v)};
}

}  // namespace gias::io
