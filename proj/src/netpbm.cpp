#include "roadaudit/netpbm.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace roadaudit {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
// Returns false when the stream runs out before a token starts.
bool next_token(const std::string& bytes, std::size_t& pos, std::string& tok) {
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= bytes.size()) return false;
  tok.clear();
  while (pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
         bytes[pos] != '#') {
    tok.push_back(bytes[pos++]);
  }
  return !tok.empty();
}

long parse_int(const std::string& tok) {
  if (tok.empty()) fail(Errc::malformed_header, "empty header field");
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(Errc::malformed_header, "non-numeric header field '" + tok + "'");
  }
  return std::stol(tok);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::file_missing, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::io_error, "short write to " + path.string());
}

}  // namespace

LoadedImage decode_netpbm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '5' && bytes[1] != '6')) {
    fail(Errc::malformed_header, "unsupported netpbm magic");
  }
  const bool color = bytes[1] == '6';
  std::size_t pos = 2;
  std::string tok;
  if (!next_token(bytes, pos, tok)) fail(Errc::malformed_header, "missing width");
  const long w = parse_int(tok);
  if (!next_token(bytes, pos, tok)) fail(Errc::malformed_header, "missing height");
  const long h = parse_int(tok);
  if (!next_token(bytes, pos, tok)) fail(Errc::malformed_header, "missing maxval");
  const long maxval = parse_int(tok);
  if (w <= 0 || h <= 0) fail(Errc::malformed_header, "nonpositive dimensions");
  if (maxval != 255) fail(Errc::malformed_header, "maxval must be 255");

  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    fail(Errc::malformed_header, "missing raster separator");
  }
  ++pos;

  const std::size_t channels = color ? 3 : 1;
  const std::size_t need = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - pos < need)
    fail(Errc::truncated_data, "raster shorter than header promises");

  const auto* raw = reinterpret_cast<const std::uint8_t*>(bytes.data() + pos);
  if (!color) {
    GrayImage img(h, w);
    std::memcpy(img.data(), raw, need);
    return img;
  }
  RgbImage img;
  img.r.resize(h, w);
  img.g.resize(h, w);
  img.b.resize(h, w);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * w + x) * 3;
      img.r(y, x) = raw[i];
      img.g(y, x) = raw[i + 1];
      img.b(y, x) = raw[i + 2];
    }
  }
  return img;
}

LoadedImage load_image(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    fail(Errc::file_missing, "no such file: " + path.string());
  return decode_netpbm(read_file(path));
}

GrayImage load_pgm(const std::filesystem::path& path) {
  LoadedImage img = load_image(path);
  if (!std::holds_alternative<GrayImage>(img))
    fail(Errc::malformed_header, "expected P5 grayscale: " + path.string());
  return std::get<GrayImage>(std::move(img));
}

std::string encode_pgm(const GrayImage& img) {
  std::ostringstream out;
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
  return out.str();
}

std::string encode_ppm(const RgbImage& img) {
  std::ostringstream out;
  out << "P6\n" << img.cols() << " " << img.rows() << "\n255\n";
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    for (Eigen::Index x = 0; x < img.cols(); ++x) {
      out.put(static_cast<char>(img.r(y, x)));
      out.put(static_cast<char>(img.g(y, x)));
      out.put(static_cast<char>(img.b(y, x)));
    }
  }
  return out.str();
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, encode_pgm(img));
}

void save_ppm(const std::filesystem::path& path, const RgbImage& img) {
  write_file(path, encode_ppm(img));
}

}  // namespace roadaudit
