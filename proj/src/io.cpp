#include "tmcm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace tmcm {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

template <typename T>
T parse_number(const std::string& token, int line, const char* what) {
  T value{};
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size()) {
    throw ParseError(line, std::string("expected integer ") + what +
                               ", got '" + token + "'");
  }
  return value;
}

}  // namespace

Model read_model(std::istream& in) {
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  int h = 0;
  std::string dist_text;
  Energy truncation = 0;
  int max_pairs = 0;
  Energy scale = 1;
  std::vector<std::vector<Energy>> unary;
  std::vector<bool> seen;
  std::vector<Clique> cliques;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = split(raw);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    const auto& tag = fields[0];
    if (!have_header) {
      if (tag != "TMCM" || fields.size() != 7) {
        throw ParseError(line_no, "expected header 'TMCM n h dist M m scale'");
      }
      n = parse_number<int>(fields[1], line_no, "n");
      h = parse_number<int>(fields[2], line_no, "h");
      dist_text = fields[3];
      truncation = parse_number<Energy>(fields[4], line_no, "M");
      max_pairs = parse_number<int>(fields[5], line_no, "m");
      scale = parse_number<Energy>(fields[6], line_no, "scale");
      if (n < 0 || h < 1 || truncation < 0 || max_pairs < 0 || scale < 1) {
        throw ParseError(line_no, "header values out of range");
      }
      unary.assign(n, {});
      seen.assign(n, false);
      have_header = true;
    } else if (tag == "U") {
      if (fields.size() != static_cast<std::size_t>(h) + 2) {
        throw ParseError(line_no, "unary line must have " +
                                      std::to_string(h) + " values");
      }
      const int a = parse_number<int>(fields[1], line_no, "variable id");
      if (a < 0 || a >= n) throw ParseError(line_no, "variable id out of range");
      if (seen[a]) throw ParseError(line_no, "duplicate unary row");
      seen[a] = true;
      auto& row = unary[a];
      for (int i = 0; i < h; ++i) {
        row.push_back(parse_number<Energy>(fields[i + 2], line_no, "unary"));
      }
    } else if (tag == "C") {
      if (fields.size() < 3) throw ParseError(line_no, "truncated clique line");
      Clique clique;
      clique.weight = parse_number<Energy>(fields[1], line_no, "weight");
      const int k = parse_number<int>(fields[2], line_no, "clique size");
      if (k < 0 || fields.size() != static_cast<std::size_t>(k) + 3) {
        throw ParseError(line_no, "clique size does not match member count");
      }
      for (int i = 0; i < k; ++i) {
        clique.members.push_back(
            parse_number<int>(fields[i + 3], line_no, "member id"));
      }
      cliques.push_back(std::move(clique));
    } else {
      throw ParseError(line_no, "unknown record '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing TMCM header");
  for (int a = 0; a < n; ++a) {
    if (!seen[a]) {
      throw ParseError(line_no, "missing unary row for variable " +
                                    std::to_string(a));
    }
  }
  DistanceSpec dist;
  try {
    dist = parse_distance(dist_text, truncation, max_pairs);
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
  return Model(h, std::move(unary), std::move(cliques), std::move(dist), scale);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_model(in);
}

void write_model(std::ostream& out, const Model& model) {
  const auto& dist = model.dist();
  out << "TMCM " << model.num_vars() << ' ' << model.num_labels() << ' '
      << to_string(dist) << ' ' << dist.truncation << ' ' << dist.max_pairs
      << ' ' << model.scale() << '\n';
  if (model.unary_shift() != 0) {
    out << "# unaries shifted up by " << model.unary_shift() << " in total\n";
  }
  for (int a = 0; a < model.num_vars(); ++a) {
    out << "U " << a;
    for (Energy v : model.unary_row(a)) out << ' ' << v;
    out << '\n';
  }
  for (const auto& clique : model.cliques()) {
    out << "C " << clique.weight << ' ' << clique.size();
    for (int a : clique.members) out << ' ' << a;
    out << '\n';
  }
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_model(out, model);
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

// Next whitespace-separated header token, skipping '#' comments.
std::string pnm_token(std::istream& in) {
  std::string token;
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(in, ignored);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(ch);
  }
  return token;
}

int pnm_int(std::istream& in, const char* what) {
  const auto token = pnm_token(in);
  int value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
    throw ParseError(0, std::string("bad image ") + what + " '" + token + "'");
  }
  return value;
}

}  // namespace

Image read_image(std::istream& in) {
  const auto magic = pnm_token(in);
  Image img;
  bool binary = false;
  if (magic == "P2" || magic == "P5") {
    img.channels = 1;
    binary = magic == "P5";
  } else if (magic == "P3" || magic == "P6") {
    img.channels = 3;
    binary = magic == "P6";
  } else {
    throw ParseError(0, "unsupported image magic '" + magic + "'");
  }
  img.width = pnm_int(in, "width");
  img.height = pnm_int(in, "height");
  img.maxval = pnm_int(in, "maxval");
  if (img.width < 0 || img.height < 0 || img.maxval < 1 ||
      img.maxval > 65535) {
    throw ParseError(0, "image header out of range");
  }
  const std::size_t count = img.pixel_count() * img.channels;
  img.samples.resize(count);
  if (binary) {
    // pnm_token consumed exactly one whitespace byte after maxval.
    const int bytes = img.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(count * bytes);
    if (!in.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size()))) {
      throw ParseError(0, "image data truncated");
    }
    for (std::size_t k = 0; k < count; ++k) {
      img.samples[k] = bytes == 1 ? buf[k] : (buf[2 * k] << 8) | buf[2 * k + 1];
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      img.samples[k] = pnm_int(in, "sample");
    }
  }
  for (int v : img.samples) {
    if (v < 0 || v > img.maxval) throw ParseError(0, "sample exceeds maxval");
  }
  return img;
}

Image load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_image(in);
}

void write_image(std::ostream& out, const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw std::invalid_argument("only 1- or 3-channel images can be written");
  }
  out << (image.channels == 1 ? "P5" : "P6") << '\n'
      << image.width << ' ' << image.height << '\n'
      << image.maxval << '\n';
  const bool wide = image.maxval > 255;
  std::vector<char> buf;
  buf.reserve(image.samples.size() * (wide ? 2 : 1));
  for (int v : image.samples) {
    if (wide) buf.push_back(static_cast<char>((v >> 8) & 0xff));
    buf.push_back(static_cast<char>(v & 0xff));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void save_image(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_image(out, image);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Clique> segment_cliques(const Image& segmentation, Energy weight) {
  if (segmentation.channels != 1) {
    throw DimensionMismatch("segmentation must be single-channel");
  }
  std::unordered_map<int, std::size_t> index;
  std::vector<Clique> segments;
  for (std::size_t p = 0; p < segmentation.pixel_count(); ++p) {
    const int id = segmentation.samples[p];
    auto [it, inserted] = index.try_emplace(id, segments.size());
    if (inserted) segments.push_back({{}, weight});
    segments[it->second].members.push_back(static_cast<int>(p));
  }
  std::erase_if(segments, [](const Clique& c) { return c.size() < 2; });
  return segments;
}

namespace {

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionMismatch(std::string(what) + " is " +
                            std::to_string(b.width) + "x" +
                            std::to_string(b.height) + ", expected " +
                            std::to_string(a.width) + "x" +
                            std::to_string(a.height));
  }
}

}  // namespace

Model build_denoise_model(const Image& image, const Image& segmentation,
                          Energy weight, const DistanceSpec& dist,
                          int label_stride, const Image* mask) {
  if (image.channels != 1) {
    throw DimensionMismatch("denoising expects a grayscale image");
  }
  require_same_shape(image, segmentation, "segmentation");
  if (mask) require_same_shape(image, *mask, "mask");
  if (label_stride < 1) throw std::invalid_argument("label stride must be >= 1");

  const int h = image.maxval / label_stride + 1;
  std::vector<std::vector<Energy>> unary(image.pixel_count());
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    auto& row = unary[p];
    row.resize(h, 0);
    if (mask && mask->samples[p * mask->channels] != 0) continue;
    const Energy pixel = image.samples[p];
    for (Label i = 1; i <= h; ++i) {
      const Energy diff = denoise_label_value(i, label_stride) - pixel;
      row[i - 1] = diff * diff;
    }
  }
  return Model(h, std::move(unary), segment_cliques(segmentation, weight),
               dist);
}

Model build_stereo_model(const Image& left, const Image& right,
                         const Image& segmentation, Energy weight,
                         const DistanceSpec& dist, int max_disparity) {
  require_same_shape(left, right, "right image");
  require_same_shape(left, segmentation, "segmentation");
  if (left.channels != right.channels) {
    throw DimensionMismatch("stereo images differ in channel count");
  }
  if (max_disparity < 0) throw std::invalid_argument("negative max disparity");

  const int h = max_disparity + 1;
  std::vector<std::vector<Energy>> unary;
  unary.reserve(left.pixel_count());
  for (int y = 0; y < left.height; ++y) {
    for (int x = 0; x < left.width; ++x) {
      std::vector<Energy> row(h, -1);
      Energy worst = 0;
      for (int d = 0; d <= max_disparity && x - d >= 0; ++d) {
        Energy cost = 0;
        for (int c = 0; c < left.channels; ++c) {
          cost += std::abs(left.at(x, y, c) - right.at(x - d, y, c));
        }
        row[d] = cost;
        worst = std::max(worst, cost);
      }
      for (auto& v : row) {
        if (v < 0) v = worst;
      }
      unary.push_back(std::move(row));
    }
  }
  return Model(h, std::move(unary), segment_cliques(segmentation, weight),
               dist);
}

void save_labeling(const std::filesystem::path& path, const Labeling& labeling,
                   int width, int height, const LabelToGray& label_to_gray,
                   int maxval) {
  if (labeling.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionMismatch("labeling size does not match width x height");
  }
  Image img{width, height, 1, maxval, {}};
  img.samples.reserve(labeling.size());
  for (Label l : labeling) {
    const int g = label_to_gray(l);
    if (g < 0 || g > maxval) {
      throw std::out_of_range("gray value " + std::to_string(g) +
                              " outside [0, " + std::to_string(maxval) + "]");
    }
    img.samples.push_back(g);
  }
  save_image(path, img);
}

Labeling load_labeling(const std::filesystem::path& path,
                       const GrayToLabel& gray_to_label) {
  const auto img = load_image(path);
  if (img.channels != 1) throw DimensionMismatch("labeling must be grayscale");
  Labeling out;
  out.reserve(img.samples.size());
  for (int g : img.samples) out.push_back(gray_to_label(g));
  return out;
}

}  // namespace tmcm
