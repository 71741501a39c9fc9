#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmcm/model.hpp"

namespace tmcm {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Energy file:
//
//   TMCM n h dist M m scale
//   U a v1 ... vh        (one per variable)
//   C w k a1 ... ak      (one per clique)
//
// dist is linear, quadratic or table:v0,v1,... Blank lines and lines
// starting with '#' are ignored. Ids are 0-based.
Model read_model(std::istream& in);
Model load_model(const std::filesystem::path& path);
void write_model(std::ostream& out, const Model& model);
void save_model(const std::filesystem::path& path, const Model& model);

/// Raster image read from PGM (P2/P5) or PPM (P3/P6). Samples are stored
/// row-major, channel-interleaved.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  int maxval = 255;
  std::vector<int> samples;

  int at(int x, int y, int c = 0) const {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  int& at(int x, int y, int c = 0) {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  bool operator==(const Image&) const = default;
};

Image read_image(std::istream& in);
Image load_image(const std::filesystem::path& path);
/// Binary PGM/PPM (P5/P6); 16-bit samples when maxval > 255.
void write_image(std::ostream& out, const Image& image);
void save_image(const std::filesystem::path& path, const Image& image);

/// One clique per distinct segmentation value, in order of first
/// appearance; singleton segments are dropped.
std::vector<Clique> segment_cliques(const Image& segmentation, Energy weight);

/// Grayscale denoising/inpainting model. Label i stands for intensity
/// (i - 1) * label_stride; theta_a(i) = (value(i) - pixel_a)^2. Pixels where
/// `mask` is non-zero are missing and get an all-zero unary row.
Model build_denoise_model(const Image& image, const Image& segmentation,
                          Energy weight, const DistanceSpec& dist,
                          int label_stride,
                          const Image* mask = nullptr);

/// Intensity represented by a denoising label.
inline int denoise_label_value(Label label, int label_stride) {
  return (label - 1) * label_stride;
}

/// Stereo model over disparities 0..max_disparity (label = disparity + 1):
/// theta_a(d) = sum_channels |left(x, y) - right(x - d, y)|. Disparities that
/// leave the frame cost the largest in-frame unary of that pixel.
Model build_stereo_model(const Image& left, const Image& right,
                         const Image& segmentation, Energy weight,
                         const DistanceSpec& dist, int max_disparity);

using LabelToGray = std::function<int(Label)>;
using GrayToLabel = std::function<Label(int)>;

/// Writes the labeling as an 8- or 16-bit binary PGM.
void save_labeling(const std::filesystem::path& path, const Labeling& labeling,
                   int width, int height, const LabelToGray& label_to_gray,
                   int maxval = 255);
Labeling load_labeling(const std::filesystem::path& path,
                       const GrayToLabel& gray_to_label);

}  // namespace tmcm
