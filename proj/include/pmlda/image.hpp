#pragma once

#include "pmlda/corpus.hpp"
#include "pmlda/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace pmlda {

/* Single-channel image plane; (r, c) indexing with r in [0, height). */
struct ImagePlane {
  Array2D pixels;  // height x width
  std::string label;

  Eigen::Index height() const { return pixels.rows(); }
  Eigen::Index width() const { return pixels.cols(); }
};

void validate(const ImagePlane& img);

struct FeatureConfig {
  Eigen::Index window_size = 21;  // odd
  double intensity_scale = 10.0;
  Eigen::Index entropy_bins = 256;
};

void validate(const FeatureConfig& cfg);

/* Natural-log Shannon entropy of a value multiset binned into `bins` equal
 * bins spanning the values' own min..max range; a constant set has a single
 * occupied bin and entropy zero. */
double histogram_entropy(const std::vector<double>& values, Eigen::Index bins);

/* Windowed mean (times intensity_scale) and windowed histogram entropy at
 * every pixel; borders replicate. Returns {mean plane, entropy plane}. */
std::vector<ImagePlane> extract_mean_entropy(const ImagePlane& img,
                                             const FeatureConfig& cfg);

struct RippleFilterSpec {
  double ripple_frequency = 4.0;    // ripples per meter
  double range_resolution = 0.025;  // meters per pixel
  Eigen::Index block_height = 11;
};

void validate(const RippleFilterSpec& spec);

/* Six horizontal blocks of -1, 0, +1, -1, 0, +1, each block_height tall and
 * ceil(L/3) wide with L = (1/range_resolution)/ripple_frequency pixels per
 * ripple period. Every row sums to zero. */
Matrix build_ripple_filter(const RippleFilterSpec& spec);

/* Largest absolute valid-region cross-correlation between image and kernel,
 * normalized by the kernel element count. */
double ripple_response(const ImagePlane& img, const Matrix& kernel);

/* Per-superpixel ripple response rendered back as a constant-per-region
 * plane. Each region is cut out over its bounding box with out-of-region
 * pixels replaced by the region mean; regions whose bounding box cannot hold
 * the kernel get response zero. frequencies[label] gives f_ripple per
 * region. */
ImagePlane ripple_feature_plane(const ImagePlane& img, const ImagePlane& labels,
                                const std::vector<double>& frequencies,
                                const RippleFilterSpec& spec);

struct SlidingWindowGrouping {
  Eigen::Index window = 32;
  Eigen::Index stride = 32;
};

struct SuperpixelGrouping {
  ImagePlane labels;  // integer labels, contiguous from 0, covering all pixels
};

using DocumentGrouping = std::variant<SlidingWindowGrouping, SuperpixelGrouping>;

/* One document per window position (windows clipped at the image border) or
 * per superpixel label; the word at each covered pixel stacks the feature
 * planes' values, and provenance records row-major pixel indices. */
Corpus build_documents(const std::vector<ImagePlane>& feature_planes,
                       const DocumentGrouping& grouping);

/* Per-topic membership maps: each pixel takes the membership of its word,
 * averaged over all documents covering that pixel. Every pixel must be
 * covered. */
std::vector<ImagePlane> render_membership_maps(const Corpus& corpus,
                                               const std::vector<Matrix>& memberships,
                                               Eigen::Index topic_count,
                                               Eigen::Index width, Eigen::Index height);

// Separable Gaussian smoothing; kernel normalized to sum one, borders replicate.
ImagePlane gaussian_filter_plane(const ImagePlane& img, double sigma,
                                 Eigen::Index support);

// Gaussian smoothing along x, sampled Gaussian derivative along y.
ImagePlane derivative_of_gaussian_y(const ImagePlane& img, double sigma);

// ln(1 + v); negative pixels are a domain error.
ImagePlane log_transform(const ImagePlane& img);

}  // namespace pmlda
