#include "pmlda/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace pmlda {

namespace {

Eigen::Index clamp_index(Eigen::Index i, Eigen::Index n)
{
  return std::min(std::max<Eigen::Index>(i, 0), n - 1);
}

// 1-D replicate-border correlation along rows (axis=0) or columns (axis=1).
Array2D correlate_1d(const Array2D& in, const Vector& kernel, int axis)
{
  const Eigen::Index h = in.rows();
  const Eigen::Index w = in.cols();
  const Eigen::Index half = kernel.size() / 2;
  Array2D out(h, w);
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      double acc = 0.0;
      for (Eigen::Index t = 0; t < kernel.size(); ++t) {
        const Eigen::Index off = t - half;
        const Eigen::Index rr = axis == 0 ? clamp_index(r + off, h) : r;
        const Eigen::Index cc = axis == 1 ? clamp_index(c + off, w) : c;
        acc += kernel[t] * in(rr, cc);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Vector gaussian_kernel(double sigma, Eigen::Index support)
{
  Vector k(support);
  const Eigen::Index half = support / 2;
  for (Eigen::Index i = 0; i < support; ++i) {
    const double x = static_cast<double>(i - half);
    k[i] = std::exp(-0.5 * x * x / (sigma * sigma));
  }
  k /= k.sum();
  return k;
}

void check_finite(const ImagePlane& img, const char* what)
{
  if (!img.pixels.allFinite())
    throw std::domain_error(std::string(what) + ": produced non-finite pixels");
}

std::vector<std::vector<Eigen::Index>> label_regions(const ImagePlane& labels)
{
  const Eigen::Index h = labels.height();
  const Eigen::Index w = labels.width();
  Eigen::Index max_label = -1;
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      const double v = labels.pixels(r, c);
      if (!(v >= 0.0) || v != std::floor(v))
        throw std::invalid_argument("superpixel labels must be non-negative integers");
      max_label = std::max(max_label, static_cast<Eigen::Index>(v));
    }
  }
  std::vector<std::vector<Eigen::Index>> regions(max_label + 1);
  for (Eigen::Index r = 0; r < h; ++r)
    for (Eigen::Index c = 0; c < w; ++c)
      regions[static_cast<Eigen::Index>(labels.pixels(r, c))].push_back(r * w + c);
  for (std::size_t l = 0; l < regions.size(); ++l)
    if (regions[l].empty())
      throw std::invalid_argument("superpixel labels must be contiguous from 0");
  return regions;
}

}  // namespace

void validate(const ImagePlane& img)
{
  if (img.pixels.size() == 0)
    throw std::invalid_argument("ImagePlane: empty");
  if (!img.pixels.allFinite())
    throw std::invalid_argument("ImagePlane: non-finite pixels");
}

void validate(const FeatureConfig& cfg)
{
  if (cfg.window_size < 1 || cfg.window_size % 2 == 0)
    throw std::invalid_argument("FeatureConfig: window size must be odd and positive");
  if (cfg.entropy_bins < 1)
    throw std::invalid_argument("FeatureConfig: entropy bins must be positive");
}

double histogram_entropy(const std::vector<double>& values, Eigen::Index bins)
{
  if (values.empty() || bins < 1)
    throw std::invalid_argument("histogram_entropy: empty input");
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (*mn == *mx)
    return 0.0;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  const double scale = static_cast<double>(bins) / (*mx - *mn);
  for (double v : values) {
    auto bin = static_cast<Eigen::Index>((v - *mn) * scale);
    bin = std::min(bin, bins - 1);
    counts[static_cast<std::size_t>(bin)] += 1.0;
  }
  const double n = static_cast<double>(values.size());
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

std::vector<ImagePlane> extract_mean_entropy(const ImagePlane& img,
                                             const FeatureConfig& cfg)
{
  validate(img);
  validate(cfg);
  const Eigen::Index h = img.height();
  const Eigen::Index w = img.width();
  if (h < cfg.window_size || w < cfg.window_size)
    throw std::invalid_argument("extract_mean_entropy: image smaller than window");

  const Eigen::Index half = cfg.window_size / 2;
  ImagePlane mean_plane{Array2D(h, w), "mean"};
  ImagePlane entropy_plane{Array2D(h, w), "entropy"};

  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(cfg.window_size * cfg.window_size));
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      window.clear();
      double sum = 0.0;
      for (Eigen::Index dr = -half; dr <= half; ++dr) {
        const Eigen::Index rr = clamp_index(r + dr, h);
        for (Eigen::Index dc = -half; dc <= half; ++dc) {
          const double v = img.pixels(rr, clamp_index(c + dc, w));
          window.push_back(v);
          sum += v;
        }
      }
      mean_plane.pixels(r, c) =
          cfg.intensity_scale * sum / static_cast<double>(window.size());
      entropy_plane.pixels(r, c) = histogram_entropy(window, cfg.entropy_bins);
    }
  }
  check_finite(mean_plane, "extract_mean_entropy");
  check_finite(entropy_plane, "extract_mean_entropy");
  return {std::move(mean_plane), std::move(entropy_plane)};
}

void validate(const RippleFilterSpec& spec)
{
  if (!(spec.ripple_frequency > 0.0) || !(spec.range_resolution > 0.0))
    throw std::invalid_argument("RippleFilterSpec: frequency and resolution must be positive");
  if (spec.block_height < 1)
    throw std::invalid_argument("RippleFilterSpec: block height must be positive");
}

Matrix build_ripple_filter(const RippleFilterSpec& spec)
{
  validate(spec);
  const double period = (1.0 / spec.range_resolution) / spec.ripple_frequency;
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("build_ripple_filter: non-positive ripple length");
  const auto block_width = static_cast<Eigen::Index>(std::ceil(period / 3.0));

  Matrix kernel(spec.block_height, 6 * block_width);
  const double block_values[6] = {-1.0, 0.0, 1.0, -1.0, 0.0, 1.0};
  for (int b = 0; b < 6; ++b)
    kernel.block(0, b * block_width, spec.block_height, block_width)
        .setConstant(block_values[b]);
  return kernel;
}

double ripple_response(const ImagePlane& img, const Matrix& kernel)
{
  validate(img);
  const Eigen::Index h = img.height();
  const Eigen::Index w = img.width();
  if (h < kernel.rows() || w < kernel.cols())
    throw std::invalid_argument("ripple_response: image smaller than kernel");

  double best = 0.0;
  for (Eigen::Index r = 0; r + kernel.rows() <= h; ++r) {
    for (Eigen::Index c = 0; c + kernel.cols() <= w; ++c) {
      const double corr =
          (img.pixels.block(r, c, kernel.rows(), kernel.cols()) * kernel.array()).sum();
      best = std::max(best, std::abs(corr));
    }
  }
  return best / static_cast<double>(kernel.size());
}

ImagePlane ripple_feature_plane(const ImagePlane& img, const ImagePlane& labels,
                                const std::vector<double>& frequencies,
                                const RippleFilterSpec& spec)
{
  validate(img);
  if (labels.height() != img.height() || labels.width() != img.width())
    throw std::invalid_argument("ripple_feature_plane: label plane dimension mismatch");
  const auto regions = label_regions(labels);
  if (frequencies.size() != regions.size())
    throw std::invalid_argument("ripple_feature_plane: one frequency per label required");

  const Eigen::Index w = img.width();
  ImagePlane out{Array2D::Zero(img.height(), img.width()), "ripple"};
  for (std::size_t l = 0; l < regions.size(); ++l) {
    Eigen::Index r0 = img.height(), r1 = -1, c0 = img.width(), c1 = -1;
    double region_sum = 0.0;
    for (Eigen::Index px : regions[l]) {
      const Eigen::Index r = px / w;
      const Eigen::Index c = px % w;
      r0 = std::min(r0, r);
      r1 = std::max(r1, r);
      c0 = std::min(c0, c);
      c1 = std::max(c1, c);
      region_sum += img.pixels(r, c);
    }
    const double region_mean = region_sum / static_cast<double>(regions[l].size());

    ImagePlane patch{Array2D::Constant(r1 - r0 + 1, c1 - c0 + 1, region_mean), ""};
    for (Eigen::Index px : regions[l])
      patch.pixels(px / w - r0, px % w - c0) = img.pixels(px / w, px % w);

    RippleFilterSpec region_spec = spec;
    region_spec.ripple_frequency = frequencies[l];
    const Matrix kernel = build_ripple_filter(region_spec);

    double response = 0.0;
    if (patch.height() >= kernel.rows() && patch.width() >= kernel.cols())
      response = ripple_response(patch, kernel);
    for (Eigen::Index px : regions[l])
      out.pixels(px / w, px % w) = response;
  }
  return out;
}

Corpus build_documents(const std::vector<ImagePlane>& feature_planes,
                       const DocumentGrouping& grouping)
{
  if (feature_planes.empty())
    throw std::invalid_argument("build_documents: no feature planes");
  const Eigen::Index h = feature_planes.front().height();
  const Eigen::Index w = feature_planes.front().width();
  for (const auto& plane : feature_planes) {
    validate(plane);
    if (plane.height() != h || plane.width() != w)
      throw std::invalid_argument("build_documents: inconsistent plane dimensions");
  }
  const auto p = static_cast<Eigen::Index>(feature_planes.size());

  auto word_at = [&](Eigen::Index px) {
    Vector word(p);
    for (Eigen::Index f = 0; f < p; ++f)
      word[f] = feature_planes[static_cast<std::size_t>(f)].pixels(px / w, px % w);
    return word;
  };

  Corpus corpus;
  corpus.dim = p;

  if (const auto* sliding = std::get_if<SlidingWindowGrouping>(&grouping)) {
    if (sliding->window < 1 || sliding->stride < 1)
      throw std::invalid_argument("build_documents: window and stride must be positive");
    for (Eigen::Index r0 = 0; r0 < h; r0 += sliding->stride) {
      for (Eigen::Index c0 = 0; c0 < w; c0 += sliding->stride) {
        const Eigen::Index rows = std::min(sliding->window, h - r0);
        const Eigen::Index cols = std::min(sliding->window, w - c0);
        Document doc;
        doc.id = "win_" + std::to_string(r0) + "_" + std::to_string(c0);
        doc.words.resize(p, rows * cols);
        doc.provenance.reserve(static_cast<std::size_t>(rows * cols));
        Eigen::Index n = 0;
        for (Eigen::Index r = r0; r < r0 + rows; ++r) {
          for (Eigen::Index c = c0; c < c0 + cols; ++c) {
            const Eigen::Index px = r * w + c;
            doc.words.col(n++) = word_at(px);
            doc.provenance.push_back(px);
          }
        }
        corpus.documents.push_back(std::move(doc));
      }
    }
  } else {
    const auto& labels = std::get<SuperpixelGrouping>(grouping).labels;
    if (labels.height() != h || labels.width() != w)
      throw std::invalid_argument("build_documents: label plane dimension mismatch");
    const auto regions = label_regions(labels);
    for (std::size_t l = 0; l < regions.size(); ++l) {
      Document doc;
      doc.id = "sp" + std::to_string(l);
      doc.words.resize(p, static_cast<Eigen::Index>(regions[l].size()));
      doc.provenance.reserve(regions[l].size());
      Eigen::Index n = 0;
      for (Eigen::Index px : regions[l]) {
        doc.words.col(n++) = word_at(px);
        doc.provenance.push_back(px);
      }
      corpus.documents.push_back(std::move(doc));
    }
  }
  validate(corpus);
  return corpus;
}

std::vector<ImagePlane> render_membership_maps(const Corpus& corpus,
                                               const std::vector<Matrix>& memberships,
                                               Eigen::Index topic_count,
                                               Eigen::Index width, Eigen::Index height)
{
  if (memberships.size() != corpus.documents.size())
    throw std::invalid_argument("render_membership_maps: one membership matrix per document");

  std::vector<Array2D> sums(static_cast<std::size_t>(topic_count),
                            Array2D::Zero(height, width));
  Array2D cover = Array2D::Zero(height, width);

  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const Document& doc = corpus.documents[d];
    const Matrix& z = memberships[d];
    if (doc.provenance.empty())
      throw std::invalid_argument("render_membership_maps: document '" + doc.id +
                                  "' lacks pixel provenance");
    if (z.rows() != topic_count || z.cols() != doc.size())
      throw std::invalid_argument("render_membership_maps: membership shape mismatch");
    for (Eigen::Index n = 0; n < doc.size(); ++n) {
      const Eigen::Index px = doc.provenance[static_cast<std::size_t>(n)];
      if (px < 0 || px >= width * height)
        throw std::invalid_argument("render_membership_maps: pixel index out of range");
      const Eigen::Index r = px / width;
      const Eigen::Index c = px % width;
      for (Eigen::Index k = 0; k < topic_count; ++k)
        sums[static_cast<std::size_t>(k)](r, c) += z(k, n);
      cover(r, c) += 1.0;
    }
  }

  if ((cover == 0.0).any())
    throw std::invalid_argument("render_membership_maps: uncovered pixel");

  std::vector<ImagePlane> maps;
  maps.reserve(static_cast<std::size_t>(topic_count));
  for (Eigen::Index k = 0; k < topic_count; ++k)
    maps.push_back(
        ImagePlane{sums[static_cast<std::size_t>(k)] / cover, "topic" + std::to_string(k)});
  return maps;
}

ImagePlane gaussian_filter_plane(const ImagePlane& img, double sigma,
                                 Eigen::Index support)
{
  validate(img);
  if (!(sigma > 0.0) || support < 1 || support % 2 == 0)
    throw std::invalid_argument("gaussian_filter_plane: need positive sigma and odd support");
  const Vector k = gaussian_kernel(sigma, support);
  ImagePlane out{correlate_1d(correlate_1d(img.pixels, k, 0), k, 1), img.label};
  check_finite(out, "gaussian_filter_plane");
  return out;
}

ImagePlane derivative_of_gaussian_y(const ImagePlane& img, double sigma)
{
  validate(img);
  if (!(sigma > 0.0))
    throw std::invalid_argument("derivative_of_gaussian_y: sigma must be positive");
  const auto half = static_cast<Eigen::Index>(std::ceil(3.0 * sigma));
  const Eigen::Index support = 2 * half + 1;
  Vector dg(support);
  for (Eigen::Index i = 0; i < support; ++i) {
    const double y = static_cast<double>(i - half);
    dg[i] = -(y / (sigma * sigma)) * std::exp(-0.5 * y * y / (sigma * sigma));
  }
  const Vector g = gaussian_kernel(sigma, support);
  // Smooth across x, differentiate along y (rows).
  ImagePlane out{correlate_1d(correlate_1d(img.pixels, g, 1), dg, 0), img.label};
  check_finite(out, "derivative_of_gaussian_y");
  return out;
}

ImagePlane log_transform(const ImagePlane& img)
{
  validate(img);
  if ((img.pixels < 0.0).any())
    throw std::domain_error("log_transform: requires non-negative pixels");
  ImagePlane out{(img.pixels + 1.0).log(), img.label};
  check_finite(out, "log_transform");
  return out;
}

}  // namespace pmlda
