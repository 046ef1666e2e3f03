#include "slp/ganloss.hpp"

#include <algorithm>
#include <cmath>

#include "slp/random.hpp"

namespace slp {

void KeypointSet::validate() const {
  if (!points.allFinite()) throw DegenerateInputError("keypoints must be finite");
}

ImagePatch::ImagePatch(int w, int h, int c, double fill)
    : width(w), height(h), channels(c) {
  if (w <= 0 || h <= 0 || c <= 0) throw ShapeError("image dimensions must be positive");
  values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * static_cast<std::size_t>(c), fill);
}

void ImagePatch::validate() const {
  if (width <= 0 || height <= 0 || channels <= 0) throw ShapeError("image dimensions must be positive");
  if (values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                           static_cast<std::size_t>(channels))
    throw ShapeError("image storage does not match its dimensions");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) throw DegenerateInputError("image values must lie in [0, 1]");
}

double clamp_probability(double p) {
  if (!std::isfinite(p)) throw DegenerateInputError("discriminator output is not finite");
  return std::clamp(p, kDiscriminatorEpsilon, 1.0 - kDiscriminatorEpsilon);
}

void LossWeights::validate() const {
  if (!(feature_matching >= 0.0 && perceptual >= 0.0 && keypoint >= 0.0))
    throw ShapeError("loss weights must be non-negative");
}

ImagePatch crop_hand_region(const ImagePatch& frame, int cx, int cy) {
  frame.validate();
  if (frame.width < kHandCropSize || frame.height < kHandCropSize)
    throw ShapeError("frame smaller than the " + std::to_string(kHandCropSize) + "x" +
                     std::to_string(kHandCropSize) + " hand crop");
  const int x0 = std::clamp(cx - kHandCropSize / 2, 0, frame.width - kHandCropSize);
  const int y0 = std::clamp(cy - kHandCropSize / 2, 0, frame.height - kHandCropSize);
  ImagePatch out(kHandCropSize, kHandCropSize, frame.channels);
  for (int y = 0; y < kHandCropSize; ++y)
    for (int x = 0; x < kHandCropSize; ++x)
      for (int c = 0; c < frame.channels; ++c) out.at(x, y, c) = frame.at(x0 + x, y0 + y, c);
  if (frame.keypoints) {
    KeypointSet k = *frame.keypoints;
    k.points.col(0).array() -= x0;
    k.points.col(1).array() -= y0;
    out.keypoints = k;
  }
  return out;
}

ImagePatch downsample(const ImagePatch& image, int factor) {
  if (factor < 1) throw ShapeError("downsampling factor must be positive");
  if (factor == 1) return image;
  const int w = image.width / factor, h = image.height / factor;
  if (w < 1 || h < 1) throw ShapeError("image too small to downsample by " + std::to_string(factor));
  ImagePatch out(w, h, image.channels);
  const double inv = 1.0 / (factor * factor);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < image.channels; ++c) {
        double s = 0.0;
        for (int dy = 0; dy < factor; ++dy)
          for (int dx = 0; dx < factor; ++dx) s += image.at(x * factor + dx, y * factor + dy, c);
        out.at(x, y, c) = s * inv;
      }
  if (image.keypoints) {
    KeypointSet k = *image.keypoints;
    k.points /= factor;
    out.keypoints = k;
  }
  return out;
}

ImagePatch motion_blur(const ImagePatch& image, int length) {
  if (length < 1 || length % 2 == 0) throw ShapeError("blur length must be a positive odd number");
  ImagePatch out = image;
  const int r = length / 2;
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x)
      for (int c = 0; c < image.channels; ++c) {
        double s = 0.0;
        for (int d = -r; d <= r; ++d) s += image.at(std::clamp(x + d, 0, image.width - 1), y, c);
        out.at(x, y, c) = s / length;
      }
  return out;
}

double keypoint_gan_loss(const KeypointDiscriminator& d_hand, const std::vector<KeypointSet>& real,
                         const std::vector<KeypointSet>& fake) {
  if (real.empty() || fake.empty()) throw ShapeError("keypoint batches must be non-empty");
  double real_term = 0.0, fake_term = 0.0;
  for (const auto& k : real) real_term += std::log(clamp_probability(d_hand(k)));
  for (const auto& k : fake) fake_term += std::log(1.0 - clamp_probability(d_hand(k)));
  return real_term / static_cast<double>(real.size()) + fake_term / static_cast<double>(fake.size());
}

double multiscale_gan_loss(const std::vector<FrameDiscriminator>& discriminators, const ImagePatch& pose,
                           const ImagePatch& style, const ImagePatch& real, const ImagePatch& fake) {
  if (discriminators.size() != 3)
    throw ShapeError("expected 3 discriminators, got " + std::to_string(discriminators.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < discriminators.size(); ++i) {
    const int factor = 1 << i;
    const ImagePatch p = downsample(pose, factor), s = downsample(style, factor);
    total += std::log(clamp_probability(discriminators[i](downsample(real, factor), p, s)));
    total += std::log(1.0 - clamp_probability(discriminators[i](downsample(fake, factor), p, s)));
  }
  return total;
}

double feature_matching_loss(const std::vector<Matrix>& real, const std::vector<Matrix>& fake) {
  if (real.size() != fake.size())
    throw ShapeError("feature layer counts differ: " + std::to_string(real.size()) + " vs " +
                     std::to_string(fake.size()));
  if (real.empty()) throw ShapeError("no feature layers");
  double total = 0.0;
  for (std::size_t l = 0; l < real.size(); ++l) {
    if (real[l].rows() != fake[l].rows() || real[l].cols() != fake[l].cols())
      throw ShapeError("feature layer " + std::to_string(l) + " shapes differ");
    if (real[l].size() == 0) throw ShapeError("feature layer " + std::to_string(l) + " is empty");
    total += (real[l] - fake[l]).cwiseAbs().mean();
  }
  return total / static_cast<double>(real.size());
}

double perceptual_loss(const FeatureExtractorFn& extractor, const ImagePatch& real, const ImagePatch& fake) {
  if (real.width != fake.width || real.height != fake.height || real.channels != fake.channels)
    throw ShapeError("perceptual loss needs images of the same size");
  return feature_matching_loss(extractor(real), extractor(fake));
}

double total_objective(double gan, double fm, double vgg, double key, const LossWeights& w) {
  if (!std::isfinite(gan) || !std::isfinite(fm) || !std::isfinite(vgg) || !std::isfinite(key))
    throw DegenerateInputError("loss components must be finite");
  w.validate();
  return gan + w.feature_matching * fm + w.perceptual * vgg + w.keypoint * key;
}

FeatureExtractorFn identity_extractor() {
  return [](const ImagePatch& img) {
    return std::vector<Matrix>{Eigen::Map<const Matrix>(img.values.data(), 1, static_cast<Index>(img.values.size()))};
  };
}

FeatureExtractorFn projection_extractor(std::uint64_t seed, int layers, int features_per_layer) {
  if (layers < 1 || features_per_layer < 1) throw ShapeError("extractor needs at least one layer and feature");
  return [seed, layers, features_per_layer](const ImagePatch& img) {
    std::vector<Matrix> out;
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(img.values.data(), static_cast<Index>(img.values.size()));
    for (int l = 0; l < layers; ++l) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(l)));
      Matrix w(features_per_layer, x.size());
      for (Index i = 0; i < w.size(); ++i) w.data()[i] = rng.normal() / std::sqrt(static_cast<double>(x.size()));
      x = (w * x).array().tanh();
      out.push_back(x.transpose());
    }
    return out;
  };
}

KeypointExtractorFn metadata_keypoint_extractor() {
  return [](const ImagePatch& img) {
    if (!img.keypoints) throw ShapeError("patch carries no keypoints");
    return *img.keypoints;
  };
}

}  // namespace slp
