#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "slp/pose.hpp"

namespace slp {

/// 21 hand keypoints in pixel units relative to their patch.
struct KeypointSet {
  static constexpr int kPoints = 21;
  Eigen::Matrix<double, kPoints, 2, Eigen::RowMajor> points = decltype(points)::Zero();

  void validate() const;
  bool operator==(const KeypointSet& o) const { return points == o.points; }
};

/// Row-major pixels with interleaved channels, values in [0, 1]. The optional
/// keypoints travel with the patch through crops and blurs so that stub
/// extractors can read them back.
struct ImagePatch {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> values;
  std::optional<KeypointSet> keypoints;

  ImagePatch() = default;
  ImagePatch(int w, int h, int c, double fill = 0.0);
  double& at(int x, int y, int c = 0) { return values[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return values[index(x, y, c)]; }
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels) +
           static_cast<std::size_t>(c);
  }
  /// Positive dimensions, matching storage, values within [0, 1].
  void validate() const;
};

inline constexpr double kDiscriminatorEpsilon = 1e-7;

/// Clamps a discriminator output into [eps, 1 - eps]; non-finite outputs are an error.
double clamp_probability(double p);

/// D_H: keypoints -> probability that they are real.
using KeypointDiscriminator = std::function<double(const KeypointSet&)>;
/// D_i: (image, pose condition, style image) -> probability that the image is real.
using FrameDiscriminator = std::function<double(const ImagePatch& image, const ImagePatch& pose,
                                                const ImagePatch& style)>;
/// Image -> one feature matrix per layer.
using FeatureExtractorFn = std::function<std::vector<Matrix>(const ImagePatch&)>;
/// Image -> hand keypoints.
using KeypointExtractorFn = std::function<KeypointSet(const ImagePatch&)>;

struct LossWeights {
  double feature_matching = 10.0;
  double perceptual = 10.0;
  double keypoint = 1.0;
  void validate() const;
};

inline constexpr int kHandCropSize = 60;

/// 60x60 crop centred on `cx`, `cy`, shifted inwards at the frame edges.
ImagePatch crop_hand_region(const ImagePatch& frame, int cx, int cy);

/// Average pooling by an integer factor (floor of the dimensions).
ImagePatch downsample(const ImagePatch& image, int factor);

/// Horizontal box blur of odd width `length`, edges clamped. Keypoints are kept.
ImagePatch motion_blur(const ImagePatch& image, int length);

/// mean log D_H(real) + mean log(1 - D_H(fake)).
double keypoint_gan_loss(const KeypointDiscriminator& d_hand, const std::vector<KeypointSet>& real,
                         const std::vector<KeypointSet>& fake);

/// Sum over the three scales (x1, x2, x4) of log D_i(real) + log(1 - D_i(fake)),
/// every image pooled to the discriminator's scale.
double multiscale_gan_loss(const std::vector<FrameDiscriminator>& discriminators, const ImagePatch& pose,
                           const ImagePatch& style, const ImagePatch& real, const ImagePatch& fake);

/// Mean over layers of the mean absolute difference.
double feature_matching_loss(const std::vector<Matrix>& real, const std::vector<Matrix>& fake);

double perceptual_loss(const FeatureExtractorFn& extractor, const ImagePatch& real, const ImagePatch& fake);

/// gan + w_fm * fm + w_vgg * vgg + w_key * key.
double total_objective(double gan, double fm, double vgg, double key, const LossWeights& w = {});

/// Single-layer extractor returning the pixels as one row.
FeatureExtractorFn identity_extractor();
/// `layers` layers of tanh(random projection) features, the projection drawn
/// from `seed`; deterministic for a given seed and image size.
FeatureExtractorFn projection_extractor(std::uint64_t seed, int layers, int features_per_layer);
/// Reads the keypoints attached to the patch.
KeypointExtractorFn metadata_keypoint_extractor();

}  // namespace slp
