#pragma once

#include <algorithm>

#include "lgr2/types.hpp"

namespace lgr2 {

// Running per-component mean/variance (Welford) with the usual RL
// normalization pipeline: clip raw values, standardize with a floored
// sigma, clip the result. Statistics update only during collection; the
// trainer never updates them inside gradient steps.
template <class S>
class RunningNormalizer {
 public:
  explicit RunningNormalizer(int dim, S raw_clip = S(200), S sigma_floor = S(0.01),
                             S norm_clip = S(5))
      : raw_clip_(raw_clip),
        sigma_floor_(sigma_floor),
        norm_clip_(norm_clip),
        mean_(VecX<S>::Zero(dim)),
        m2_(VecX<S>::Zero(dim)) {}

  int dim() const { return static_cast<int>(mean_.size()); }
  double count() const { return count_; }
  const VecX<S>& mean() const { return mean_; }

  VecX<S> variance() const {
    if (count_ < 1.0) return VecX<S>::Zero(mean_.size());
    return m2_ / static_cast<S>(count_);
  }

  void update(const VecX<S>& x) {
    const VecX<S> v = clip_raw(x);
    count_ += 1.0;
    const VecX<S> delta = v - mean_;
    mean_ += delta / static_cast<S>(count_);
    m2_ += (delta.array() * (v - mean_).array()).matrix();
  }

  void update_batch(const MatX<S>& cols) {
    for (int c = 0; c < cols.cols(); ++c) update(cols.col(c));
  }

  VecX<S> normalize(const VecX<S>& x) const {
    const VecX<S> v = clip_raw(x);
    const VecX<S> sigma =
        variance().array().max(S(0)).sqrt().max(sigma_floor_).matrix();
    VecX<S> out = ((v - mean_).array() / sigma.array()).matrix();
    return out.cwiseMax(-norm_clip_).cwiseMin(norm_clip_);
  }

  MatX<S> normalize_batch(const MatX<S>& cols) const {
    const VecX<S> sigma =
        variance().array().max(S(0)).sqrt().max(sigma_floor_).matrix();
    MatX<S> out = cols.cwiseMax(-raw_clip_).cwiseMin(raw_clip_);
    out.colwise() -= mean_;
    out.array().colwise() /= sigma.array();
    return out.cwiseMax(-norm_clip_).cwiseMin(norm_clip_);
  }

  // Checkpoint access.
  void restore(double count, VecX<S> mean, VecX<S> m2) {
    count_ = count;
    mean_ = std::move(mean);
    m2_ = std::move(m2);
  }
  const VecX<S>& m2() const { return m2_; }

 private:
  VecX<S> clip_raw(const VecX<S>& x) const {
    return x.cwiseMax(-raw_clip_).cwiseMin(raw_clip_);
  }

  S raw_clip_, sigma_floor_, norm_clip_;
  double count_ = 0.0;
  VecX<S> mean_, m2_;
};

}  // namespace lgr2
