#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "sleeping/rng.hpp"

namespace sleeping {

// Exponential-weights instance over a small finite choice set with losses in
// [0, R]. Weights live in log space and are shifted by the running maximum on
// every update, so long horizons with large eta*R never underflow.
//
// Labels are opaque: the same instance type serves single actions, action
// pairs and pairs-of-pairs.
template <typename Label>
class Hedge {
 public:
  Hedge(std::vector<Label> labels, double eta, double loss_range)
      : labels_(std::move(labels)),
        log_w_(labels_.size(), 0.0),
        eta_(eta),
        range_(loss_range) {
    if (labels_.empty()) throw std::invalid_argument("Hedge: no choices");
    if (!(eta_ > 0.0)) throw std::invalid_argument("Hedge: eta must be > 0");
    if (!(range_ > 0.0)) throw std::invalid_argument("Hedge: R must be > 0");
  }

  std::size_t num_choices() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  double eta() const { return eta_; }
  double loss_range() const { return range_; }

  std::vector<double> probs() const {
    std::vector<double> p(log_w_.size());
    double hi = log_w_[0];
    for (double lw : log_w_) hi = std::max(hi, lw);
    double total = 0.0;
    for (std::size_t i = 0; i < log_w_.size(); ++i) {
      p[i] = std::exp(log_w_[i] - hi);
      total += p[i];
    }
    for (double& x : p) x /= total;
    return p;
  }

  // EWU: w(a) *= exp(-eta * loss(a)), with a max shift to keep exponents small.
  void update(std::span<const double> losses) {
    check_losses(losses);
    double hi = -HUGE_VAL;
    for (std::size_t i = 0; i < log_w_.size(); ++i) {
      log_w_[i] -= eta_ * losses[i];
      hi = std::max(hi, log_w_[i]);
    }
    for (double& lw : log_w_) lw -= hi;
  }

  std::size_t sample_index(RngStream& rng) const {
    return rng.categorical(probs());
  }

  const Label& sample(RngStream& rng) const {
    return labels_[sample_index(rng)];
  }

  double expected_loss(std::span<const double> losses) const {
    check_losses(losses);
    const std::vector<double> p = probs();
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) v += p[i] * losses[i];
    return v;
  }

  bool operator==(const Hedge&) const = default;

 private:
  void check_losses(std::span<const double> losses) const {
    if (losses.size() != labels_.size())
      throw std::invalid_argument("Hedge: loss vector size mismatch");
    for (double l : losses)
      if (!(l >= 0.0 && l <= range_))
        throw std::invalid_argument("Hedge: loss outside [0,R]");
  }

  std::vector<Label> labels_;
  std::vector<double> log_w_;
  double eta_;
  double range_;
};

// Right-hand side of the exponential-weights guarantee with loss range R:
//   (eta*R / (1 - e^{-eta*R})) * L*  +  R * ln(n) / (1 - e^{-eta*R}).
double hedge_bound(double eta, double loss_range, std::size_t n_choices,
                   double comparator_loss);

}  // namespace sleeping
