#include "sleeping/hedge.hpp"

namespace sleeping {

double hedge_bound(double eta, double loss_range, std::size_t n_choices,
                   double comparator_loss) {
  if (!(eta > 0.0) || !(loss_range > 0.0) || n_choices < 1)
    throw std::invalid_argument("hedge_bound: bad parameters");
  const double denom = 1.0 - std::exp(-eta * loss_range);
  return (eta * loss_range / denom) * comparator_loss +
         loss_range * std::log(static_cast<double>(n_choices)) / denom;
}

}  // namespace sleeping
