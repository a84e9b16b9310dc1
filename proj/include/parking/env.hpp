#pragma once

#include <cmath>
#include <stdexcept>

namespace parking {

// Environment class parameters: the street starts at S < 0 (the target sits at 0)
// and admissible intensities live in the band [L_low, L] with L_low = ln(2)/|S| + 1/L.
// Construction rejects parameter pairs for which the class is empty.
class EnvironmentParams {
 public:
  EnvironmentParams(double street_start, double class_bound)
      : street_start_(street_start), class_bound_(class_bound) {
    if (!std::isfinite(street_start) || !std::isfinite(class_bound)) {
      throw std::invalid_argument("environment parameters must be finite");
    }
    if (!(street_start < 0.0)) {
      throw std::invalid_argument("street start S must be negative");
    }
    if (!(class_bound > 1.0)) {
      throw std::invalid_argument("class bound L must exceed 1");
    }
    if (!(lower_intensity() < class_bound)) {
      throw std::invalid_argument(
          "empty environment class: ln(2)/|S| + 1/L must stay below L");
    }
  }

  double street_start() const { return street_start_; }
  double class_bound() const { return class_bound_; }
  double abs_street_start() const { return -street_start_; }

  // Smallest admissible intensity level, ln(2)/|S| + 1/L.
  double lower_intensity() const {
    return std::log(2.0) / abs_street_start() + 1.0 / class_bound_;
  }

 private:
  double street_start_;
  double class_bound_;
};

}  // namespace parking
