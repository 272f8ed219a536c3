#pragma once

#include <cstddef>
#include <vector>

namespace panet {

//! Dense table of probabilities (or frequencies) over the degree box
//! 0..m_max x 0..l_max, plus the mass falling outside the box.
struct PmfGrid {
  std::size_t m_max = 0;
  std::size_t l_max = 0;
  std::vector<double> values;  // row-major, (m_max+1) x (l_max+1)
  double overflow = 0.0;

  double at(std::size_t m, std::size_t l) const {
    return values[m * (l_max + 1) + l];
  }
  double& at(std::size_t m, std::size_t l) {
    return values[m * (l_max + 1) + l];
  }
  static PmfGrid zeros(std::size_t m_max, std::size_t l_max) {
    return {m_max, l_max,
            std::vector<double>((m_max + 1) * (l_max + 1), 0.0), 0.0};
  }
};

//! Density values on a grid strictly inside (0, 1), with the raw integral
//! that was divided out to normalize.
struct AngularGrid {
  std::vector<double> theta;
  std::vector<double> density;
  double normalization = 1.0;  // trapezoid integral of the unnormalized curve
};

}  // namespace panet
