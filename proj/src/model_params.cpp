#include "panet/model_params.hpp"

#include <stdexcept>
#include <string>

namespace panet {

void ModelParams::validate() const {
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("ModelParams: p = " + std::to_string(p) +
                                " outside (0, 1]");
  if (!(delta_in > 0.0))
    throw std::invalid_argument("ModelParams: delta_in = " +
                                std::to_string(delta_in) + " must be > 0");
  if (!(delta_out > 0.0))
    throw std::invalid_argument("ModelParams: delta_out = " +
                                std::to_string(delta_out) + " must be > 0");
  if (lambda && !(*lambda > 0.0))
    throw std::invalid_argument("ModelParams: lambda = " +
                                std::to_string(*lambda) + " must be > 0");
}

}  // namespace panet
