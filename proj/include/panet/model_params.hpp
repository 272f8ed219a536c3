#pragma once

#include <optional>

namespace panet {

//! Parameters of the directed preferential-attachment models.
//!
//! p is the node-creation probability, delta_in / delta_out the attachment
//! offsets, and lambda the (optional) mean rate of the batch-size law used by
//! the batched variant: batch sizes are 1 + Poisson(lambda).
struct ModelParams {
  double p = 0.5;
  double delta_in = 1.0;
  double delta_out = 1.0;
  std::optional<double> lambda;

  //! Throws std::invalid_argument unless p in (0, 1], delta_in > 0,
  //! delta_out > 0 and (when present) lambda > 0.
  void validate() const;
};

}  // namespace panet
