#pragma once

#include <stdexcept>

#include "gppa/types.hpp"

namespace gppa {

// Thrown when the power iteration fails to reach the requested tolerance;
// carries the best estimate seen so far.
class EigensolveError : public std::runtime_error {
 public:
  EigensolveError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}
  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

// Largest (algebraic) eigenvalue of a symmetric matrix, accurate to
// tol * max(1, |lambda_max|). Deterministic: fixed start vector, shifted
// power iteration. Throws std::invalid_argument for non-symmetric input and
// EigensolveError on non-convergence.
double estimate_symmetric_max_eigenvalue(const Matrix& A, double tol,
                                         int max_iters = 200000);

}  // namespace gppa
