#include "gppa/eigenvalue.hpp"

#include <cmath>

#include "gppa/rng.hpp"

namespace gppa {

double estimate_symmetric_max_eigenvalue(const Matrix& A, double tol, int max_iters) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw std::invalid_argument("estimate_symmetric_max_eigenvalue: matrix must be square and nonempty");
  }
  if (!(tol > 0)) {
    throw std::invalid_argument("estimate_symmetric_max_eigenvalue: tol must be > 0");
  }
  const Index n = A.rows();
  const double scale = A.cwiseAbs().maxCoeff();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(A(i, j) - A(j, i)) > 1e-12 * std::max(1.0, scale)) {
        throw std::invalid_argument("estimate_symmetric_max_eigenvalue: matrix is not symmetric");
      }
    }
  }
  if (n == 1) return A(0, 0);

  // Gershgorin shift makes A + s I positive semidefinite, so the power
  // iteration converges to lambda_max(A) + s, the largest algebraic
  // eigenvalue, rather than the largest in magnitude.
  const double shift = A.cwiseAbs().rowwise().sum().maxCoeff();

  SplitMix64 rng(0x5EEDu);
  Vector v = rng.uniform_vector(n, -1.0, 1.0);
  v.normalize();

  double theta = 0.0;  // Rayleigh quotient of the shifted matrix
  for (int it = 0; it < max_iters; ++it) {
    Vector w = A * v + shift * v;
    theta = v.dot(w);
    const double residual = (w - theta * v).norm();
    const double estimate = theta - shift;
    if (residual <= 0.5 * tol * std::max(1.0, std::abs(estimate))) {
      return estimate;
    }
    const double wn = w.norm();
    if (wn == 0.0) {
      // v is in the kernel of the shifted matrix: lambda_max(A) = -shift.
      return -shift;
    }
    v = w / wn;
  }
  throw EigensolveError(
      "estimate_symmetric_max_eigenvalue: no convergence within iteration cap",
      theta - shift);
}

}  // namespace gppa
