#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>

namespace gppa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Extended-real objective value. The infinite state is an explicit flag so
// that descent checks and comparisons never run IEEE arithmetic on inf.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : value_(v) {}  // NOLINT: implicit by design, finite values

  static ExtReal infinity() {
    ExtReal r;
    r.finite_ = false;
    return r;
  }

  bool is_finite() const { return finite_; }

  // Finite value; calling this on +inf is a logic error upstream.
  double value() const {
    if (!finite_) throw std::logic_error("ExtReal::value() called on +inf");
    return value_;
  }

  ExtReal operator+(const ExtReal& o) const {
    if (!finite_ || !o.finite_) return infinity();
    return ExtReal(value_ + o.value_);
  }
  // Subtraction of a finite value only (h is finite everywhere).
  ExtReal operator-(double rhs) const {
    if (!finite_) return infinity();
    return ExtReal(value_ - rhs);
  }

  bool operator<(const ExtReal& o) const {
    if (!finite_) return false;
    if (!o.finite_) return true;
    return value_ < o.value_;
  }
  bool operator<=(const ExtReal& o) const { return !(o < *this); }
  bool operator==(const ExtReal& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
  }

 private:
  double value_ = 0.0;
  bool finite_ = true;
};

inline void check_dimension(const Vector& x, Index expected, const char* what) {
  if (x.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(expected) + ", got " +
                                std::to_string(x.size()));
  }
}

}  // namespace gppa
