#pragma once

#include <cstddef>
#include <vector>

namespace speedlimit {

/// Real polynomial sum_k coefficients[k] x^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const { return coefficients_; }

  /// Degree after dropping trailing zeros; -1 for the zero polynomial.
  int degree() const;
  double leading_coefficient() const;
  bool is_zero() const { return degree() < 0; }

  double operator()(double x) const;
  Polynomial derivative() const;

 private:
  std::vector<double> coefficients_;
};

}  // namespace speedlimit
