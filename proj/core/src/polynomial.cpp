#include "speedlimit/polynomial.hpp"

#include <cmath>

#include "speedlimit/error.hpp"

namespace speedlimit {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw DomainError("polynomial coefficient is not finite");
  }
}

int Polynomial::degree() const {
  for (auto k = static_cast<int>(coefficients_.size()) - 1; k >= 0; --k) {
    if (coefficients_[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

double Polynomial::leading_coefficient() const {
  const int d = degree();
  return d < 0 ? 0.0 : coefficients_[static_cast<std::size_t>(d)];
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) return Polynomial({0.0});
  std::vector<double> out(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    out[k - 1] = static_cast<double>(k) * coefficients_[k];
  }
  return Polynomial(std::move(out));
}

}  // namespace speedlimit
