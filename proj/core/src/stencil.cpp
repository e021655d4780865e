#include "speedlimit/stencil.hpp"

#include <array>
#include <string>

#include "speedlimit/error.hpp"

namespace speedlimit {
namespace {

constexpr std::array<double, 1> kFirst2{1.0 / 2.0};
constexpr std::array<double, 2> kFirst4{2.0 / 3.0, -1.0 / 12.0};
constexpr std::array<double, 3> kFirst6{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
constexpr std::array<double, 4> kFirst8{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0,
                                        -1.0 / 280.0};

constexpr std::array<double, 2> kSecond2{-2.0, 1.0};
constexpr std::array<double, 3> kSecond4{-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
constexpr std::array<double, 4> kSecond6{-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0,
                                         1.0 / 90.0};
constexpr std::array<double, 5> kSecond8{-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0,
                                         8.0 / 315.0, -1.0 / 560.0};

void require_order(int order) {
  if (!is_supported_stencil_order(order)) {
    throw DomainError("unsupported stencil order " + std::to_string(order) +
                      " (expected 2, 4, 6 or 8)");
  }
}

}  // namespace

bool is_supported_stencil_order(int order) {
  return order == 2 || order == 4 || order == 6 || order == 8;
}

std::span<const double> first_derivative_coefficients(int order) {
  require_order(order);
  switch (order) {
    case 2: return kFirst2;
    case 4: return kFirst4;
    case 6: return kFirst6;
    default: return kFirst8;
  }
}

std::span<const double> second_derivative_coefficients(int order) {
  require_order(order);
  switch (order) {
    case 2: return kSecond2;
    case 4: return kSecond4;
    case 6: return kSecond6;
    default: return kSecond8;
  }
}

Eigen::MatrixXd first_derivative_matrix(Eigen::Index n, double h, int order) {
  const auto coeffs = first_derivative_coefficients(order);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t m = 1; m <= coeffs.size(); ++m) {
      const auto off = static_cast<Eigen::Index>(m);
      const double c = coeffs[m - 1] / h;
      if (i + off < n) d(i, i + off) = c;
      if (i - off >= 0) d(i, i - off) = -c;
    }
  }
  return d;
}

Eigen::MatrixXd second_derivative_matrix(Eigen::Index n, double h, int order) {
  const auto coeffs = second_derivative_coefficients(order);
  const double inv_h2 = 1.0 / (h * h);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = coeffs[0] * inv_h2;
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
      const auto off = static_cast<Eigen::Index>(m);
      const double c = coeffs[m] * inv_h2;
      if (i + off < n) d(i, i + off) = c;
      if (i - off >= 0) d(i, i - off) = c;
    }
  }
  return d;
}

}  // namespace speedlimit
