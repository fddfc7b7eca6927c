#pragma once

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace eritile {

// Boys function F_m(T) = int_0^1 t^(2m) exp(-T t^2) dt for m = 0..m_max.
//
// Two branches, both accurate to ~1e-15 absolute:
//  - convergent series at m_max followed by the downward recursion
//    F_{m-1} = (2T F_m + exp(-T)) / (2m-1), used for small/moderate T where
//    downward is the stable direction;
//  - closed form F_0 = sqrt(pi/T)/2 * erf(sqrt(T)) followed by the upward
//    recursion F_{m+1} = ((2m+1) F_m - exp(-T)) / (2T), contractive while
//    2m+1 < 2T, used for large T.
// The truncated asymptotic seed alone drops an exp(-T) tail that downward
// recursion then amplifies by (2T)^m / (2m-1)!!, so the crossover sits where
// the upward branch is safely contractive for every requested order.
inline void boys_inplace(int m_max, double T, double* F) {
  assert(m_max >= 0 && T >= 0.0);
  const double expT = std::exp(-T);

  if (T < 35.0 || 2 * m_max + 1 >= T) {
    // F_{m_max} = exp(-T) * sum_k (2T)^k (2m-1)!! / (2m+2k+1)!!
    double term = 1.0 / (2 * m_max + 1);
    double sum = term;
    for (int k = 0; term > 1e-17 * sum && k < 10000; ++k) {
      term *= 2.0 * T / (2 * m_max + 2 * k + 3);
      sum += term;
    }
    F[m_max] = expT * sum;
    for (int m = m_max; m > 0; --m)
      F[m - 1] = (2.0 * T * F[m] + expT) / (2 * m - 1);
  } else {
    const double sqrtT = std::sqrt(T);
    F[0] = 0.5 * std::sqrt(std::numbers::pi / T) * std::erf(sqrtT);
    for (int m = 0; m < m_max; ++m)
      F[m + 1] = ((2 * m + 1) * F[m] - expT) / (2.0 * T);
  }
}

inline std::vector<double> boys(int m_max, double T) {
  if (m_max < 0)
    throw std::domain_error("boys: order must be non-negative");
  if (T < 0.0 || !std::isfinite(T))
    throw std::domain_error("boys: argument must be finite and non-negative");
  std::vector<double> F(static_cast<std::size_t>(m_max) + 1);
  boys_inplace(m_max, T, F.data());
  return F;
}

}  // namespace eritile
