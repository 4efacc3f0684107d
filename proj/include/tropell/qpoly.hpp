#pragma once

// Dense univariate polynomials over Q. Only used internally to keep
// elements of Q(pi) in lowest terms.

#include <utility>
#include <vector>

#include "tropell/number.hpp"

namespace tropell::detail {

using QPoly = std::vector<Rational>;  // coefficient i multiplies s^i

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  qpoly_trim(r);
  return r;
}

/// a = q*b + r. b must be nonzero.
inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
  qpoly_trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  const long bs = static_cast<long>(b.size());
  for (long k = static_cast<long>(a.size()) - 1; k >= bs - 1; --k) {
    Rational c = a[k] / lead;
    if (c == 0) continue;
    q[k - (bs - 1)] = c;
    for (long j = 0; j < bs; ++j) a[k - (bs - 1) + j] -= c * b[j];
  }
  qpoly_trim(a);
  qpoly_trim(q);
  return {q, a};
}

inline QPoly qpoly_monic_gcd(QPoly a, QPoly b) {
  qpoly_trim(a);
  qpoly_trim(b);
  while (!b.empty()) {
    auto r = qpoly_divmod(a, b).second;
    if (!r.empty()) {
      Rational lead = r.back();
      for (auto& c : r) c /= lead;
    }
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

}  // namespace tropell::detail
