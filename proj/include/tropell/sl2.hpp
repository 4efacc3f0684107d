#pragma once

// SL_2(Z/NZ): matrices, group orders, subgroup closure, transvections.

#include <array>
#include <compare>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "tropell/number.hpp"

namespace tropell {

class Sl2Matrix {
 public:
  /// Row-major [[a, b], [c, d]] reduced mod N; requires ad - bc = 1 mod N.
  Sl2Matrix(long a, long b, long c, long d, long modulus) : n_(modulus) {
    if (modulus < 2) throw DomainError(ErrorCode::InvalidArgument, "modulus must be at least 2");
    e_ = {reduce(a), reduce(b), reduce(c), reduce(d)};
    if (reduce(mul(e_[0], e_[3]) - mul(e_[1], e_[2])) != 1)
      throw DomainError(ErrorCode::InvalidArgument, "determinant is not 1 mod " + std::to_string(modulus));
  }

  static Sl2Matrix identity(long n) { return {1, 0, 0, 1, n}; }
  /// [[1, 1], [0, 1]]
  static Sl2Matrix upper_transvection(long n) { return {1, 1, 0, 1, n}; }
  /// [[1, 0], [1, 1]]
  static Sl2Matrix lower_transvection(long n) { return {1, 0, 1, 1, n}; }

  long modulus() const { return n_; }
  long a() const { return e_[0]; }
  long b() const { return e_[1]; }
  long c() const { return e_[2]; }
  long d() const { return e_[3]; }
  const std::array<long, 4>& entries() const { return e_; }
  long trace() const { return reduce(e_[0] + e_[3]); }
  bool is_identity() const { return e_ == std::array<long, 4>{1, 0, 0, 1}; }

  friend Sl2Matrix operator*(const Sl2Matrix& x, const Sl2Matrix& y) {
    if (x.n_ != y.n_) throw DomainError(ErrorCode::InvalidArgument, "moduli differ");
    const long n = x.n_;
    auto m = [n](long p, long q) { return static_cast<long>((static_cast<__int128>(p) * q) % n); };
    return Sl2Matrix(n, {(m(x.a(), y.a()) + m(x.b(), y.c())) % n, (m(x.a(), y.b()) + m(x.b(), y.d())) % n,
                         (m(x.c(), y.a()) + m(x.d(), y.c())) % n, (m(x.c(), y.b()) + m(x.d(), y.d())) % n});
  }

  Sl2Matrix inverse() const { return Sl2Matrix(n_, {e_[3], reduce(-e_[1]), reduce(-e_[2]), e_[0]}); }

  Sl2Matrix pow(long k) const {
    Sl2Matrix r = identity(n_), base = *this;
    if (k < 0) {
      base = inverse();
      k = -k;
    }
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  friend auto operator<=>(const Sl2Matrix&, const Sl2Matrix&) = default;
  friend bool operator==(const Sl2Matrix&, const Sl2Matrix&) = default;

  std::string str() const {
    return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) + "," +
           std::to_string(e_[3]) + "]] mod " + std::to_string(n_);
  }

 private:
  long n_;
  std::array<long, 4> e_;

  Sl2Matrix(long n, std::array<long, 4> e) : n_(n), e_(e) {}
  long reduce(long x) const { return ((x % n_) + n_) % n_; }
  long mul(long x, long y) const { return static_cast<long>((static_cast<__int128>(x) * y) % n_); }
};

/// |SL_2(Z/NZ)| = N^3 prod_{p | N} (1 - 1/p^2).
inline Integer sl2_order(long n) {
  if (n < 2) throw DomainError(ErrorCode::InvalidArgument, "sl2_order needs N >= 2");
  Integer order = 1;
  long m = n;
  for (long p = 2; p * p <= m || m > 1; ++p) {
    if (p * p > m) p = m;
    if (m % p != 0) continue;
    long pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    // |SL_2(Z/p^k)| = p^(3k) (1 - 1/p^2) = p^(3k-2) (p^2 - 1)
    Integer pk3 = Integer(pk) * pk * pk;
    order *= pk3 / (Integer(p) * p) * (Integer(p) * p - 1);
  }
  return order;
}

/// |PSL_2(F_p)| for a prime p.
inline Integer psl2_order(long p) {
  if (!is_prime(p)) throw DomainError(ErrorCode::InvalidArgument, "psl2_order needs a prime");
  return p == 2 ? sl2_order(2) : Integer(sl2_order(p) / 2);
}

/// Closure of `gens` under multiplication (a finite group, so also under
/// inverses). Fails with CapExceeded once more than `cap` elements appear.
inline std::set<Sl2Matrix> generate_subgroup(const std::vector<Sl2Matrix>& gens, std::size_t cap = 1'000'000) {
  if (gens.empty()) throw DomainError(ErrorCode::InvalidArgument, "no generators");
  const long n = gens.front().modulus();
  for (const auto& g : gens)
    if (g.modulus() != n) throw DomainError(ErrorCode::InvalidArgument, "generators have different moduli");
  std::set<Sl2Matrix> seen{Sl2Matrix::identity(n)};
  std::deque<Sl2Matrix> queue{Sl2Matrix::identity(n)};
  while (!queue.empty()) {
    Sl2Matrix x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Sl2Matrix y = x * g;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw DomainError(ErrorCode::CapExceeded, "subgroup has more than " + std::to_string(cap) + " elements");
        queue.push_back(y);
      }
    }
  }
  return seen;
}

/// A point of P^1(F_l), normalised so the first nonzero coordinate is 1.
struct ProjectivePoint {
  long x = 0, y = 0;
  friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
  std::string str() const { return "(" + std::to_string(x) + ":" + std::to_string(y) + ")"; }
};

inline long inverse_mod(long a, long p) {
  Integer r;
  Integer aa(((a % p) + p) % p), pp(p);
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t()) == 0)
    throw DomainError(ErrorCode::InvalidArgument, std::to_string(a) + " is not invertible mod " + std::to_string(p));
  return r.get_si();
}

inline ProjectivePoint normalize_point(long x, long y, long p) {
  x = ((x % p) + p) % p;
  y = ((y % p) + p) % p;
  if (x != 0) return {1, static_cast<long>((static_cast<__int128>(y) * inverse_mod(x, p)) % p)};
  if (y != 0) return {0, 1};
  throw DomainError(ErrorCode::InvalidArgument, "zero vector has no projective class");
}

/// g applied to the line through (x, y).
inline ProjectivePoint act(const Sl2Matrix& g, const ProjectivePoint& pt) {
  const long p = g.modulus();
  auto m = [p](long a, long b) { return static_cast<long>((static_cast<__int128>(a) * b) % p); };
  return normalize_point(m(g.a(), pt.x) + m(g.b(), pt.y), m(g.c(), pt.x) + m(g.d(), pt.y), p);
}

/// M != I, (M - I)^2 = 0 and tr M = 2, over a prime field.
inline bool is_transvection(const Sl2Matrix& m) {
  const long p = m.modulus();
  if (!is_prime(p)) throw DomainError(ErrorCode::InvalidArgument, "transvections are defined over prime fields");
  if (m.is_identity() || m.trace() != 2 % p) return false;
  const long a = m.a() - 1, b = m.b(), c = m.c(), d = m.d() - 1;
  auto mod = [p](__int128 x) { return static_cast<long>(((x % p) + p) % p); };
  return mod(static_cast<__int128>(a) * a + static_cast<__int128>(b) * c) == 0 &&
         mod(static_cast<__int128>(a) * b + static_cast<__int128>(b) * d) == 0 &&
         mod(static_cast<__int128>(c) * a + static_cast<__int128>(d) * c) == 0 &&
         mod(static_cast<__int128>(c) * b + static_cast<__int128>(d) * d) == 0;
}

/// The unique line fixed pointwise by a transvection: ker(M - I).
inline ProjectivePoint fixed_line(const Sl2Matrix& m) {
  if (!is_transvection(m)) throw DomainError(ErrorCode::NotTransvection, m.str() + " is not a transvection");
  const long p = m.modulus();
  long r0 = (m.a() - 1 + p) % p, r1 = m.b();
  if (r0 == 0 && r1 == 0) {
    r0 = m.c();
    r1 = (m.d() - 1 + p) % p;
  }
  return normalize_point(-r1, r0, p);
}

/// Two transvections with distinct fixed lines generate SL_2(F_l). Returns
/// whether such a pair occurs, confirming the full closure when it does.
inline bool check_surjectivity(const std::vector<Sl2Matrix>& transvections) {
  if (transvections.empty()) return false;
  const long p = transvections.front().modulus();
  std::vector<ProjectivePoint> lines;
  for (const auto& m : transvections) {
    if (m.modulus() != p) throw DomainError(ErrorCode::InvalidArgument, "transvections have different moduli");
    lines.push_back(fixed_line(m));
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (lines[i] != lines[j]) {
        const Integer order = sl2_order(p);
        auto closure = generate_subgroup({transvections[i], transvections[j]}, order.get_ui());
        ensure(closure.size() == order.get_ui(), "two transvections with distinct lines failed to generate SL_2");
        return true;
      }
  return false;
}

/// H_0(N) = {[[a, 0], [b, d]]} in SL_2(Z/NZ).
inline std::vector<Sl2Matrix> subgroup_h0(long n) {
  std::vector<Sl2Matrix> out;
  for (long a = 0; a < n; ++a)
    for (long d = 0; d < n; ++d)
      if ((a * d) % n == 1 % n)
        for (long b = 0; b < n; ++b) out.emplace_back(a, 0, b, d, n);
  return out;
}

/// H_1(N) = {[[a, 0], [b, +-1]]} in SL_2(Z/NZ).
inline std::vector<Sl2Matrix> subgroup_h1(long n) {
  std::vector<Sl2Matrix> out;
  for (const auto& m : subgroup_h0(n))
    if (m.d() == 1 || m.d() == n - 1) out.push_back(m);
  return out;
}

}  // namespace tropell
