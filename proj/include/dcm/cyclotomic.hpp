#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N), represented in the power
// basis 1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial.
// Values of different conductors mix freely; operations lift both sides to
// the lcm conductor first. Conductor 1 is the rational fast path: group
// convolutions of CM types stay rational, so the bulk of the sweeps never
// leaves plain mpq arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcm/rational.hpp"

namespace dcm {

inline unsigned totient(unsigned n) {
  if (n == 0) throw std::invalid_argument("totient(0)");
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace poly {

// Dense coefficient vectors, ascending powers, no trailing zeros.
using Vec = std::vector<Rat>;

inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Vec mul(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return {};
  Vec c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

// Quotient and remainder against a monic divisor.
inline std::pair<Vec, Vec> divmod(Vec a, const Vec& d) {
  if (d.empty()) throw std::domain_error("poly::divmod: zero divisor");
  if (d.back() != 1) throw std::invalid_argument("poly::divmod: divisor not monic");
  trim(a);
  if (a.size() < d.size()) return {{}, a};
  Vec q(a.size() - d.size() + 1, Rat(0));
  for (size_t i = a.size(); i >= d.size(); --i) {
    size_t deg = i - 1;
    Rat c = a[deg];
    if (c == 0) continue;
    size_t shift = deg - (d.size() - 1);
    q[shift] = c;
    for (size_t j = 0; j < d.size(); ++j) a[shift + j] -= c * d[j];
  }
  trim(a);
  return {q, a};
}

}  // namespace poly

// Phi_N as a monic integer polynomial, computed by exact division of x^N - 1
// by the product of Phi_d over proper divisors d. Cached; the lock makes the
// cache safe under the threaded verification sweeps.
inline const std::vector<Rat>& cyclotomic_poly(unsigned N) {
  if (N == 0) throw std::invalid_argument("cyclotomic_poly(0)");
  // Append-only cache; node addresses are stable, so a shared lock suffices
  // for the hot lookup path and writers take the lock exclusively.
  static std::map<unsigned, std::vector<Rat>> cache;
  static std::shared_mutex mtx;
  {
    std::shared_lock<std::shared_mutex> rlock(mtx);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
  }
  std::unique_lock<std::shared_mutex> lock(mtx);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  // Fill all divisors bottom-up so each step only multiplies finished entries.
  std::vector<unsigned> divs;
  for (unsigned d = 1; d <= N; ++d)
    if (N % d == 0) divs.push_back(d);
  for (unsigned d : divs) {
    if (cache.count(d)) continue;
    poly::Vec xd_minus_1(d + 1, Rat(0));
    xd_minus_1[0] = Rat(-1);
    xd_minus_1[d] = Rat(1);
    poly::Vec prod{Rat(1)};
    for (unsigned e : divs) {
      if (e < d && d % e == 0) prod = poly::mul(prod, cache.at(e));
    }
    auto [q, r] = poly::divmod(xd_minus_1, prod);
    if (!r.empty()) throw std::logic_error("cyclotomic_poly: nonzero remainder");
    cache.emplace(d, std::move(q));
  }
  return cache.at(N);
}

class Cyc {
 public:
  Cyc() : N_(1), c_(1, Rat(0)) {}
  Cyc(const Rat& q) : N_(1), c_(1, q) {}  // NOLINT: implicit by design
  Cyc(long v) : N_(1), c_(1, Rat(v)) {}   // NOLINT
  Cyc(int v) : N_(1), c_(1, Rat(v)) {}    // NOLINT

  static Cyc zeta(unsigned N, long k = 1) {
    if (N == 0) throw std::invalid_argument("Cyc::zeta: conductor 0");
    long e = k % static_cast<long>(N);
    if (e < 0) e += N;
    std::vector<Rat> raw(static_cast<size_t>(e) + 1, Rat(0));
    raw[static_cast<size_t>(e)] = Rat(1);
    return from_coeffs(N, raw);
  }

  // Arbitrary-degree coefficient vector in powers of zeta_N, reduced.
  static Cyc from_coeffs(unsigned N, std::vector<Rat> raw) {
    Cyc z;
    z.N_ = N;
    const auto& phi = cyclotomic_poly(N);
    poly::trim(raw);
    if (raw.size() >= phi.size()) raw = poly::divmod(std::move(raw), phi).second;
    raw.resize(phi.size() - 1, Rat(0));
    if (raw.empty()) raw.assign(1, Rat(0));  // N = 1: Phi has degree 1
    z.c_ = std::move(raw);
    return z;
  }

  unsigned conductor() const { return N_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return q == 0; });
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Rat to_rat() const {
    if (!is_rational()) throw std::domain_error("Cyc::to_rat: value not rational");
    return c_[0];
  }

  // zeta_N -> zeta_N^j, gcd(j, N) = 1. Conjugation is galois(-1).
  Cyc galois(long j) const {
    long jm = j % static_cast<long>(N_);
    if (jm < 0) jm += N_;
    if (std::gcd(static_cast<unsigned long>(jm), static_cast<unsigned long>(N_)) != 1)
      throw std::invalid_argument("Cyc::galois: exponent not coprime to conductor");
    std::vector<Rat> raw(N_, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      raw[(i * static_cast<size_t>(jm)) % N_] += c_[i];
    }
    return from_coeffs(N_, std::move(raw));
  }
  Cyc conj() const { return N_ == 1 ? *this : galois(-1); }

  Cyc lift(unsigned M) const {
    if (M % N_ != 0) throw std::invalid_argument("Cyc::lift: not a multiple conductor");
    if (M == N_) return *this;
    unsigned step = M / N_;
    std::vector<Rat> raw(static_cast<size_t>(c_.size() - 1) * step + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
    return from_coeffs(M, std::move(raw));
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    if (a.N_ == b.N_) {
      Cyc r = a;
      for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
      return r;
    }
    unsigned M = std::lcm(a.N_, b.N_);
    return a.lift(M) + b.lift(M);
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  Cyc operator-() const {
    Cyc r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.N_ == 1) return b.scaled(a.c_[0]);
    if (b.N_ == 1) return a.scaled(b.c_[0]);
    if (a.N_ == b.N_) {
      std::vector<Rat> raw(a.c_.size() + b.c_.size() - 1, Rat(0));
      for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
      }
      return from_coeffs(a.N_, std::move(raw));
    }
    unsigned M = std::lcm(a.N_, b.N_);
    return a.lift(M) * b.lift(M);
  }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc& operator/=(const Cyc& o) { return *this = *this / o; }

  // Extended Euclid against Phi_N; Phi_N is irreducible over Q, so any
  // nonzero value is invertible.
  Cyc inverse() const {
    if (is_zero()) throw std::domain_error("Cyc::inverse: division by zero");
    if (N_ == 1) return Cyc(Rat(1) / c_[0]);
    if (is_rational()) {
      Cyc r = *this;
      r.c_[0] = Rat(1) / c_[0];
      return r;
    }
    poly::Vec a = c_;
    poly::trim(a);
    poly::Vec b = cyclotomic_poly(N_);
    // Invariant: a = ua * this mod Phi, b = ub * this mod Phi.
    poly::Vec ua{Rat(1)}, ub{};
    while (!b.empty()) {
      // Make b monic for divmod, tracking the scale.
      Rat lead = b.back();
      poly::Vec bm = b;
      for (auto& q : bm) q /= lead;
      auto [quot, rem] = poly::divmod(a, bm);
      for (auto& q : quot) q /= lead;
      // rem = a - quot*b, so urem = ua - quot*ub.
      poly::Vec urem = ua;
      poly::Vec qu = poly::mul(quot, ub);
      if (urem.size() < qu.size()) urem.resize(qu.size(), Rat(0));
      for (size_t i = 0; i < qu.size(); ++i) urem[i] -= qu[i];
      poly::trim(urem);
      a = std::move(b);
      ua = std::move(ub);
      b = std::move(rem);
      ub = std::move(urem);
    }
    if (a.size() != 1) throw std::logic_error("Cyc::inverse: gcd not constant");
    for (auto& q : ua) q /= a[0];
    return from_coeffs(N_, std::move(ua));
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.N_ == b.N_) return a.c_ == b.c_;
    unsigned M = std::lcm(a.N_, b.N_);
    return a.lift(M).c_ == b.lift(M).c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // "0", "-3/2", "1 + 2*z5^2", "-z7 - 1/3*z7^4". Rational values render bare
  // whatever the stored conductor.
  std::string str() const {
    if (is_rational()) return rat_str(c_[0]);
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rat q = c_[i];
      bool neg = q < 0;
      if (first) {
        if (neg) out << "-";
        first = false;
      } else {
        out << (neg ? " - " : " + ");
      }
      Rat aq = neg ? Rat(-q) : q;
      if (i == 0) {
        out << rat_str(aq);
      } else {
        if (aq != 1) out << rat_str(aq) << "*";
        out << "z" << N_;
        if (i >= 2) out << "^" << i;
      }
    }
    return out.str();
  }

 private:
  Cyc scaled(const Rat& q) const {
    Cyc r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
  }

  unsigned N_;
  std::vector<Rat> c_;
};

inline Cyc operator*(const Rat& q, const Cyc& c) { return Cyc(q) * c; }
inline Cyc operator*(const Cyc& c, const Rat& q) { return c * Cyc(q); }

}  // namespace dcm
