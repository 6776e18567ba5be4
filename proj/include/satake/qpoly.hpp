#pragma once

// Exact sparse polynomials in the Hecke parameter q, with arbitrary-precision
// integer coefficients.  These are the values of spherical structure
// constants, so all arithmetic must be exact; there is no floating point
// anywhere in this file.

#include <map>
#include <string>

#include "satake/common.hpp"

namespace satake {

class QPoly {
 public:
  QPoly() = default;
  /*implicit*/ QPoly(Int c) {
    if (c != 0) coeffs_[0] = c;
  }
  /*implicit*/ QPoly(const BigInt& c) {
    if (c != 0) coeffs_[0] = c;
  }

  static QPoly monomial(int deg, BigInt c = 1) {
    QPoly p;
    if (c != 0) p.coeffs_[deg] = std::move(c);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }

  // Degree of the zero polynomial is the sentinel -1.
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  BigInt coeff(int deg) const {
    auto it = coeffs_.find(deg);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  BigInt leading_coeff() const { return coeffs_.empty() ? BigInt(0) : coeffs_.rbegin()->second; }

  const std::map<int, BigInt>& coeffs() const { return coeffs_; }

  QPoly& operator+=(const QPoly& o) {
    for (const auto& [d, c] : o.coeffs_) add_term(d, c);
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    for (const auto& [d, c] : o.coeffs_) add_term(d, -c);
    return *this;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator-(const QPoly& a) {
    QPoly r;
    for (const auto& [d, c] : a.coeffs_) r.coeffs_[d] = -c;
    return r;
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly r;
    for (const auto& [da, ca] : a.coeffs_)
      for (const auto& [db, cb] : b.coeffs_) r.add_term(da + db, ca * cb);
    return r;
  }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  // Multiplication by q^k, the workhorse of the Iwahori relations.
  QPoly shifted(int k) const {
    QPoly r;
    for (const auto& [d, c] : coeffs_) r.coeffs_[d + k] = c;
    return r;
  }

  void add_term(int deg, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = coeffs_.try_emplace(deg, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  // Exact division; throws inconsistency_error when the division leaves a
  // remainder (this is how a broken spherical normalization surfaces).
  QPoly divexact(const QPoly& d) const {
    require(!d.is_zero(), "QPoly: division by zero");
    QPoly rem = *this, quot;
    while (!rem.is_zero()) {
      int dd = rem.degree() - d.degree();
      if (dd < 0) throw inconsistency_error("QPoly: inexact division (degree)");
      BigInt lc = rem.leading_coeff();
      BigInt dl = d.leading_coeff();
      if (lc % dl != 0) throw inconsistency_error("QPoly: inexact division (coefficient)");
      BigInt f = lc / dl;
      quot.add_term(dd, f);
      rem -= d * QPoly::monomial(dd, f);
    }
    return quot;
  }

  BigInt eval(const BigInt& q) const {
    BigInt r = 0;
    int prev = -1;
    // Horner over the sparse support, high degree first.
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      if (prev >= 0)
        for (int i = it->first; i < prev; ++i) r *= q;
      r += it->second;
      prev = it->first;
    }
    if (prev > 0)
      for (int i = 0; i < prev; ++i) r *= q;
    return r;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      BigInt c = it->second;
      if (!s.empty()) {
        s += (c > 0) ? " + " : " - ";
        if (c < 0) c = -c;
      } else if (c < 0) {
        s += "-";
        c = -c;
      }
      if (it->first == 0) {
        s += c.str();
      } else {
        if (c != 1) s += c.str() + "*";
        s += (it->first == 1) ? "q" : "q^" + std::to_string(it->first);
      }
    }
    return s;
  }

 private:
  std::map<int, BigInt> coeffs_;  // degree -> nonzero coefficient
};

}  // namespace satake
