#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace satake {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using IVec = std::vector<Int>;

// Error taxonomy. Callers are expected to catch by class, not by message.
struct satake_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A precondition stated in an operation's contract was violated.
struct precondition_error : satake_error {
  using satake_error::satake_error;
};
// Two values from different root data were combined.
struct datum_mismatch_error : precondition_error {
  using precondition_error::precondition_error;
};
// The instance is outside the enumeration/size budget of this build.
struct capability_error : satake_error {
  using satake_error::satake_error;
};
// An internal identity that must hold exactly failed; indicates a bug
// (or, where documented, a genuine mathematical finding).
struct inconsistency_error : satake_error {
  using satake_error::satake_error;
};
// Truncated power-series precision was insufficient; retry with larger N.
struct precision_error : satake_error {
  using satake_error::satake_error;
};
// r-gon input with odd total side length.
struct parity_error : satake_error {
  using satake_error::satake_error;
};
// r-gon input violating a generalized triangle inequality.
struct triangle_error : satake_error {
  using satake_error::satake_error;
};
// A required sum-of-minuscules decomposition does not exist.
struct decomposition_error : satake_error {
  using satake_error::satake_error;
};

inline void check(bool cond, const char* msg) {
  if (!cond) throw inconsistency_error(msg);
}

inline void require(bool cond, const char* msg) {
  if (!cond) throw precondition_error(msg);
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct ivec_hash {
  std::size_t operator()(const IVec& v) const {
    std::size_t h = v.size();
    for (Int x : v) h = hash_combine(h, static_cast<std::size_t>(x) * 0x9e3779b1u + 0x85ebca6bu);
    return h;
  }
};

inline IVec operator+(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline IVec operator-(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline IVec operator-(const IVec& a) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline IVec operator*(Int c, const IVec& a) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}
inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline bool is_zero(const IVec& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

inline std::string ivec_to_string(const IVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace satake
