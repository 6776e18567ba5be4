#pragma once

// Root data for split reductive groups, in fixed integral coordinates.
//
// Coordinate models:
//   * GLn        : X_* = X^* = Z^n in the standard basis, roots e_i - e_j.
//   * Bn (SO_{2n+1}, adjoint): X_* = Z^n in the epsilon basis; this equals the
//     full coweight lattice, so spin-type coweights never appear and all
//     arithmetic stays integral.
//   * every other simple type (Cn, Dn, E6..E8, F4, G2), always adjoint:
//     X_* = Z^rank in the basis of fundamental coweights, X^* = root lattice
//     in the basis of simple roots.  The pairing is the dot product in both
//     models by construction.
//   * finite products of the above.
//
// All data are immutable after construction and interned by label, so raw
// `const RootDatum*` identity comparisons are meaningful and WeightVec can
// carry its owner cheaply.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "satake/common.hpp"

namespace satake {

class RootDatum;

// Element of X_*(T): a coweight of G, equivalently a weight of the dual group.
struct WeightVec {
  const RootDatum* datum = nullptr;
  IVec c;

  WeightVec() = default;
  WeightVec(const RootDatum* d, IVec coords) : datum(d), c(std::move(coords)) {}

  friend bool operator==(const WeightVec& a, const WeightVec& b) {
    return a.datum == b.datum && a.c == b.c;
  }
  friend bool operator!=(const WeightVec& a, const WeightVec& b) { return !(a == b); }
  friend bool operator<(const WeightVec& a, const WeightVec& b) {
    return a.datum == b.datum ? a.c < b.c : a.datum < b.datum;
  }
};

// Element of X^*(T): a vector on the root side of the pairing.
struct RootVec {
  const RootDatum* datum = nullptr;
  IVec c;

  RootVec() = default;
  RootVec(const RootDatum* d, IVec coords) : datum(d), c(std::move(coords)) {}

  friend bool operator==(const RootVec& a, const RootVec& b) {
    return a.datum == b.datum && a.c == b.c;
  }
};

struct weightvec_hash {
  std::size_t operator()(const WeightVec& v) const {
    return hash_combine(ivec_hash{}(v.c), reinterpret_cast<std::size_t>(v.datum));
  }
};

namespace detail {

// Solves sum_j x_j * cols[j] = target exactly over the rationals.
// Returns nullopt when the system is inconsistent.  The columns are assumed
// linearly independent (true for simple roots and simple coroots).
inline std::optional<std::vector<BigRat>> solve_columns(const std::vector<IVec>& cols,
                                                        const IVec& target) {
  if (cols.empty()) return is_zero(target) ? std::optional<std::vector<BigRat>>({}) : std::nullopt;
  const std::size_t rows = cols[0].size(), n = cols.size();
  std::vector<std::vector<BigRat>> a(rows, std::vector<BigRat>(n + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
    a[i][n] = target[i];
  }
  std::size_t r = 0;
  std::vector<int> pivot_of_col(n, -1);
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    BigRat inv = a[r][c];
    for (std::size_t j = c; j <= n; ++j) a[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      BigRat f = a[i][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<BigRat> x(n, BigRat(0));
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_of_col[c] >= 0) x[c] = a[pivot_of_col[c]][n];
  return x;
}

inline bool is_integer(const BigRat& r) { return denominator(r) == 1; }

// Smith normal form invariant factors of the lattice map Z^k -> Z^rows given
// by integer columns; used only for the (tiny) center computation.
inline std::vector<Int> smith_invariants(std::vector<IVec> cols) {
  if (cols.empty()) return {};
  std::size_t rows = cols[0].size(), ncols = cols.size();
  std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(ncols));
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  std::vector<Int> inv;
  std::size_t top = 0, left = 0;
  while (top < rows && left < ncols) {
    std::size_t pi = rows, pj = ncols;
    BigInt best = 0;
    for (std::size_t i = top; i < rows; ++i)
      for (std::size_t j = left; j < ncols; ++j)
        if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < best)) {
          best = abs(m[i][j]);
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][left], m[i][pj]);
    std::swap(m[top], m[pi]);
    bool clean = true;
    for (std::size_t i = top + 1; i < rows; ++i)
      if (m[i][left] != 0) {
        BigInt f = m[i][left] / m[top][left];
        for (std::size_t j = left; j < ncols; ++j) m[i][j] -= f * m[top][j];
        if (m[i][left] != 0) clean = false;
      }
    for (std::size_t j = left + 1; j < ncols; ++j)
      if (m[top][j] != 0) {
        BigInt f = m[top][j] / m[top][left];
        for (std::size_t i = top; i < rows; ++i) m[i][j] -= f * m[i][left];
        if (m[top][j] != 0) clean = false;
      }
    if (!clean) continue;
    BigInt d = abs(m[top][left]);
    inv.push_back(static_cast<Int>(d));
    ++top;
    ++left;
  }
  // Normalize divisibility d1 | d2 | ... (gcd massaging).
  for (std::size_t i = 0; i + 1 < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j)
      if (inv[j] % inv[i] != 0) {
        Int a = inv[i], b = inv[j];
        Int g = std::gcd(a, b);
        inv[i] = g;
        inv[j] = a / g * b;
      }
  std::sort(inv.begin(), inv.end());
  return inv;
}

}  // namespace detail

class RootDatum {
 public:
  struct Factor {
    char family;               // 'A','B','C','D','E','F','G'
    int rank;                  // Cartan rank of the factor
    std::vector<int> simple;   // node indices into the datum's simple list
  };

  std::string label;
  int rank = 0;  // dimension of X_*
  std::vector<Factor> factors;

  std::vector<IVec> pos_roots;    // X^*-side coordinates
  std::vector<IVec> pos_coroots;  // X_*-side coordinates, parallel to pos_roots
  std::vector<int> root_factor;   // factor index of each positive root
  std::vector<int> simple_idx;    // positions of the simple roots inside pos_roots
  std::vector<std::vector<Int>> bourbaki_cartan;  // <alpha_i, alpha_j^vee>

  IVec two_rho;                   // sum of positive roots
  IVec two_rho_check;             // sum of positive coroots
  std::vector<IVec> fundamental_coweights;  // per simple node (a fixed lift)
  std::vector<IVec> central_basis;          // basis of the coweight radical
  std::vector<Int> center_invariants;       // torsion of X_*/Q^vee, factors > 1
  int center_free_rank = 0;
  Int weyl_order = 0;
  bool enumeration_supported = false;

  int nsimple() const { return static_cast<int>(simple_idx.size()); }
  RootVec simple_root(int i) const { return {this, pos_roots[simple_idx[i]]}; }
  WeightVec simple_coroot(int i) const { return {this, pos_coroots[simple_idx[i]]}; }
  WeightVec fundamental_coweight(int i) const { return {this, fundamental_coweights[i]}; }
  RootVec two_rho_vec() const { return {this, two_rho}; }
  WeightVec two_rho_check_vec() const { return {this, two_rho_check}; }
  WeightVec zero() const { return {this, IVec(rank, 0)}; }
  WeightVec weight(IVec coords) const {
    require(static_cast<int>(coords.size()) == rank, "weight: wrong coordinate length");
    return {this, std::move(coords)};
  }

  bool is_simple_adjoint() const {
    return factors.size() == 1 && central_basis.empty() &&
           static_cast<int>(fundamental_coweights.size()) == rank;
  }

  // ---- factories (interned; see root_datum() below) -----------------------

  static RootDatum make_gl(int n);
  static RootDatum make_so_odd(int n);
  static RootDatum make_adjoint(char family, int rk);
  static RootDatum make_product(const std::vector<const RootDatum*>& parts);

  // Index of a root by coordinates: (positive index, sign), or nullopt.
  std::optional<std::pair<int, int>> root_lookup(const IVec& x) const {
    auto it = root_index_.find(x);
    if (it != root_index_.end()) return std::make_pair(it->second, +1);
    it = root_index_.find(-x);
    if (it != root_index_.end()) return std::make_pair(it->second, -1);
    return std::nullopt;
  }

  // Highest root of a factor (the dominant long root).
  int highest_root_of_factor(int f) const { return highest_root_[f]; }

 private:
  std::unordered_map<IVec, int, ivec_hash> root_index_;
  std::vector<int> highest_root_;

  void finalize();
};

inline Int pairing(const RootVec& x, const WeightVec& v) {
  if (x.datum != v.datum) throw datum_mismatch_error("pairing: values from different root data");
  return dot(x.c, v.c);
}

inline void same_datum(const WeightVec& a, const WeightVec& b) {
  if (a.datum != b.datum) throw datum_mismatch_error("operands belong to different root data");
}

inline WeightVec operator+(const WeightVec& a, const WeightVec& b) {
  same_datum(a, b);
  return {a.datum, a.c + b.c};
}
inline WeightVec operator-(const WeightVec& a, const WeightVec& b) {
  same_datum(a, b);
  return {a.datum, a.c - b.c};
}
inline WeightVec operator-(const WeightVec& a) { return {a.datum, -a.c}; }
inline WeightVec operator*(Int k, const WeightVec& a) { return {a.datum, k * a.c}; }

// ---------------------------------------------------------------------------
// constructors

inline void RootDatum::finalize() {
  const int s = nsimple();
  two_rho.assign(rank, 0);
  two_rho_check.assign(rank, 0);
  for (std::size_t i = 0; i < pos_roots.size(); ++i) {
    two_rho = two_rho + pos_roots[i];
    two_rho_check = two_rho_check + pos_coroots[i];
    root_index_.emplace(pos_roots[i], static_cast<int>(i));
  }
  bourbaki_cartan.assign(s, std::vector<Int>(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      bourbaki_cartan[i][j] = dot(pos_roots[simple_idx[i]], pos_coroots[simple_idx[j]]);
  // <2rho, alpha_i^vee> = 2 is the defining property of rho; fail loudly if a
  // constructor got the positive system wrong.
  for (int i = 0; i < s; ++i)
    check(dot(two_rho, pos_coroots[simple_idx[i]]) == 2, "root datum: <2rho, simple coroot> != 2");

  // Radical of the pairing on X_* (the central torus directions): integer
  // kernel basis of the simple-root pairing matrix.  All our models have the
  // kernel spanned by unit-pattern vectors, so scanning the rational kernel
  // and clearing denominators is enough.
  central_basis.clear();
  {
    // Solve <alpha_i, v> = 0; kernel dimension = rank - s.
    // Gaussian elimination over rationals on the s x rank matrix.
    std::vector<std::vector<BigRat>> a(s, std::vector<BigRat>(rank));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < rank; ++j) a[i][j] = pos_roots[simple_idx[i]][j];
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < rank && r < s; ++c) {
      int p = r;
      while (p < s && a[p][c] == 0) ++p;
      if (p == s) continue;
      std::swap(a[p], a[r]);
      BigRat inv = a[r][c];
      for (int j = 0; j < rank; ++j) a[r][j] /= inv;
      for (int i = 0; i < s; ++i) {
        if (i == r || a[i][c] == 0) continue;
        BigRat f = a[i][c];
        for (int j = 0; j < rank; ++j) a[i][j] -= f * a[r][j];
      }
      pivot_col.push_back(c);
      ++r;
    }
    std::vector<bool> is_pivot(rank, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < rank; ++c) {
      if (is_pivot[c]) continue;
      std::vector<BigRat> v(rank, BigRat(0));
      v[c] = 1;
      for (int i = 0; i < r; ++i) v[pivot_col[i]] = -a[i][c];
      BigInt lcm = 1;
      for (auto& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
      IVec iv(rank);
      for (int j = 0; j < rank; ++j) iv[j] = static_cast<Int>(BigInt(numerator(v[j]) * (lcm / denominator(v[j]))));
      central_basis.push_back(iv);
    }
  }
  center_free_rank = static_cast<int>(central_basis.size());

  {
    std::vector<IVec> cols;
    for (int i = 0; i < s; ++i) cols.push_back(pos_coroots[simple_idx[i]]);
    auto inv = detail::smith_invariants(cols);
    center_invariants.clear();
    for (Int d : inv)
      if (d > 1) center_invariants.push_back(d);
  }

  weyl_order = 1;
  highest_root_.assign(factors.size(), -1);
  for (std::size_t f = 0; f < factors.size(); ++f) {
    Int w = 1;
    int n = factors[f].rank;
    switch (factors[f].family) {
      case 'A': for (int i = 2; i <= n + 1; ++i) w *= i; break;
      case 'B':
      case 'C': for (int i = 1; i <= n; ++i) w *= 2 * i; break;
      case 'D': for (int i = 1; i <= n; ++i) w *= i; w <<= (n - 1); break;
      case 'E': w = (n == 6) ? 51840LL : (n == 7) ? 2903040LL : 696729600LL; break;
      case 'F': w = 1152; break;
      case 'G': w = 12; break;
      default: throw precondition_error("unknown Cartan family");
    }
    weyl_order *= w;
    // highest root: the dominant root of maximal height within the factor
    Int best_h = -1;
    for (std::size_t i = 0; i < pos_roots.size(); ++i) {
      if (root_factor[i] != static_cast<int>(f)) continue;
      bool dom = true;
      for (int j = 0; j < s && dom; ++j)
        dom = dot(pos_roots[i], pos_coroots[simple_idx[j]]) >= 0;
      if (!dom) continue;
      Int h = dot(pos_roots[i], two_rho_check);
      if (h > best_h) {
        best_h = h;
        highest_root_[f] = static_cast<int>(i);
      }
    }
    check(highest_root_[f] >= 0, "root datum: factor without highest root");
  }
  enumeration_supported = weyl_order <= 200;
}

inline RootDatum RootDatum::make_gl(int n) {
  require(n >= 1, "GL(n): n >= 1");
  RootDatum d;
  d.label = "GL" + std::to_string(n);
  d.rank = n;
  Factor f;
  f.family = 'A';
  f.rank = n - 1;
  for (int i = 0; i + 1 < n; ++i) f.simple.push_back(i);
  d.factors.push_back(f);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      IVec r(n, 0);
      r[i] = 1;
      r[j] = -1;
      d.pos_roots.push_back(r);
      d.pos_coroots.push_back(r);
      d.root_factor.push_back(0);
    }
  // simple roots e_i - e_{i+1} in Bourbaki order
  d.simple_idx.clear();
  for (int i = 0; i + 1 < n; ++i) {
    IVec r(n, 0);
    r[i] = 1;
    r[i + 1] = -1;
    for (std::size_t k = 0; k < d.pos_roots.size(); ++k)
      if (d.pos_roots[k] == r) d.simple_idx.push_back(static_cast<int>(k));
  }
  for (int k = 1; k < n; ++k) {
    IVec w(n, 0);
    for (int i = 0; i < k; ++i) w[i] = 1;
    d.fundamental_coweights.push_back(w);
  }
  d.finalize();
  return d;
}

inline RootDatum RootDatum::make_so_odd(int n) {
  require(n >= 2, "SO(2n+1): n >= 2");
  RootDatum d;
  d.label = "B" + std::to_string(n);
  d.rank = n;
  Factor f;
  f.family = 'B';
  f.rank = n;
  for (int i = 0; i < n; ++i) f.simple.push_back(i);
  d.factors.push_back(f);
  auto push = [&](IVec r, IVec cr) {
    d.pos_roots.push_back(std::move(r));
    d.pos_coroots.push_back(std::move(cr));
    d.root_factor.push_back(0);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      IVec r(n, 0);
      r[i] = 1;
      r[j] = -1;
      push(r, r);
      IVec p(n, 0);
      p[i] = 1;
      p[j] = 1;
      push(p, p);
    }
  for (int i = 0; i < n; ++i) {
    IVec r(n, 0);
    r[i] = 1;
    push(r, 2 * r);
  }
  for (int i = 0; i + 1 < n; ++i) {
    IVec r(n, 0);
    r[i] = 1;
    r[i + 1] = -1;
    for (std::size_t k = 0; k < d.pos_roots.size(); ++k)
      if (d.pos_roots[k] == r) d.simple_idx.push_back(static_cast<int>(k));
  }
  {
    IVec r(n, 0);
    r[n - 1] = 1;
    for (std::size_t k = 0; k < d.pos_roots.size(); ++k)
      if (d.pos_roots[k] == r) d.simple_idx.push_back(static_cast<int>(k));
  }
  for (int k = 1; k <= n; ++k) {
    IVec w(n, 0);
    for (int i = 0; i < k; ++i) w[i] = 1;
    d.fundamental_coweights.push_back(w);
  }
  d.finalize();
  return d;
}

namespace detail {

// Bourbaki Cartan matrix <alpha_i, alpha_j^vee> for an irreducible type.
inline std::vector<std::vector<Int>> bourbaki_cartan_matrix(char family, int n) {
  std::vector<std::vector<Int>> c(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };  // 0-based
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      require(n >= 2, "Bn: n >= 2");
      c[n - 2][n - 1] = -2;  // long alpha_{n-1} against short coroot
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      require(n >= 2, "Cn: n >= 2");
      c[n - 1][n - 2] = -2;
      break;
    case 'D':
      require(n >= 3, "Dn: n >= 3");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E': {
      require(n >= 6 && n <= 8, "En: n in {6,7,8}");
      // Bourbaki: chain 1-3-4-5-6(-7(-8)), node 2 attached to 4.
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      if (n >= 7) link(5, 6);
      if (n >= 8) link(6, 7);
      link(1, 3);
      break;
    }
    case 'F':
      require(n == 4, "F4");
      link(0, 1);
      link(2, 3);
      c[1][2] = -2;
      c[2][1] = -1;
      break;
    case 'G':
      require(n == 2, "G2");
      c[0][1] = -1;
      c[1][0] = -3;
      break;
    default:
      throw precondition_error("unknown Cartan family");
  }
  return c;
}

inline std::size_t expected_root_count(char family, int n) {
  switch (family) {
    case 'A': return static_cast<std::size_t>(n) * (n + 1);
    case 'B':
    case 'C': return 2u * n * n;
    case 'D': return 2u * n * (n - 1);
    case 'E': return n == 6 ? 72u : n == 7 ? 126u : 240u;
    case 'F': return 48u;
    case 'G': return 12u;
  }
  return 0;
}

}  // namespace detail

inline RootDatum RootDatum::make_adjoint(char family, int rk) {
  RootDatum d;
  d.label = std::string(1, family) + std::to_string(rk) + "ad";
  d.rank = rk;
  Factor f;
  f.family = family;
  f.rank = rk;
  for (int i = 0; i < rk; ++i) f.simple.push_back(i);
  d.factors.push_back(f);

  auto C = detail::bourbaki_cartan_matrix(family, rk);
  // Closure of the simple roots under simple reflections; roots are kept in
  // simple-root coordinates, coroots in simple-coroot coordinates.
  std::vector<std::pair<IVec, IVec>> roots;
  std::unordered_map<IVec, int, ivec_hash> seen;
  for (int i = 0; i < rk; ++i) {
    IVec m(rk, 0), dd(rk, 0);
    m[i] = 1;
    dd[i] = 1;
    seen.emplace(m, static_cast<int>(roots.size()));
    roots.emplace_back(m, dd);
  }
  for (std::size_t head = 0; head < roots.size(); ++head) {
    for (int i = 0; i < rk; ++i) {
      auto [m, dd] = roots[head];
      Int p = 0, pc = 0;
      for (int j = 0; j < rk; ++j) p += m[j] * C[j][i];
      for (int k = 0; k < rk; ++k) pc += C[i][k] * dd[k];
      IVec m2 = m;
      m2[i] -= p;
      IVec d2 = dd;
      d2[i] -= pc;
      if (!seen.count(m2)) {
        seen.emplace(m2, static_cast<int>(roots.size()));
        roots.emplace_back(m2, d2);
      }
    }
  }
  check(roots.size() == detail::expected_root_count(family, rk),
        "adjoint datum: root closure has the wrong size");
  for (auto& [m, dd] : roots) {
    bool pos = true;
    for (Int x : m)
      if (x < 0) pos = false;
    if (!pos) continue;
    // coweight coordinates of the coroot: pairings with the simple roots
    IVec cw(rk, 0);
    for (int j = 0; j < rk; ++j)
      for (int k = 0; k < rk; ++k) cw[j] += C[j][k] * dd[k];
    d.pos_roots.push_back(m);
    d.pos_coroots.push_back(cw);
    d.root_factor.push_back(0);
  }
  for (int i = 0; i < rk; ++i) {
    IVec m(rk, 0);
    m[i] = 1;
    for (std::size_t k = 0; k < d.pos_roots.size(); ++k)
      if (d.pos_roots[k] == m) d.simple_idx.push_back(static_cast<int>(k));
    IVec w(rk, 0);
    w[i] = 1;
    d.fundamental_coweights.push_back(w);
  }
  d.finalize();
  return d;
}

inline RootDatum RootDatum::make_product(const std::vector<const RootDatum*>& parts) {
  require(!parts.empty(), "product: empty");
  RootDatum d;
  d.rank = 0;
  for (auto* p : parts) {
    if (!d.label.empty()) d.label += "x";
    d.label += p->label;
  }
  std::vector<int> offset;
  for (auto* p : parts) {
    offset.push_back(d.rank);
    d.rank += p->rank;
  }
  auto embed = [&](const IVec& v, int off) {
    IVec r(d.rank, 0);
    for (std::size_t i = 0; i < v.size(); ++i) r[off + i] = v[i];
    return r;
  };
  int simple_off = 0;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const RootDatum& p = *parts[pi];
    for (const auto& f : p.factors) {
      Factor g = f;
      for (auto& idx : g.simple) idx += simple_off;
      d.factors.push_back(g);
    }
    for (std::size_t i = 0; i < p.pos_roots.size(); ++i) {
      d.pos_roots.push_back(embed(p.pos_roots[i], offset[pi]));
      d.pos_coroots.push_back(embed(p.pos_coroots[i], offset[pi]));
      int base = 0;
      for (std::size_t k = 0; k < pi; ++k) base += static_cast<int>(parts[k]->factors.size());
      d.root_factor.push_back(base + p.root_factor[i]);
    }
    simple_off += p.nsimple();
  }
  // simple indices follow the per-part Bourbaki order
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const RootDatum& p = *parts[pi];
    for (int i = 0; i < p.nsimple(); ++i) {
      IVec r = embed(p.pos_roots[p.simple_idx[i]], offset[pi]);
      for (std::size_t k = 0; k < d.pos_roots.size(); ++k)
        if (d.pos_roots[k] == r) d.simple_idx.push_back(static_cast<int>(k));
    }
    for (const auto& w : p.fundamental_coweights)
      d.fundamental_coweights.push_back(embed(w, offset[pi]));
  }
  d.finalize();
  return d;
}

// ---------------------------------------------------------------------------
// registry

namespace detail {

struct DatumRegistry {
  std::mutex mu;
  std::map<std::string, std::unique_ptr<const RootDatum>> by_label;
};

inline DatumRegistry& datum_registry() {
  static DatumRegistry reg;
  return reg;
}

inline std::string canonical_label(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  // aliases: An means GL(n+1); C2 and B2 are the same rank-2 datum (the
  // coordinates of the SO5 model, where the coweights are the Sp4 weights)
  if (s == "A1") return "GL2";
  if (s == "A2") return "GL3";
  if (s == "A3") return "GL4";
  if (s == "A4") return "GL5";
  if (s == "C2") return "B2";
  if (s == "PGL2") return "A1AD";
  return s;
}

}  // namespace detail

const RootDatum& root_datum(const std::string& raw);

namespace detail {

inline RootDatum build_datum(const std::string& l) {
  if (l.find('X') != std::string::npos) {
    std::vector<const RootDatum*> parts;
    std::size_t pos = 0;
    while (pos <= l.size()) {
      auto nx = l.find('X', pos);
      parts.push_back(&root_datum(l.substr(pos, nx == std::string::npos ? nx : nx - pos)));
      if (nx == std::string::npos) break;
      pos = nx + 1;
    }
    return RootDatum::make_product(parts);
  }
  if (l.rfind("GL", 0) == 0) return RootDatum::make_gl(std::stoi(l.substr(2)));
  if (l.size() >= 3 && l.substr(l.size() - 2) == "AD") {
    char fam = l[0];
    int rk = std::stoi(l.substr(1, l.size() - 3));
    return RootDatum::make_adjoint(fam, rk);
  }
  char fam = l[0];
  int rk = std::stoi(l.substr(1));
  if (fam == 'B') return RootDatum::make_so_odd(rk);
  if (fam == 'C' || fam == 'D' || fam == 'E' || fam == 'F' || fam == 'G')
    return RootDatum::make_adjoint(fam, rk);
  throw precondition_error("unknown root datum label: " + l);
}

}  // namespace detail

// Fetches (building and interning on first use) the datum registered under a
// user-facing label: GL2..GL9, A1..A4 aliases, B2..B6 (epsilon model, where
// C2 is an alias of B2), C3..C6, D4..D6, E6..E8, F4, G2 (adjoint models),
// X...AD forms such as A1AD, and products joined with 'x' (e.g. "GL2xB2").
inline const RootDatum& root_datum(const std::string& raw) {
  std::string label = detail::canonical_label(raw);
  auto& reg = detail::datum_registry();
  {
    std::scoped_lock lk(reg.mu);
    auto it = reg.by_label.find(label);
    if (it != reg.by_label.end()) return *it->second;
  }
  RootDatum built = detail::build_datum(label);  // recurses for product parts
  built.label = label;
  std::scoped_lock lk(reg.mu);
  auto it = reg.by_label.find(label);
  if (it == reg.by_label.end())
    it = reg.by_label.emplace(label, std::make_unique<RootDatum>(std::move(built))).first;
  return *it->second;
}

// ---------------------------------------------------------------------------
// elementary predicates and maps on coweights

inline bool is_dominant(const WeightVec& v) {
  const RootDatum& d = *v.datum;
  for (int i = 0; i < d.nsimple(); ++i)
    if (dot(d.pos_roots[d.simple_idx[i]], v.c) < 0) return false;
  return true;
}

// Coefficients of v in the simple coroots, when v lies in their rational span.
inline std::optional<std::vector<BigRat>> coroot_coordinates(const WeightVec& v) {
  const RootDatum& d = *v.datum;
  std::vector<IVec> cols;
  for (int i = 0; i < d.nsimple(); ++i) cols.push_back(d.pos_coroots[d.simple_idx[i]]);
  return detail::solve_columns(cols, v.c);
}

inline bool in_coroot_lattice(const WeightVec& v) {
  auto x = coroot_coordinates(v);
  if (!x) return false;
  for (auto& r : *x)
    if (!detail::is_integer(r)) return false;
  return true;
}

// Dominance order on dominant coweights: a <= b iff b - a is a nonnegative
// integer combination of simple coroots.
inline bool dominance_leq(const WeightVec& a, const WeightVec& b) {
  same_datum(a, b);
  require(is_dominant(a) && is_dominant(b), "dominance_leq: arguments must be dominant");
  auto x = coroot_coordinates(b - a);
  if (!x) return false;
  for (auto& r : *x)
    if (!detail::is_integer(r) || r < 0) return false;
  return true;
}

inline WeightVec dominant_representative(WeightVec v) {
  const RootDatum& d = *v.datum;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < d.nsimple(); ++i) {
      Int p = dot(d.pos_roots[d.simple_idx[i]], v.c);
      if (p < 0) {
        v.c = v.c - p * d.pos_coroots[d.simple_idx[i]];
        moved = true;
      }
    }
  }
  return v;
}

// mu* = -w_0 mu, computed as the dominant representative of -mu.
inline WeightVec dual_coweight(const WeightVec& v) {
  require(is_dominant(v), "dual_coweight: argument must be dominant");
  return dominant_representative(-v);
}

inline bool is_minuscule(const WeightVec& v) {
  require(is_dominant(v), "is_minuscule: argument must be dominant");
  for (const auto& r : v.datum->pos_roots) {
    Int p = dot(r, v.c);
    if (p < -1 || p > 1) return false;
  }
  return true;
}

// <2rho, v>, and the halved pairing with the evenness assertion that keeps
// all published exponents integral.
inline Int two_rho_pairing(const WeightVec& v) { return dot(v.datum->two_rho, v.c); }

inline Int rho_pairing(const WeightVec& v) {
  Int p = two_rho_pairing(v);
  check(p % 2 == 0, "rho_pairing: <2rho, v> is odd; v is not in the expected coset");
  return p / 2;
}

// Image of v in the adjoint quotient of each simple factor, written in that
// factor's fundamental-coweight basis (equivalently: the Dynkin labels).
inline std::vector<WeightVec> project_to_adjoint(const WeightVec& v) {
  const RootDatum& d = *v.datum;
  std::vector<WeightVec> out;
  for (const auto& f : d.factors) {
    const RootDatum& h = root_datum(std::string(1, f.family) + std::to_string(f.rank) + "ad");
    IVec c(f.rank);
    for (int j = 0; j < f.rank; ++j) c[j] = dot(d.pos_roots[d.simple_idx[f.simple[j]]], v.c);
    out.push_back(h.weight(std::move(c)));
  }
  return out;
}

// Allowed fundamental coweight test (adjoint simple H, Bourbaki index i,
// 1-based): self-dual, and of order exactly two in X_*(T_H)/Q^vee(H).
inline bool is_allowed_fundamental(const RootDatum& H, int i) {
  require(H.is_simple_adjoint(), "is_allowed_fundamental: H must be simple adjoint");
  require(i >= 1 && i <= H.nsimple(), "is_allowed_fundamental: index out of range");
  WeightVec w = H.fundamental_coweight(i - 1);
  if (dual_coweight(w) != w) return false;
  auto once = coroot_coordinates(w);
  check(once.has_value(), "adjoint datum: coweight outside coroot span");
  bool order1 = true, order2 = true;
  for (auto& r : *once) {
    if (!detail::is_integer(r)) order1 = false;
    if (!detail::is_integer(r * 2)) order2 = false;
  }
  return !order1 && order2;
}

// Certified decomposition of a dominant coweight as a nonnegative sum of
// dominant minuscule coweights (plus central ones), or nullopt.
inline std::optional<std::vector<std::pair<WeightVec, Int>>> sum_of_minuscules_decomposition(
    const WeightVec& v) {
  const RootDatum& d = *v.datum;
  require(is_dominant(v), "sum_of_minuscules_decomposition: argument must be dominant");
  std::vector<std::pair<WeightVec, Int>> out;
  if (is_zero(v.c)) return out;
  if (is_minuscule(v)) {
    out.emplace_back(v, 1);
    return out;
  }
  WeightVec residual = v;
  for (int i = 0; i < d.nsimple(); ++i) {
    Int coeff = dot(d.pos_roots[d.simple_idx[i]], v.c);
    if (coeff == 0) continue;
    WeightVec lift = d.fundamental_coweight(i);
    if (!is_minuscule(lift)) return std::nullopt;  // weight on a non-minuscule node
    out.emplace_back(lift, coeff);
    residual = residual - coeff * lift;
  }
  if (!is_zero(residual.c)) {
    // residual must be an integral central vector
    auto x = detail::solve_columns(d.central_basis, residual.c);
    if (!x) return std::nullopt;
    for (std::size_t j = 0; j < x->size(); ++j) {
      if (!detail::is_integer((*x)[j])) return std::nullopt;
      BigInt n = numerator((*x)[j]);
      if (n == 0) continue;
      Int k = static_cast<Int>(n);
      WeightVec z{&d, d.central_basis[j]};
      out.emplace_back(k > 0 ? z : -z, k > 0 ? k : -k);
    }
  }
  // certification
  IVec sum(d.rank, 0);
  for (auto& [w, m] : out) {
    check(is_dominant(w) && is_minuscule(w), "decomposition: summand not dominant minuscule");
    sum = sum + m * w.c;
  }
  check(sum == v.c, "decomposition: sum mismatch");
  return out;
}

inline bool is_sum_of_minuscules(const WeightVec& v) {
  return sum_of_minuscules_decomposition(v).has_value();
}

// Root-lattice vector with prescribed fundamental-weight coefficients:
// solves x = sum_j m_j alpha_j with <x, alpha_i^vee> = coeffs[i], failing if
// the solution is not integral (i.e. the weight is not in the root lattice).
inline std::optional<RootVec> weight_in_root_lattice(const RootDatum& d, const IVec& coeffs) {
  require(static_cast<int>(coeffs.size()) == d.nsimple(), "weight_in_root_lattice: bad length");
  const int s = d.nsimple();
  std::vector<IVec> cols(s, IVec(s));
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < s; ++i) cols[j][i] = d.bourbaki_cartan[j][i];  // <alpha_j, alpha_i^vee>
  auto m = detail::solve_columns(cols, coeffs);
  if (!m) return std::nullopt;
  IVec x(d.rank, 0);
  for (int j = 0; j < s; ++j) {
    if (!detail::is_integer((*m)[j])) return std::nullopt;
    x = x + static_cast<Int>(BigInt(numerator((*m)[j]))) * d.pos_roots[d.simple_idx[j]];
  }
  return RootVec{&d, x};
}

// Parses "1,0,-2", "w3" (fundamental coweight) or "0" (zero) against a datum.
inline WeightVec parse_weight(const RootDatum& d, const std::string& s) {
  if (s == "0") return d.zero();
  if ((s[0] == 'w' || s[0] == 'W') && s.find(',') == std::string::npos) {
    int i = std::stoi(s.substr(1));
    require(i >= 1 && i <= static_cast<int>(d.fundamental_coweights.size()),
            "parse_weight: fundamental index out of range");
    return d.fundamental_coweight(i - 1);
  }
  IVec c;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto nx = s.find(',', pos);
    c.push_back(std::stoll(s.substr(pos, nx == std::string::npos ? nx : nx - pos)));
    if (nx == std::string::npos) break;
    pos = nx + 1;
  }
  return d.weight(std::move(c));
}

}  // namespace satake
