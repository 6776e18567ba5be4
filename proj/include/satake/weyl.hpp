#pragma once

// Finite Weyl groups (materialized as matrix actions, with reduced words and
// Bruhat order) and the extended affine Weyl group in translation/finite
// normal form, with the Iwahori-Matsumoto length.

#include <array>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "satake/root_datum.hpp"

namespace satake {

class WeylGroup;

struct WeylElement {
  const WeylGroup* group = nullptr;
  int idx = 0;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.group == b.group && a.idx == b.idx;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
};

class WeylGroup {
 public:
  const RootDatum* datum = nullptr;

  // Interned per datum; throws capability_error for data whose finite Weyl
  // group is outside the enumeration budget.
  static const WeylGroup& of(const RootDatum& d) {
    if (!d.enumeration_supported)
      throw capability_error("Weyl group enumeration not supported for datum " + d.label +
                             " (|W| = " + std::to_string(d.weyl_order) + ")");
    static std::mutex mu;
    static std::map<const RootDatum*, std::unique_ptr<WeylGroup>> cache;
    std::scoped_lock lk(mu);
    auto it = cache.find(&d);
    if (it == cache.end()) it = cache.emplace(&d, std::unique_ptr<WeylGroup>(new WeylGroup(d))).first;
    return *it->second;
  }

  int size() const { return static_cast<int>(mats_.size()); }
  int nsimple() const { return datum->nsimple(); }

  WeylElement identity() const { return {this, 0}; }
  WeylElement element(int idx) const { return {this, idx}; }
  WeylElement simple_reflection(int i) const { return {this, simple_[i]}; }

  int length(int w) const { return length_[w]; }
  const std::vector<int>& word(int w) const { return word_[w]; }
  int inverse(int w) const { return inverse_[w]; }

  int right_mult(int w, int s) const { return rmult_[w][s]; }
  // s w = ((w^{-1}) s)^{-1}
  int left_mult(int s, int w) const { return inverse_[rmult_[inverse_[w]][s]]; }

  int mult(int a, int b) const {
    int w = a;
    for (int s : word_[b]) w = rmult_[w][s];
    return w;
  }

  IVec apply(int w, const IVec& v) const {
    const int n = datum->rank;
    IVec r(n, 0);
    const Int* m = mats_[w].data();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += m[i * n + j] * v[j];
    return r;
  }
  WeightVec apply(WeylElement w, const WeightVec& v) const { return {datum, apply(w.idx, v.c)}; }

  // Root-side coordinates of w^{-1}(x): row vector x times the matrix of w.
  IVec apply_inverse_dual(int w, const IVec& x) const {
    const int n = datum->rank;
    IVec r(n, 0);
    const Int* m = mats_[w].data();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) r[j] += x[i] * m[i * n + j];
    return r;
  }

  // Is w^{-1}(alpha) a negative root, for the p-th positive root alpha?
  bool sends_positive_to_negative(int w, int p) const {
    IVec x = apply_inverse_dual(w, datum->pos_roots[p]);
    auto loc = datum->root_lookup(x);
    check(loc.has_value(), "Weyl action did not permute the roots");
    return loc->second < 0;
  }

  // Element index of the reflection in the p-th positive root.
  int reflection(int p) const { return refl_[p]; }

  std::optional<int> lookup(const IVec& mat) const {
    auto it = index_.find(mat);
    return it == index_.end() ? std::nullopt : std::optional<int>(it->second);
  }

  int from_word(const std::vector<int>& ws) const {
    int w = 0;
    for (int s : ws) w = rmult_[w][s];
    return w;
  }

 private:
  std::vector<IVec> mats_;  // flattened rank x rank action matrices
  std::vector<int> length_;
  std::vector<std::vector<int>> word_;
  std::vector<std::vector<int>> rmult_;
  std::vector<int> inverse_;
  std::vector<int> simple_;
  std::vector<int> refl_;
  std::unordered_map<IVec, int, ivec_hash> index_;

  explicit WeylGroup(const RootDatum& d) {
    datum = &d;
    const int n = d.rank, s = d.nsimple();
    auto matmul = [n](const IVec& a, const IVec& b) {
      IVec r(n * n, 0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          Int aik = a[i * n + k];
          if (!aik) continue;
          for (int j = 0; j < n; ++j) r[i * n + j] += aik * b[k * n + j];
        }
      return r;
    };
    IVec id(n * n, 0);
    for (int i = 0; i < n; ++i) id[i * n + i] = 1;
    std::vector<IVec> gen(s);
    for (int i = 0; i < s; ++i) {
      // s_i(v) = v - <alpha_i, v> alpha_i^vee
      IVec m = id;
      const IVec& alpha = d.pos_roots[d.simple_idx[i]];
      const IVec& cor = d.pos_coroots[d.simple_idx[i]];
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m[r * n + c] -= cor[r] * alpha[c];
      gen[i] = m;
    }
    mats_.push_back(id);
    length_.push_back(0);
    word_.push_back({});
    index_.emplace(id, 0);
    for (std::size_t head = 0; head < mats_.size(); ++head) {
      for (int i = 0; i < s; ++i) {
        IVec m = matmul(mats_[head], gen[i]);
        if (!index_.count(m)) {
          index_.emplace(m, static_cast<int>(mats_.size()));
          mats_.push_back(m);
          length_.push_back(length_[head] + 1);
          auto w = word_[head];
          w.push_back(i);
          word_.push_back(std::move(w));
        }
      }
    }
    check(static_cast<Int>(mats_.size()) == d.weyl_order,
          "materialized Weyl group has unexpected order");
    rmult_.assign(mats_.size(), std::vector<int>(s, -1));
    for (std::size_t w = 0; w < mats_.size(); ++w)
      for (int i = 0; i < s; ++i) rmult_[w][i] = index_.at(matmul(mats_[w], gen[i]));
    inverse_.assign(mats_.size(), -1);
    for (std::size_t w = 0; w < mats_.size(); ++w) {
      int v = 0;
      const auto& ws = word_[w];
      for (auto it = ws.rbegin(); it != ws.rend(); ++it) v = rmult_[v][*it];
      inverse_[w] = v;
    }
    simple_.resize(s);
    for (int i = 0; i < s; ++i) simple_[i] = index_.at(gen[i]);
    refl_.resize(d.pos_roots.size());
    for (std::size_t p = 0; p < d.pos_roots.size(); ++p) {
      IVec m = id;
      const IVec& alpha = d.pos_roots[p];
      const IVec& cor = d.pos_coroots[p];
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m[r * n + c] -= cor[r] * alpha[c];
      refl_[p] = index_.at(m);
    }
  }
};

inline int length(const WeylElement& w) { return w.group->length(w.idx); }

inline WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  check(a.group == b.group, "Weyl elements from different groups");
  return {a.group, a.group->mult(a.idx, b.idx)};
}

// ---------------------------------------------------------------------------
// orbits (no group enumeration needed; bounded breadth-first closure)

inline std::vector<WeightVec> orbit(const WeightVec& v, std::size_t budget = 200000) {
  const RootDatum& d = *v.datum;
  std::unordered_set<IVec, ivec_hash> seen;
  std::deque<IVec> queue;
  seen.insert(v.c);
  queue.push_back(v.c);
  while (!queue.empty()) {
    IVec cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < d.nsimple(); ++i) {
      Int p = dot(d.pos_roots[d.simple_idx[i]], cur);
      if (p == 0) continue;
      IVec nxt = cur - p * d.pos_coroots[d.simple_idx[i]];
      if (seen.insert(nxt).second) {
        if (seen.size() > budget)
          throw capability_error("orbit exceeds enumeration budget for datum " + d.label);
        queue.push_back(nxt);
      }
    }
  }
  std::vector<IVec> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<WeightVec> out;
  out.reserve(sorted.size());
  for (auto& c : sorted) out.push_back({&d, std::move(c)});
  return out;
}

// Orbit together with one Weyl word per element (word applied to v gives the
// element); used where an explicit coset representative is needed.
inline std::vector<std::pair<WeightVec, std::vector<int>>> orbit_with_words(
    const WeightVec& v, std::size_t budget = 200000) {
  const RootDatum& d = *v.datum;
  std::unordered_map<IVec, std::vector<int>, ivec_hash> seen;
  std::deque<IVec> queue;
  seen.emplace(v.c, std::vector<int>{});
  queue.push_back(v.c);
  while (!queue.empty()) {
    IVec cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < d.nsimple(); ++i) {
      Int p = dot(d.pos_roots[d.simple_idx[i]], cur);
      if (p == 0) continue;
      IVec nxt = cur - p * d.pos_coroots[d.simple_idx[i]];
      if (!seen.count(nxt)) {
        if (seen.size() >= budget) throw capability_error("orbit exceeds enumeration budget");
        auto w = seen.at(cur);
        w.insert(w.begin(), i);  // nxt = s_i . cur
        seen.emplace(nxt, std::move(w));
        queue.push_back(nxt);
      }
    }
  }
  std::vector<std::pair<WeightVec, std::vector<int>>> out;
  for (auto& [c, w] : seen) out.push_back({{&d, c}, w});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.c < b.first.c; });
  return out;
}

inline Int stabilizer_order(const WeightVec& v) {
  return v.datum->weyl_order / static_cast<Int>(orbit(v).size());
}

// ---------------------------------------------------------------------------
// Bruhat order (subword criterion via descents)

inline bool bruhat_leq(const WeylElement& u0, const WeylElement& w0) {
  check(u0.group == w0.group, "bruhat_leq: different groups");
  const WeylGroup& g = *u0.group;
  int u = u0.idx, w = w0.idx;
  while (true) {
    if (u == 0) return true;
    if (g.length(u) > g.length(w)) return false;
    // any right descent s of w
    int s = g.word(w).back();
    int ws = g.right_mult(w, s);
    int us = g.right_mult(u, s);
    if (g.length(us) < g.length(u)) u = us;
    w = ws;
  }
}

// Stabilizer of a dominant coweight is the standard parabolic on the walls.
inline std::vector<int> wall_simples(const WeightVec& mu) {
  require(is_dominant(mu), "wall_simples: argument must be dominant");
  std::vector<int> out;
  const RootDatum& d = *mu.datum;
  for (int i = 0; i < d.nsimple(); ++i)
    if (dot(d.pos_roots[d.simple_idx[i]], mu.c) == 0) out.push_back(i);
  return out;
}

// Elements of the standard parabolic subgroup stabilizing a dominant coweight.
inline std::vector<int> parabolic_subgroup_elements(const WeylGroup& g, const WeightVec& mu) {
  auto walls = wall_simples(mu);
  std::vector<int> elems = {0};
  std::unordered_set<int> seen = {0};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (int s : walls) {
      int x = g.right_mult(elems[head], s);
      if (seen.insert(x).second) elems.push_back(x);
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// The unique minimal-length element of W_lambda w W_mu (lambda, mu dominant).
// Computed by scanning the double coset; uniqueness of the minimum is checked
// rather than assumed.
inline WeylElement minimal_double_coset_rep(WeylElement w, const WeightVec& lambda,
                                            const WeightVec& mu) {
  const WeylGroup& g = *w.group;
  auto left = parabolic_subgroup_elements(g, lambda);
  auto right = parabolic_subgroup_elements(g, mu);
  int best = -1;
  bool unique = true;
  for (int u : left) {
    int uw = g.mult(u, w.idx);
    for (int v : right) {
      int x = g.mult(uw, v);
      if (best < 0 || g.length(x) < g.length(best)) {
        best = x;
        unique = true;
      } else if (x != best && g.length(x) == g.length(best)) {
        unique = false;
      }
    }
  }
  check(unique, "double coset minimum is not unique");
  return {&g, best};
}

// Minimal-length representative of the coset w W_mu.
inline WeylElement minimal_coset_rep(WeylElement w, const WeightVec& mu) {
  const WeylGroup& g = *w.group;
  auto right = wall_simples(mu);
  bool moved = true;
  int cur = w.idx;
  while (moved) {
    moved = false;
    for (int s : right) {
      int ws = g.right_mult(cur, s);
      if (g.length(ws) < g.length(cur)) {
        cur = ws;
        moved = true;
      }
    }
  }
  return {&g, cur};
}

// ---------------------------------------------------------------------------
// extended affine Weyl group, in t_tau * w normal form

struct AffineElement {
  WeightVec tau;
  WeylElement w;

  friend bool operator==(const AffineElement& a, const AffineElement& b) {
    return a.tau == b.tau && a.w == b.w;
  }
  friend bool operator!=(const AffineElement& a, const AffineElement& b) { return !(a == b); }
  friend bool operator<(const AffineElement& a, const AffineElement& b) {
    if (a.tau.c != b.tau.c) return a.tau.c < b.tau.c;
    return a.w.idx < b.w.idx;
  }
};

struct affine_hash {
  std::size_t operator()(const AffineElement& x) const {
    return hash_combine(ivec_hash{}(x.tau.c), static_cast<std::size_t>(x.w.idx));
  }
};

inline AffineElement affine_translation(const WeightVec& tau) {
  const WeylGroup& g = WeylGroup::of(*tau.datum);
  return {tau, g.identity()};
}

inline AffineElement affine_from_finite(const WeylElement& w) {
  return {w.group->datum->zero(), w};
}

// (t_a u)(t_b v) = t_{a + u b} (u v)
inline AffineElement operator*(const AffineElement& x, const AffineElement& y) {
  check(x.tau.datum == y.tau.datum, "affine product: different data");
  const WeylGroup& g = *x.w.group;
  WeightVec t = x.tau + g.apply(x.w, y.tau);
  return {t, x.w * y.w};
}

inline AffineElement affine_inverse(const AffineElement& x) {
  const WeylGroup& g = *x.w.group;
  WeylElement wi{&g, g.inverse(x.w.idx)};
  return {-g.apply(wi, x.tau), wi};
}

// Iwahori-Matsumoto length of t_tau w:
//   sum over positive alpha with w^{-1} alpha > 0 of |<alpha, tau>|
// + sum over positive alpha with w^{-1} alpha < 0 of |<alpha, tau> - 1|.
inline Int affine_length(const AffineElement& x) {
  const RootDatum& d = *x.tau.datum;
  const WeylGroup& g = *x.w.group;
  Int len = 0;
  auto iabs = [](Int v) { return v < 0 ? -v : v; };
  for (std::size_t p = 0; p < d.pos_roots.size(); ++p) {
    Int pa = dot(d.pos_roots[p], x.tau.c);
    // contribution |<alpha,tau>| if w^{-1} alpha > 0, else |<alpha,tau> - 1|
    if (g.sends_positive_to_negative(x.w.idx, static_cast<int>(p)))
      len += iabs(pa - 1);
    else
      len += iabs(pa);
  }
  return len;
}

// The affine simple generators: the finite simple reflections together with
// one reflection t_{theta^vee} s_theta per irreducible factor.
inline std::vector<AffineElement> affine_simple_generators(const RootDatum& d) {
  const WeylGroup& g = WeylGroup::of(d);
  std::vector<AffineElement> out;
  for (int i = 0; i < d.nsimple(); ++i) out.push_back(affine_from_finite(g.simple_reflection(i)));
  for (std::size_t f = 0; f < d.factors.size(); ++f) {
    int p = d.highest_root_of_factor(static_cast<int>(f));
    WeightVec theta_vee{&d, d.pos_coroots[p]};
    out.push_back(AffineElement{theta_vee, g.element(g.reflection(p))});
  }
  return out;
}

// All t_nu w with nu in the orbit of mu; this is the Iwahori support of the
// K-double coset of t_mu.
inline std::vector<AffineElement> double_coset_elements(const WeightVec& mu) {
  require(is_dominant(mu), "double_coset_elements: mu must be dominant");
  const WeylGroup& g = WeylGroup::of(*mu.datum);
  std::vector<AffineElement> out;
  for (const auto& nu : orbit(mu))
    for (int w = 0; w < g.size(); ++w) out.push_back({nu, g.element(w)});
  return out;
}

// Minimal representative of x W (right coset by the finite Weyl group).
inline AffineElement affine_min_coset_rep(AffineElement x) {
  const WeylGroup& g = *x.w.group;
  Int len = affine_length(x);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < g.nsimple(); ++i) {
      AffineElement xs = x * affine_from_finite(g.simple_reflection(i));
      Int l = affine_length(xs);
      if (l < len) {
        x = xs;
        len = l;
        moved = true;
      }
    }
  }
  return x;
}

}  // namespace satake
