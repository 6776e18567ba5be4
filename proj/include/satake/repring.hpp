#pragma once

// Representation ring of the dual group: weight systems by the Freudenthal
// recursion, exact tensor decompositions by the iterated Brauer-Klimyk rule,
// Weyl dimensions, PRV witness search, and the simply-connected reduction.
//
// A coweight of G is a weight of the dual group; the roots of the dual group
// are the coroots of G.  Everything below is phrased on the G side with that
// translation applied once and for all.

#include <mutex>
#include <optional>

#include "satake/weyl.hpp"

namespace satake {

struct WeightMultiset {
  const RootDatum* datum = nullptr;
  std::map<IVec, Int> entries;  // weight coordinates -> multiplicity > 0

  Int multiplicity(const IVec& c) const {
    auto it = entries.find(c);
    return it == entries.end() ? 0 : it->second;
  }
  BigInt total_mass() const {
    BigInt m = 0;
    for (const auto& [c, k] : entries) m += k;
    return m;
  }
};

using TensorDecomposition = std::map<IVec, Int>;  // dominant lambda -> dim V^lambda

// Weyl dimension of V_mu for the dual group, evaluated exactly.
inline BigInt weyl_dimension(const WeightVec& mu) {
  require(is_dominant(mu), "weyl_dimension: mu must be dominant");
  const RootDatum& d = *mu.datum;
  BigInt num = 1, den = 1;
  for (std::size_t p = 0; p < d.pos_roots.size(); ++p) {
    Int tr = dot(d.pos_roots[p], d.two_rho_check);
    num *= BigInt(2 * dot(d.pos_roots[p], mu.c) + tr);
    den *= BigInt(tr);
  }
  check(num % den == 0, "Weyl dimension: non-integral result");
  return num / den;
}

namespace detail {

// W-invariant symmetric form on X_*, the sum over positive roots of the
// squared pairing.  Any invariant form works in the Freudenthal identity.
inline Int invariant_form(const RootDatum& d, const IVec& a, const IVec& b) {
  Int s = 0;
  for (const auto& r : d.pos_roots) s += dot(r, a) * dot(r, b);
  return s;
}

// Signed reflection of 2x (doubled coordinates) to the dominant chamber.
// Returns nullopt when the vector hits a wall (zero pairing with a simple
// root): the Brauer-Klimyk term then cancels.
inline std::optional<std::pair<IVec, int>> dominant_with_sign(const RootDatum& d, IVec v) {
  int sign = 1;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < d.nsimple(); ++i) {
      Int p = dot(d.pos_roots[d.simple_idx[i]], v);
      if (p == 0) return std::nullopt;
      if (p < 0) {
        v = v - p * d.pos_coroots[d.simple_idx[i]];
        sign = -sign;
        moved = true;
      }
    }
  }
  return std::make_pair(std::move(v), sign);
}

}  // namespace detail

// All weights of V_lambda: the lattice points of lambda - Q^vee_{>=0} whose
// dominant representative is <= lambda.  Enumerated over the coefficient box
// bounded by lambda + lambda^*.
inline std::vector<IVec> weight_set(const WeightVec& lambda, std::size_t budget = 2000000) {
  require(is_dominant(lambda), "weight_set: lambda must be dominant");
  const RootDatum& d = *lambda.datum;
  const int s = d.nsimple();
  WeightVec span = lambda + dual_coweight(lambda);
  auto cc = coroot_coordinates(span);
  check(cc.has_value(), "weight_set: lambda + lambda* outside coroot span");
  IVec bound(s);
  for (int i = 0; i < s; ++i) {
    check(detail::is_integer((*cc)[i]) && (*cc)[i] >= 0, "weight_set: bad box bound");
    bound[i] = static_cast<Int>(BigInt(numerator((*cc)[i])));
  }
  BigInt boxsize = 1;
  for (int i = 0; i < s; ++i) boxsize *= BigInt(bound[i] + 1);
  if (boxsize > BigInt(static_cast<unsigned long long>(budget)))
    throw capability_error("weight_set: representation too large for the desk-scale budget");
  std::vector<IVec> out;
  IVec c(s, 0);
  while (true) {
    IVec nu = lambda.c;
    for (int i = 0; i < s; ++i)
      if (c[i]) nu = nu - c[i] * d.pos_coroots[d.simple_idx[i]];
    WeightVec nv{&d, nu};
    if (dominance_leq(dominant_representative(nv), lambda)) out.push_back(std::move(nu));
    int i = 0;
    while (i < s && c[i] == bound[i]) c[i++] = 0;
    if (i == s) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Full weight multiset of V_lambda: Freudenthal on the dominant chamber,
// extended over each Weyl orbit.  Cached per (datum, lambda).
inline const WeightMultiset& weight_system(const WeightVec& lambda) {
  require(is_dominant(lambda), "weight_system: lambda must be dominant");
  const RootDatum& d = *lambda.datum;
  static std::mutex mtx;
  static std::map<std::pair<const RootDatum*, IVec>, WeightMultiset> cache;
  {
    std::scoped_lock lk(mtx);
    auto it = cache.find({&d, lambda.c});
    if (it != cache.end()) return it->second;
  }

  std::vector<IVec> omega = weight_set(lambda);
  // dominant members, ordered by the height of lambda - mu
  std::vector<std::pair<Int, IVec>> doms;
  for (const auto& nu : omega) {
    WeightVec v{&d, nu};
    if (!is_dominant(v)) continue;
    auto cc = coroot_coordinates(lambda - v);
    Int h = 0;
    for (auto& r : *cc) h += static_cast<Int>(BigInt(numerator(r)));
    doms.push_back({h, nu});
  }
  std::sort(doms.begin(), doms.end());

  std::unordered_set<IVec, ivec_hash> member(omega.begin(), omega.end());
  std::map<IVec, Int> dom_mult;
  for (const auto& [h, mu] : doms) {
    if (h == 0) {
      dom_mult[mu] = 1;
      continue;
    }
    // denominator  (lambda - mu, lambda + mu + 2 rho-hat)
    Int denom = detail::invariant_form(d, lambda.c - mu, lambda.c + mu + d.two_rho_check);
    check(denom > 0, "Freudenthal: nonpositive denominator");
    Int numer = 0;
    for (std::size_t p = 0; p < d.pos_roots.size(); ++p) {
      const IVec& coroot = d.pos_coroots[p];
      IVec cur = mu;
      while (true) {
        cur = cur + coroot;
        if (!member.count(cur)) break;
        IVec cd = dominant_representative(WeightVec{&d, cur}).c;
        auto it = dom_mult.find(cd);
        check(it != dom_mult.end(), "Freudenthal: missing higher multiplicity");
        numer += 2 * it->second * detail::invariant_form(d, cur, coroot);
      }
    }
    check(numer % denom == 0, "Freudenthal: non-integral multiplicity");
    dom_mult[mu] = numer / denom;
  }

  WeightMultiset ms;
  ms.datum = &d;
  for (const auto& nu : omega)
    ms.entries[nu] = dom_mult.at(dominant_representative(WeightVec{&d, nu}).c);

  std::scoped_lock lk(mtx);
  return cache.emplace(std::make_pair(&d, lambda.c), std::move(ms)).first->second;
}

// Iterated Brauer-Klimyk: exact multiplicities dim V^lambda_{mu_bullet}.
inline TensorDecomposition tensor_decompose(const RootDatum& d, const std::vector<WeightVec>& mus) {
  require(!mus.empty(), "tensor_decompose: empty tuple");
  for (const auto& m : mus) {
    require(m.datum == &d, "tensor_decompose: datum mismatch");
    require(is_dominant(m), "tensor_decompose: every mu must be dominant");
  }
  TensorDecomposition acc;
  acc[mus[0].c] = 1;
  for (std::size_t k = 1; k < mus.size(); ++k) {
    const WeightMultiset& omega = weight_system(mus[k]);
    TensorDecomposition next;
    for (const auto& [kappa, mult] : acc) {
      for (const auto& [nu, wmult] : omega.entries) {
        // rho-hat shifted reflection, in doubled coordinates
        IVec t = 2 * (kappa + nu) + d.two_rho_check;
        auto ref = detail::dominant_with_sign(d, std::move(t));
        if (!ref) continue;  // on-wall term, cancels
        IVec res(d.rank);
        for (int i = 0; i < d.rank; ++i) {
          Int x = ref->first[i] - d.two_rho_check[i];
          check(x % 2 == 0, "Brauer-Klimyk: odd shifted weight");
          res[i] = x / 2;
        }
        next[res] += ref->second * mult * wmult;
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = (it->second == 0) ? next.erase(it) : std::next(it);
    acc = std::move(next);
  }
  for (const auto& [lam, m] : acc)
    check(m > 0, "tensor_decompose: negative multiplicity survived the fold");
  return acc;
}

inline Int tensor_multiplicity(const RootDatum& d, const std::vector<WeightVec>& mus,
                               const WeightVec& lambda) {
  TensorDecomposition t = tensor_decompose(d, mus);
  auto it = t.find(lambda.c);
  return it == t.end() ? 0 : it->second;
}

inline bool rep_nonvanishing(const RootDatum& d, const std::vector<WeightVec>& mus,
                             const WeightVec& lambda) {
  WeightVec total = mus[0];
  for (std::size_t k = 1; k < mus.size(); ++k) total = total + mus[k];
  if (!in_coroot_lattice(total - lambda)) return false;
  return tensor_multiplicity(d, mus, lambda) > 0;
}

// Quasi-minuscule: the weight set of V_v is exactly the orbit of v plus zero.
inline bool is_quasi_minuscule(const WeightVec& v) {
  require(is_dominant(v), "is_quasi_minuscule: argument must be dominant");
  require(!is_zero(v.c), "is_quasi_minuscule: argument must be nonzero");
  const WeightMultiset& ws = weight_system(v);
  std::vector<IVec> support;
  for (const auto& [c, m] : ws.entries) support.push_back(c);
  std::vector<IVec> expected;
  for (const auto& o : orbit(v)) expected.push_back(o.c);
  expected.push_back(IVec(v.datum->rank, 0));
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  return support == expected;
}

// All PRV witness tuples: (nu_1, ..., nu_r) with nu_i in the orbit of mu_i
// and sum nu_i = lambda.  Orbit elements stand in for cosets w_i W_{mu_i}.
inline std::vector<std::vector<WeightVec>> prv_witness_search(const std::vector<WeightVec>& mus,
                                                              const WeightVec& lambda,
                                                              std::size_t budget = 4000000) {
  require(is_dominant(lambda), "prv_witness_search: lambda must be dominant");
  std::vector<std::vector<WeightVec>> orbits;
  BigInt total = 1;
  for (const auto& m : mus) {
    orbits.push_back(orbit(m));
    total *= BigInt(static_cast<unsigned long long>(orbits.back().size()));
  }
  if (total > BigInt(static_cast<unsigned long long>(budget)))
    throw capability_error("prv_witness_search: orbit product exceeds budget");
  std::vector<std::vector<WeightVec>> found;
  std::vector<std::size_t> pick(mus.size(), 0);
  while (true) {
    IVec sum(lambda.datum->rank, 0);
    for (std::size_t i = 0; i < mus.size(); ++i) sum = sum + orbits[i][pick[i]].c;
    if (sum == lambda.c) {
      std::vector<WeightVec> tup;
      for (std::size_t i = 0; i < mus.size(); ++i) tup.push_back(orbits[i][pick[i]]);
      found.push_back(std::move(tup));
    }
    std::size_t i = 0;
    while (i < mus.size() && pick[i] + 1 == orbits[i].size()) pick[i++] = 0;
    if (i == mus.size()) break;
    ++pick[i];
  }
  return found;
}

// Instance transported to the simply-connected cover of the dual group,
// i.e. the per-factor adjoint projections on the G side.
struct ScInstance {
  std::vector<const RootDatum*> factor_data;
  std::vector<std::vector<WeightVec>> mus;  // [factor][i]
  std::vector<WeightVec> lambda;            // [factor]
};

inline ScInstance rep_to_simply_connected(const std::vector<WeightVec>& mus,
                                          const WeightVec& lambda) {
  ScInstance out;
  auto lam = project_to_adjoint(lambda);
  out.lambda = lam;
  for (const auto& l : lam) out.factor_data.push_back(l.datum);
  out.mus.resize(lam.size());
  for (const auto& m : mus) {
    auto pm = project_to_adjoint(m);
    for (std::size_t f = 0; f < pm.size(); ++f) out.mus[f].push_back(pm[f]);
  }
  return out;
}

inline bool rep_nonvanishing_sc(const ScInstance& inst) {
  for (std::size_t f = 0; f < inst.factor_data.size(); ++f)
    if (!rep_nonvanishing(*inst.factor_data[f], inst.mus[f], inst.lambda[f])) return false;
  return true;
}

// Dominant weights nu <= lambda in the same coroot coset (the dominant part
// of the weight set of V_lambda).
inline std::vector<IVec> dominant_weights_below(const WeightVec& lambda) {
  std::vector<IVec> out;
  for (const auto& nu : weight_set(lambda))
    if (is_dominant(WeightVec{lambda.datum, nu})) out.push_back(nu);
  return out;
}

}  // namespace satake
