#pragma once

// Iwahori-Hecke algebra in the T-basis over the extended affine Weyl group,
// and the spherical structure constants c^lambda_{mu_bullet}(q) extracted
// from it.
//
// Conventions: T_s T_w = T_{sw} when the length goes up, and
// T_s T_w = q T_{sw} + (q-1) T_w when it goes down; T_x T_y = T_{xy} whenever
// lengths add (in particular for length-zero x).  The spherical normalization
// divides the r-fold Iwahori product of the K-double-coset sums by
// P_W(q)^{r-1} and reads the coefficient at T_{t_lambda}; the division must
// be exact, and validating this normalization against the independent lattice
// oracle is the first acceptance gate of the project.

#include <map>
#include <mutex>

#include "satake/qpoly.hpp"
#include "satake/repring.hpp"
#include "satake/weyl.hpp"

namespace satake {

class HeckeElement {
 public:
  explicit HeckeElement(const RootDatum* d = nullptr) : datum_(d) {}

  const RootDatum* datum() const { return datum_; }
  const std::unordered_map<AffineElement, QPoly, affine_hash>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  void add_term(const AffineElement& x, const QPoly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(x, p);
    if (!fresh) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  QPoly coeff(const AffineElement& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? QPoly() : it->second;
  }

  HeckeElement& operator+=(const HeckeElement& o) {
    for (const auto& [x, p] : o.terms_) add_term(x, p);
    return *this;
  }

  HeckeElement scaled(const QPoly& f) const {
    HeckeElement r(datum_);
    for (const auto& [x, p] : terms_) r.add_term(x, p * f);
    return r;
  }

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [x, p] : a.terms_) {
      auto it = b.terms_.find(x);
      if (it == b.terms_.end() || it->second != p) return false;
    }
    return true;
  }

 private:
  const RootDatum* datum_;
  std::unordered_map<AffineElement, QPoly, affine_hash> terms_;
};

// T_s * h for an affine simple reflection s.
inline HeckeElement left_mul_simple(const AffineElement& s, const HeckeElement& h) {
  HeckeElement out(h.datum());
  for (const auto& [y, c] : h.terms()) {
    AffineElement sy = s * y;
    if (affine_length(sy) > affine_length(y)) {
      out.add_term(sy, c);
    } else {
      out.add_term(sy, c.shifted(1));            // q T_{sy}
      out.add_term(y, c.shifted(1) - c);         // (q-1) T_y
    }
  }
  return out;
}

// T_x * h for arbitrary x, by peeling affine simple reflections off the left.
inline HeckeElement left_mul_element(const AffineElement& x, const HeckeElement& h) {
  Int lx = affine_length(x);
  if (lx == 0) {
    // length-zero elements multiply without deformation: T_x T_y = T_{xy}
    HeckeElement out(h.datum());
    for (const auto& [y, c] : h.terms()) out.add_term(x * y, c);
    return out;
  }
  const RootDatum& d = *x.tau.datum;
  for (const auto& s : affine_simple_generators(d)) {
    AffineElement sx = s * x;
    if (affine_length(sx) < lx) return left_mul_simple(s, left_mul_element(sx, h));
  }
  throw inconsistency_error("left_mul_element: positive-length element with no descent");
}

inline HeckeElement t_basis_element(const AffineElement& x) {
  HeckeElement h(x.tau.datum);
  h.add_term(x, QPoly(1));
  return h;
}

// T_x * T_y expanded in the T-basis.
inline HeckeElement t_basis_product(const AffineElement& x, const AffineElement& y) {
  check(x.tau.datum == y.tau.datum, "t_basis_product: different data");
  return left_mul_element(x, t_basis_element(y));
}

inline HeckeElement hecke_mul(const HeckeElement& a, const HeckeElement& b) {
  HeckeElement out(a.datum());
  for (const auto& [x, c] : a.terms()) {
    HeckeElement part = left_mul_element(x, b);
    for (const auto& [y, p] : part.terms()) out.add_term(y, p * c);
  }
  return out;
}

// Poincare polynomial P_W(q) = sum_w q^{l(w)}.
inline QPoly poincare_polynomial(const RootDatum& d) {
  const WeylGroup& g = WeylGroup::of(d);
  QPoly p;
  for (int w = 0; w < g.size(); ++w) p.add_term(g.length(w), 1);
  return p;
}

// f_mu = 1_{K mu K} = sum of T_x over the double coset W t_mu W.
inline const HeckeElement& spherical_basis_element(const WeightVec& mu) {
  require(is_dominant(mu), "spherical_basis_element: mu must be dominant");
  static std::mutex mtx;
  static std::map<std::pair<const RootDatum*, IVec>, HeckeElement> cache;
  std::scoped_lock lk(mtx);
  auto key = std::make_pair(mu.datum, mu.c);
  auto it = cache.find(key);
  if (it == cache.end()) {
    HeckeElement h(mu.datum);
    for (const auto& x : double_coset_elements(mu)) h.add_term(x, QPoly(1));
    it = cache.emplace(key, std::move(h)).first;
  }
  return it->second;
}

// Structure constants as a map from lambda (dominant coweight coordinates)
// to c^lambda(q); only nonzero constants appear.
using SphericalMap = std::map<IVec, QPoly>;

namespace detail {

// f_nu *_I f_mu = P_W(q) * sum_{eta in W nu} T_{y_eta} f_mu, where y_eta is
// the minimal representative of t_eta W.  This uses T_w f_mu = q^{l(w)} f_mu
// for finite w and the length-additive factorization x = y_eta w; both facts
// are exercised directly by the unit tests against brute-force products.
// After the spherical renormalization the P_W factor cancels, so the pairwise
// constants are read off of S := sum_eta T_{y_eta} f_mu.
inline SphericalMap pairwise_spherical_product(const WeightVec& nu, const WeightVec& mu) {
  const HeckeElement& B = spherical_basis_element(mu);
  HeckeElement S(nu.datum);
  for (const auto& eta : orbit(nu)) {
    AffineElement y = affine_min_coset_rep(affine_translation(eta));
    S += left_mul_element(y, B);
  }
  const WeylGroup& g = WeylGroup::of(*nu.datum);
  SphericalMap out;
  for (const auto& [x, c] : S.terms())
    if (x.w.idx == 0 && is_dominant(x.tau)) out.emplace(x.tau.c, c);
  (void)g;
  return out;
}

inline const SphericalMap& pairwise_cached(const WeightVec& nu, const WeightVec& mu) {
  static std::mutex mtx;
  static std::map<std::tuple<const RootDatum*, IVec, IVec>, SphericalMap> cache;
  {
    std::scoped_lock lk(mtx);
    auto it = cache.find({nu.datum, nu.c, mu.c});
    if (it != cache.end()) return it->second;
  }
  SphericalMap m = pairwise_spherical_product(nu, mu);
  std::scoped_lock lk(mtx);
  return cache.emplace(std::make_tuple(nu.datum, nu.c, mu.c), std::move(m)).first->second;
}

}  // namespace detail

// c^lambda_{mu_bullet}(q) for all lambda, by a left fold of exact pairwise
// spherical products (associativity of the fold is property-tested, not
// assumed).
inline SphericalMap structure_constants(const RootDatum& d, const std::vector<WeightVec>& mus) {
  require(!mus.empty(), "structure_constants: need at least one mu");
  if (!d.enumeration_supported)
    throw capability_error("structure_constants: datum " + d.label + " is data-only");
  for (const auto& m : mus) {
    require(m.datum == &d, "structure_constants: datum mismatch");
    require(is_dominant(m), "structure_constants: every mu must be dominant");
  }
  SphericalMap acc;
  acc.emplace(mus[0].c, QPoly(1));
  for (std::size_t k = 1; k < mus.size(); ++k) {
    SphericalMap next;
    for (const auto& [nu, cnu] : acc) {
      const SphericalMap& pw = detail::pairwise_cached(d.weight(nu), mus[k]);
      for (const auto& [lam, c] : pw) {
        auto [it, fresh] = next.try_emplace(lam, cnu * c);
        if (!fresh) it->second += cnu * c;
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    acc = std::move(next);
  }
  // support bound: every lambda with a nonzero constant satisfies
  // lambda <= |mu_bullet| in dominance order
  WeightVec total = mus[0];
  for (std::size_t k = 1; k < mus.size(); ++k) total = total + mus[k];
  for (const auto& [lam, c] : acc)
    check(dominance_leq(d.weight(lam), total), "structure constant outside the Cartan support");
  return acc;
}

// Reference implementation straight from the definition: the r-fold Iwahori
// product, divided by P_W(q)^{r-1} with an exactness check.  Quadratic in the
// supports; used by tests and small instances to validate the folded path.
inline SphericalMap structure_constants_iwahori(const RootDatum& d,
                                                const std::vector<WeightVec>& mus) {
  require(!mus.empty(), "structure_constants: need at least one mu");
  HeckeElement h = spherical_basis_element(mus[0]);
  for (std::size_t k = 1; k < mus.size(); ++k) h = hecke_mul(h, spherical_basis_element(mus[k]));
  QPoly pw = poincare_polynomial(d), denom = QPoly(1);
  for (std::size_t k = 1; k < mus.size(); ++k) denom *= pw;
  // A product of K-bi-invariant functions is K-bi-invariant: coefficients
  // must be constant on each double coset W t_lambda W.
  SphericalMap out;
  for (const auto& [x, c] : h.terms()) {
    IVec lam = dominant_representative(x.tau).c;
    auto probe = h.coeff(AffineElement{d.weight(lam), WeylGroup::of(d).identity()});
    check(probe == c, "Iwahori product is not K-bi-invariant: normalization bug");
    out.emplace(lam, probe);
  }
  for (auto& [lam, c] : out) c = c.divexact(denom);
  return out;
}

inline bool hecke_nonvanishing(const RootDatum& d, const std::vector<WeightVec>& mus,
                               const WeightVec& lambda) {
  WeightVec total = mus[0];
  for (std::size_t k = 1; k < mus.size(); ++k) total = total + mus[k];
  if (!in_coroot_lattice(total - lambda)) return false;
  SphericalMap c = structure_constants(d, mus);
  auto it = c.find(lambda.c);
  return it != c.end() && !it->second.is_zero();
}

struct LeadingTermReport {
  int degree = -1;          // degree of c^lambda (sentinel -1 for zero)
  Int bound = 0;            // <rho, |mu| - lambda>
  BigInt coeff_at_bound;    // coefficient of q^bound in c^lambda
  BigInt tensor_multiplicity;
  bool pass = false;
};

// Checks deg c^lambda <= <rho,|mu|-lambda> with coefficient at the bound
// equal to dim V^lambda_{mu_bullet} (including the zero cases).
inline LeadingTermReport leading_term_check(const RootDatum& d, const std::vector<WeightVec>& mus,
                                            const WeightVec& lambda) {
  LeadingTermReport r;
  WeightVec total = mus[0];
  for (std::size_t k = 1; k < mus.size(); ++k) total = total + mus[k];
  require(in_coroot_lattice(total - lambda), "leading_term_check: lambda not in the mu coset");
  r.bound = rho_pairing(total - lambda);
  SphericalMap c = structure_constants(d, mus);
  QPoly poly;
  if (auto it = c.find(lambda.c); it != c.end()) poly = it->second;
  r.degree = poly.degree();
  r.coeff_at_bound = poly.coeff(static_cast<int>(r.bound));
  r.tensor_multiplicity = tensor_multiplicity(d, mus, lambda);
  r.pass = (r.degree <= r.bound) && (r.coeff_at_bound == r.tensor_multiplicity);
  return r;
}

}  // namespace satake
