#include "cobordize/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cobordize/error.hpp"
#include "cobordize/linalg.hpp"

namespace cobordize {

namespace {

std::size_t rank_checked(const std::vector<LatticeVector>& vs, std::size_t n) {
  for (const auto& v : vs)
    if (v.rank() != n)
      throw Error(ErrorCode::rank_mismatch,
                  "generator " + v.to_string() + " is not of rank " + std::to_string(n));
  return rank_of(vs);
}

// Indices of a maximal independent subset, greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<LatticeVector>& vs) {
  std::vector<std::size_t> idx;
  std::vector<LatticeVector> chosen;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    chosen.push_back(vs[i]);
    if (rank_of(chosen) == chosen.size()) idx.push_back(i);
    else chosen.pop_back();
  }
  return idx;
}

}  // namespace

HRep facets_of(const std::vector<LatticeVector>& gens, std::size_t n) {
  HRep h;
  rank_checked(gens, n);
  h.equations = kernel_basis(gens, n);
  auto basis_idx = independent_subset(gens);
  std::size_t d = basis_idx.size();
  if (d == 0) return h;
  std::vector<LatticeVector> basis;
  for (auto i : basis_idx) basis.push_back(gens[i]);

  // Double description on {mu : <sum mu_j basis_j, g> >= 0 for all g}.
  std::size_t k = gens.size();
  std::vector<LatticeVector> rows(k, LatticeVector(d));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d; ++j) rows[i][j] = dot(basis[j], gens[i]);

  struct Ray {
    LatticeVector mu;
    std::vector<bool> tight;
  };
  std::vector<Ray> rays;
  std::vector<bool> done(k, false);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<LatticeVector> others;
    for (std::size_t t = 0; t < d; ++t)
      if (t != j) others.push_back(rows[basis_idx[t]]);
    LatticeVector mu = primitive(kernel_basis(others, d).at(0));
    if (sgn(dot(rows[basis_idx[j]], mu)) < 0) mu = -mu;
    rays.push_back({mu, std::vector<bool>(k, false)});
  }
  for (auto i : basis_idx) done[i] = true;
  for (auto& r : rays)
    for (std::size_t i = 0; i < k; ++i)
      if (done[i] && sgn(dot(rows[i], r.mu)) == 0) r.tight[i] = true;

  for (std::size_t i = 0; i < k; ++i) {
    if (done[i]) continue;
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(rows[i], rays[r].mu);
      int s = sgn(val[r]);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
      if (s >= 0) {
        next.push_back(rays[r]);
        if (s == 0) next.back().tight[i] = true;
      }
    }
    for (auto p : pos)
      for (auto q : neg) {
        std::vector<bool> common(k, false);
        std::size_t count = 0;
        for (std::size_t t = 0; t < k; ++t)
          if (rays[p].tight[t] && rays[q].tight[t]) {
            common[t] = true;
            ++count;
          }
        if (count + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool covers = true;
          for (std::size_t t = 0; t < k && covers; ++t)
            if (common[t] && !rays[r].tight[t]) covers = false;
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        LatticeVector mu = primitive(val[p] * rays[q].mu - val[q] * rays[p].mu);
        common[i] = true;
        next.push_back({mu, common});
      }
    rays = std::move(next);
    done[i] = true;
  }

  std::set<LatticeVector> found;
  for (const auto& r : rays) {
    LatticeVector normal(n);
    for (std::size_t j = 0; j < d; ++j) normal += r.mu[j] * basis[j];
    found.insert(primitive(normal));
  }
  h.facets.assign(found.begin(), found.end());
  return h;
}

Cone Cone::from_canonical_rays(std::size_t n, std::vector<LatticeVector> rays) {
  Cone c;
  c.rank_ = n;
  c.dim_ = rays.empty() ? 0 : rank_of(rays);
  c.rays_ = std::move(rays);
  c.cache_ = std::make_shared<Cache>();
  return c;
}

Cone Cone::zero(std::size_t n) { return from_canonical_rays(n, {}); }

Cone Cone::from_rays(std::size_t n, std::vector<LatticeVector> gens) {
  for (auto& g : gens) {
    if (g.rank() != n)
      throw Error(ErrorCode::rank_mismatch,
                  "generator " + g.to_string() + " is not of rank " + std::to_string(n));
    g = primitive(g);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return zero(n);
  std::size_t d = rank_of(gens);
  if (d == gens.size()) return from_canonical_rays(n, std::move(gens));

  std::vector<LinearConstraint> pointed;
  for (const auto& g : gens) pointed.push_back({g, Relation::gt});
  if (!homogeneous_feasible(pointed, n))
    throw Error(ErrorCode::not_strongly_convex, "generators span a cone containing a line");

  for (std::size_t i = 0; i < gens.size();) {
    std::vector<LatticeVector> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (!lp_feasible(std::vector<LatticeVector>{}, others, gens[i])) gens.erase(gens.begin() + i);
    else ++i;
  }
  return from_canonical_rays(n, std::move(gens));
}

const HRep& Cone::h_rep() const {
  std::call_once(cache_->once, [this] { cache_->hrep = facets_of(rays_, rank_); });
  return cache_->hrep;
}

bool operator<(const Cone& a, const Cone& b) {
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
  if (a.rays_.size() != b.rays_.size()) return a.rays_.size() < b.rays_.size();
  return a.rays_ < b.rays_;
}

std::string Cone::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (i) s += ",";
    s += rays_[i].to_string();
  }
  return s + ">";
}

Cone cone_from_h(std::size_t n, const std::vector<LatticeVector>& equations,
                 const std::vector<LatticeVector>& inequalities) {
  std::vector<LatticeVector> dual;
  for (const auto& e : equations) {
    if (e.is_zero()) continue;
    dual.push_back(e);
    dual.push_back(-e);
  }
  for (const auto& f : inequalities)
    if (!f.is_zero()) dual.push_back(f);
  for (auto& g : dual) g = primitive(g);
  std::sort(dual.begin(), dual.end());
  dual.erase(std::unique(dual.begin(), dual.end()), dual.end());
  if (n == 0) return Cone::zero(0);
  HRep h = facets_of(dual, n);
  if (!h.equations.empty())
    throw Error(ErrorCode::not_strongly_convex, "H-description contains a line");
  return Cone::from_canonical_rays(n, h.facets);
}

std::vector<Cone> faces(const Cone& c) {
  std::size_t k = c.num_rays();
  std::set<std::vector<bool>> seen;
  std::vector<Cone> out;
  auto emit = [&](const std::vector<bool>& mask) {
    std::vector<LatticeVector> rs;
    for (std::size_t i = 0; i < k; ++i)
      if (mask[i]) rs.push_back(c.rays()[i]);
    out.push_back(Cone::from_canonical_rays(c.ambient_rank(), std::move(rs)));
  };
  if (c.is_simplicial()) {
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
      std::vector<bool> mask(k);
      for (std::size_t i = 0; i < k; ++i) mask[i] = (m >> i) & 1;
      emit(mask);
    }
  } else {
    const auto& facets = c.h_rep().facets;
    std::vector<std::vector<bool>> queue{std::vector<bool>(k, true)};
    seen.insert(queue.front());
    while (!queue.empty()) {
      auto mask = queue.back();
      queue.pop_back();
      emit(mask);
      for (const auto& f : facets) {
        std::vector<bool> next(k, false);
        bool changed = false;
        for (std::size_t i = 0; i < k; ++i) {
          if (!mask[i]) continue;
          if (sgn(dot(f, c.rays()[i])) == 0) next[i] = true;
          else changed = true;
        }
        if (changed && seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const Cone& c, const RationalVector& v, bool relint) {
  if (v.rank() != c.ambient_rank()) throw Error(ErrorCode::rank_mismatch, "point of wrong rank");
  if (c.is_simplicial()) {
    if (c.is_zero()) return v.is_zero();
    auto coeffs = solve_in_span(c.rays(), v);
    if (!coeffs) return false;
    for (const auto& x : *coeffs) {
      int s = sgn(x);
      if (s < 0 || (relint && s == 0)) return false;
    }
    return true;
  }
  const HRep& h = c.h_rep();
  for (const auto& e : h.equations)
    if (sgn(dot(v, e)) != 0) return false;
  for (const auto& f : h.facets) {
    int s = sgn(dot(v, f));
    if (s < 0 || (relint && s == 0)) return false;
  }
  return true;
}

bool contains(const Cone& c, const LatticeVector& v, bool relint) {
  return contains(c, RationalVector(v), relint);
}

bool contains_cone(const Cone& outer, const Cone& inner) {
  for (const auto& r : inner.rays())
    if (!contains(outer, r)) return false;
  return true;
}

bool is_face_of(const Cone& face, const Cone& c) {
  if (face.ambient_rank() != c.ambient_rank()) return false;
  for (const auto& r : face.rays())
    if (!std::binary_search(c.rays().begin(), c.rays().end(), r)) return false;
  if (c.is_simplicial()) return true;
  if (face.num_rays() == c.num_rays()) return true;
  std::vector<const LatticeVector*> tight;
  for (const auto& f : c.h_rep().facets) {
    bool all = true;
    for (const auto& r : face.rays())
      if (sgn(dot(f, r)) != 0) {
        all = false;
        break;
      }
    if (all) tight.push_back(&f);
  }
  std::size_t count = 0;
  for (const auto& r : c.rays()) {
    bool on = true;
    for (auto* f : tight)
      if (sgn(dot(*f, r)) != 0) {
        on = false;
        break;
      }
    if (on) ++count;
  }
  return count == face.num_rays();
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw Error(ErrorCode::rank_mismatch, "cones of different rank");
  if (a == b) return a;
  const HRep& ha = a.h_rep();
  const HRep& hb = b.h_rep();
  std::vector<LatticeVector> eq = ha.equations;
  eq.insert(eq.end(), hb.equations.begin(), hb.equations.end());
  std::vector<LatticeVector> ineq = ha.facets;
  ineq.insert(ineq.end(), hb.facets.begin(), hb.facets.end());
  return cone_from_h(a.ambient_rank(), eq, ineq);
}

LatticeVector interior_point(const Cone& c) {
  LatticeVector p(c.ambient_rank());
  for (const auto& r : c.rays()) p += r;
  return p;
}

}  // namespace cobordize
