#include "cobordize/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cobordize/error.hpp"
#include "cobordize/linalg.hpp"

namespace cobordize {

namespace {

std::vector<Cone> maximal_only(std::vector<Cone> cones) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  std::vector<Cone> out;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cones.size() && !dominated; ++j) {
      if (i == j || cones[j].num_rays() <= cones[i].num_rays()) continue;
      dominated = is_face_of(cones[i], cones[j]);
    }
    if (!dominated) out.push_back(cones[i]);
  }
  return out;
}

}  // namespace

bool meet_properly(const Cone& a, const Cone& b) {
  std::size_t n = a.ambient_rank();
  std::vector<LinearConstraint> cs;
  for (const auto& r : a.rays()) {
    bool common = std::binary_search(b.rays().begin(), b.rays().end(), r);
    cs.push_back({r, common ? Relation::eq : Relation::gt});
  }
  for (const auto& r : b.rays()) {
    if (std::binary_search(a.rays().begin(), a.rays().end(), r)) continue;
    cs.push_back({-r, Relation::gt});
  }
  return homogeneous_feasible(std::move(cs), n);
}

Fan Fan::make_unchecked(std::size_t n, std::vector<Cone> cones) {
  for (const auto& c : cones)
    if (c.ambient_rank() != n) throw Error(ErrorCode::rank_mismatch, "cone of wrong ambient rank");
  Fan f;
  f.rank_ = n;
  f.max_cones_ = maximal_only(std::move(cones));
  if (f.max_cones_.empty()) f.max_cones_.push_back(Cone::zero(n));
  return f;
}

Fan Fan::make(std::size_t n, std::vector<Cone> cones) {
  Fan f = make_unchecked(n, std::move(cones));
  const auto& mc = f.max_cones_;
  for (std::size_t i = 0; i < mc.size(); ++i)
    for (std::size_t j = i + 1; j < mc.size(); ++j)
      if (!meet_properly(mc[i], mc[j]))
        throw Error(ErrorCode::not_a_fan,
                    "cones " + mc[i].to_string() + " and " + mc[j].to_string() +
                        " do not meet in a common face");
  return f;
}

std::vector<LatticeVector> Fan::rays() const {
  std::set<LatticeVector> rs;
  for (const auto& c : max_cones_) rs.insert(c.rays().begin(), c.rays().end());
  return {rs.begin(), rs.end()};
}

std::vector<Cone> Fan::all_cones() const {
  std::set<Cone> out;
  for (const auto& c : max_cones_)
    for (auto& f : faces(c)) out.insert(std::move(f));
  return {out.begin(), out.end()};
}

bool Fan::is_simplicial() const {
  return std::all_of(max_cones_.begin(), max_cones_.end(),
                     [](const Cone& c) { return c.is_simplicial(); });
}

bool Fan::contains_cone(const Cone& c) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(),
                     [&](const Cone& m) { return is_face_of(c, m); });
}

bool Fan::support_contains(const RationalVector& v) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(),
                     [&](const Cone& m) { return contains(m, v); });
}

bool Fan::support_contains(const LatticeVector& v) const {
  return support_contains(RationalVector(v));
}

Fan star_subdivision(const Fan& f, const LatticeVector& rho) {
  if (rho.rank() != f.ambient_rank()) throw Error(ErrorCode::rank_mismatch, "rho of wrong rank");
  LatticeVector vr = primitive(rho);
  std::vector<Cone> out;
  bool hit = false;
  for (const auto& sigma : f.max_cones()) {
    if (!contains(sigma, vr)) {
      out.push_back(sigma);
      continue;
    }
    if (!sigma.is_simplicial())
      throw Error(ErrorCode::not_simplicial, "cone " + sigma.to_string() + " containing rho is not simplicial");
    hit = true;
    auto coeffs = *solve_in_span(sigma.rays(), vr);
    std::vector<std::size_t> carrier;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (sgn(coeffs[i]) > 0) carrier.push_back(i);
    if (carrier.size() <= 1) {
      out.push_back(sigma);
      continue;
    }
    for (auto i : carrier) {
      std::vector<LatticeVector> rs{vr};
      for (std::size_t j = 0; j < sigma.num_rays(); ++j)
        if (j != i) rs.push_back(sigma.rays()[j]);
      out.push_back(Cone::from_rays(f.ambient_rank(), std::move(rs)));
    }
  }
  if (!hit) throw Error(ErrorCode::outside_support, "rho " + vr.to_string() + " is outside the support");
  return Fan::make(f.ambient_rank(), std::move(out));
}

StellarTransform stellar_transform_relaxed(const std::vector<LatticeVector>& rays) {
  auto rel = circuit_relation(rays);
  std::size_t n = rays.front().rank();
  std::vector<Cone> s1, s2;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::vector<LatticeVector> rs;
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (j != i) rs.push_back(rays[j]);
    Cone c = Cone::from_rays(n, std::move(rs));
    (sgn(rel[i]) > 0 ? s1 : s2).push_back(std::move(c));
  }
  if (s1.empty() || s2.empty())
    throw Error(ErrorCode::not_a_circuit, "relation has a single sign class");
  return {Fan::make(n, std::move(s1)), Fan::make(n, std::move(s2)), rel};
}

StellarTransform stellar_transform(const std::vector<LatticeVector>& rays) {
  auto rel = circuit_relation(rays);
  std::size_t pos = std::count_if(rel.begin(), rel.end(), [](const Integer& x) { return sgn(x) > 0; });
  if (pos < 2 || pos == rel.size())
    throw Error(ErrorCode::not_a_circuit,
                "stellar transform needs 2 <= l <= k positive coefficients, got l = " + std::to_string(pos));
  return stellar_transform_relaxed(rays);
}

namespace {

// Is sigma covered by the cones of f?
bool covered(const Cone& sigma, const Fan& f) {
  if (sigma.is_zero()) return true;
  std::size_t d = sigma.dim();
  std::vector<Cone> cells;
  for (const auto& t : f.max_cones()) {
    Cone c = intersect(sigma, t);
    if (c.dim() == d) cells.push_back(std::move(c));
  }
  if (cells.empty()) return false;
  const auto& boundary = sigma.h_rep().facets;
  std::map<Cone, int> count;
  for (const auto& c : cells)
    for (const auto& fc : faces(c))
      if (fc.dim() + 1 == d) ++count[fc];
  for (const auto& [fc, k] : count) {
    bool on_boundary = std::any_of(boundary.begin(), boundary.end(), [&](const LatticeVector& h) {
      return std::all_of(fc.rays().begin(), fc.rays().end(),
                         [&](const LatticeVector& r) { return sgn(dot(h, r)) == 0; });
    });
    if (!on_boundary && k != 2) return false;
  }
  return true;
}

}  // namespace

bool same_support(const Fan& a, const Fan& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  for (const auto& s : a.max_cones())
    if (!covered(s, b)) return false;
  for (const auto& s : b.max_cones())
    if (!covered(s, a)) return false;
  return true;
}

Fan common_refinement(const Fan& f1, const Fan& f2) {
  if (!same_support(f1, f2)) throw Error(ErrorCode::support_mismatch, "fans have different supports");
  std::vector<Cone> cells;
  for (const auto& a : f1.max_cones())
    for (const auto& b : f2.max_cones()) cells.push_back(intersect(a, b));
  return Fan::make(f1.ambient_rank(), std::move(cells));
}

bool fans_equal(const Fan& f1, const Fan& f2) { return f1 == f2; }

}  // namespace cobordize
