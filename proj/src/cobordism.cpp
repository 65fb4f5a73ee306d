#include "cobordize/cobordism.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "cobordize/error.hpp"

namespace cobordize {

struct CobordismFan::Data {
  Fan fan;
  LatticeVector v0;
  ProjectionMap proj;
  std::vector<Cone> cones;
  std::map<Cone, std::size_t> index;
  std::vector<std::vector<std::size_t>> containing_max;  // indices into fan.max_cones()
  std::vector<std::vector<std::size_t>> cofaces;
  std::vector<std::optional<std::vector<Rational>>> max_expansion;
  std::vector<bool> dependent;
  std::vector<std::optional<std::size_t>> lim0, liminf;
  std::vector<std::optional<std::size_t>> comp;
  std::vector<FixedComponent> components;
};

namespace {

std::vector<LatticeVector> sub_rays(const Cone& c, unsigned long mask) {
  std::vector<LatticeVector> rs;
  for (std::size_t i = 0; i < c.num_rays(); ++i)
    if ((mask >> i) & 1) rs.push_back(c.rays()[i]);
  return rs;
}

bool ray_subset(const Cone& a, const Cone& b) {
  return std::includes(b.rays().begin(), b.rays().end(), a.rays().begin(), a.rays().end());
}

// Limit cone of tau inside max cone m, from the expansion of w = sign * v0.
std::optional<std::vector<LatticeVector>> limit_in(const Cone& tau, const Cone& m,
                                                   const std::vector<Rational>& expansion, int sign) {
  std::vector<LatticeVector> gamma;
  for (std::size_t i = 0; i < m.num_rays(); ++i) {
    const auto& r = m.rays()[i];
    bool in_tau = std::binary_search(tau.rays().begin(), tau.rays().end(), r);
    int s = sign * sgn(expansion[i]);
    if (in_tau) {
      gamma.push_back(r);
      continue;
    }
    if (s < 0) return std::nullopt;
    if (s > 0) gamma.push_back(r);
  }
  return gamma;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

CobordismFan CobordismFan::make(Fan fan, LatticeVector v0, bool require_boundaries) {
  std::size_t n = fan.ambient_rank();
  if (v0.rank() != n) throw Error(ErrorCode::rank_mismatch, "v0 has the wrong rank");
  if (!fan.is_simplicial()) throw Error(ErrorCode::not_simplicial, "cobordism fans must be simplicial");
  auto d = std::make_shared<Data>();
  d->proj = quotient_projection(v0, n);
  d->v0 = std::move(v0);
  d->fan = std::move(fan);
  const auto& maxc = d->fan.max_cones();

  for (std::size_t mi = 0; mi < maxc.size(); ++mi) {
    const Cone& m = maxc[mi];
    std::size_t k = m.num_rays();
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
      Cone f = Cone::from_canonical_rays(n, sub_rays(m, mask));
      auto [it, fresh] = d->index.emplace(f, 0);
      if (fresh) {
        it->second = d->cones.size();
        d->cones.push_back(std::move(f));
        d->containing_max.emplace_back();
      }
      d->containing_max[it->second].push_back(mi);
    }
  }
  // Canonical order.
  {
    std::vector<Cone> sorted = d->cones;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<std::size_t>> cm(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      std::size_t old = d->index[sorted[i]];
      cm[i] = std::move(d->containing_max[old]);
    }
    d->cones = std::move(sorted);
    d->containing_max = std::move(cm);
    for (std::size_t i = 0; i < d->cones.size(); ++i) d->index[d->cones[i]] = i;
  }
  std::size_t nc = d->cones.size();
  d->cofaces.assign(nc, {});
  for (std::size_t i = 0; i < nc; ++i) {
    std::set<std::size_t> cf;
    const Cone& t = d->cones[i];
    for (auto mi : d->containing_max[i]) {
      for (const auto& r : maxc[mi].rays()) {
        if (std::binary_search(t.rays().begin(), t.rays().end(), r)) continue;
        std::vector<LatticeVector> rs = t.rays();
        rs.insert(std::upper_bound(rs.begin(), rs.end(), r), r);
        cf.insert(d->index.at(Cone::from_canonical_rays(n, std::move(rs))));
      }
    }
    d->cofaces[i].assign(cf.begin(), cf.end());
  }

  d->max_expansion.resize(maxc.size());
  for (std::size_t mi = 0; mi < maxc.size(); ++mi)
    d->max_expansion[mi] = solve_in_span(maxc[mi].rays(), d->v0);

  d->dependent.assign(nc, false);
  d->lim0.assign(nc, std::nullopt);
  d->liminf.assign(nc, std::nullopt);
  for (std::size_t i = 0; i < nc; ++i) {
    const Cone& t = d->cones[i];
    for (auto mi : d->containing_max[i]) {
      const auto& ex = d->max_expansion[mi];
      if (!ex) continue;
      bool supp_in = true;
      for (std::size_t j = 0; j < maxc[mi].num_rays(); ++j)
        if (sgn((*ex)[j]) != 0 &&
            !std::binary_search(t.rays().begin(), t.rays().end(), maxc[mi].rays()[j])) {
          supp_in = false;
          break;
        }
      if (supp_in) d->dependent[i] = true;
      break;
    }
    if (d->dependent[i]) continue;
    for (auto mi : d->containing_max[i]) {
      const auto& ex = d->max_expansion[mi];
      if (!ex) continue;
      if (!d->lim0[i])
        if (auto g = limit_in(t, maxc[mi], *ex, 1))
          d->lim0[i] = d->index.at(Cone::from_canonical_rays(n, std::move(*g)));
      if (!d->liminf[i])
        if (auto g = limit_in(t, maxc[mi], *ex, -1))
          d->liminf[i] = d->index.at(Cone::from_canonical_rays(n, std::move(*g)));
    }
  }

  // Face-connected components of dependent cones.
  std::vector<std::size_t> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < nc; ++i) {
    if (!d->dependent[i]) continue;
    for (auto j : d->cofaces[i])
      if (d->dependent[j]) parent[find_root(parent, i)] = find_root(parent, j);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < nc; ++i)
    if (d->dependent[i]) groups[find_root(parent, i)].push_back(i);
  std::vector<std::vector<std::size_t>> comps;
  for (auto& [root, members] : groups) comps.push_back(std::move(members));
  // Members are in canonical order, so front() is the key.
  std::sort(comps.begin(), comps.end(),
            [&](const auto& a, const auto& b) { return d->cones[a.front()] < d->cones[b.front()]; });
  d->comp.assign(nc, std::nullopt);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    FixedComponent fc;
    fc.id = c;
    for (auto i : comps[c]) {
      d->comp[i] = c;
      fc.cones.push_back(d->cones[i]);
    }
    d->components.push_back(std::move(fc));
  }

  std::size_t zero = d->index.at(Cone::zero(n));
  if (require_boundaries && d->lim0[zero])
    throw Error(ErrorCode::not_a_cobordism, "lower boundary is empty: v0 lies in the support");
  if (require_boundaries && d->liminf[zero])
    throw Error(ErrorCode::not_a_cobordism, "upper boundary is empty: -v0 lies in the support");
  if (require_boundaries) {
    auto outside = [&](std::size_t i, const std::vector<std::optional<std::size_t>>& lim) {
      return d->dependent[i] || lim[i].has_value();
    };
    for (std::size_t i = 0; i < nc; ++i)
      for (auto j : d->cofaces[i]) {
        if (outside(i, d->lim0) && !outside(j, d->lim0))
          throw Error(ErrorCode::not_a_cobordism,
                      "lower boundary is not open: " + d->cones[j].to_string() + " lacks its face " +
                          d->cones[i].to_string());
        if (outside(i, d->liminf) && !outside(j, d->liminf))
          throw Error(ErrorCode::not_a_cobordism,
                      "upper boundary is not open: " + d->cones[j].to_string() + " lacks its face " +
                          d->cones[i].to_string());
      }
  }

  CobordismFan b;
  b.data_ = std::move(d);
  return b;
}

const Fan& CobordismFan::fan() const { return data_->fan; }
const LatticeVector& CobordismFan::v0() const { return data_->v0; }
const ProjectionMap& CobordismFan::projection() const { return data_->proj; }
const std::vector<Cone>& CobordismFan::cones() const { return data_->cones; }

std::optional<std::size_t> CobordismFan::index_of(const Cone& c) const {
  auto it = data_->index.find(c);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool CobordismFan::is_dependent(std::size_t i) const { return data_->dependent.at(i); }

std::optional<std::size_t> CobordismFan::limit_index(std::size_t i, Direction d) const {
  return d == Direction::to_zero ? data_->lim0.at(i) : data_->liminf.at(i);
}

std::optional<std::size_t> CobordismFan::component_of(std::size_t i) const { return data_->comp.at(i); }

const std::vector<std::size_t>& CobordismFan::cofaces(std::size_t i) const { return data_->cofaces.at(i); }

const std::vector<FixedComponent>& CobordismFan::components() const { return data_->components; }

namespace {

std::size_t checked_index(const CobordismFan& b, const Cone& tau) {
  auto i = b.index_of(tau);
  if (!i) throw Error(ErrorCode::not_in_fan, "cone " + tau.to_string() + " is not in the fan");
  return *i;
}

}  // namespace

std::optional<Cone> limit_orbit(const CobordismFan& b, const Cone& tau, Direction d) {
  std::size_t i = checked_index(b, tau);
  if (b.is_dependent(i)) throw Error(ErrorCode::orbit_fixed, "orbit is pointwise fixed");
  auto j = b.limit_index(i, d);
  if (!j) return std::nullopt;
  return b.cones()[*j];
}

bool limit_exists_in(const CobordismFan& b, const Cone& tau, const Cone& delta, Direction d) {
  LatticeVector w = d == Direction::to_zero ? b.v0() : -b.v0();
  return !lp_feasible(tau.rays(), delta.rays(), w);
}

bool limit_exists_lp(const CobordismFan& b, const Cone& tau, Direction d) {
  std::size_t i = checked_index(b, tau);
  if (b.is_dependent(i)) throw Error(ErrorCode::orbit_fixed, "orbit is pointwise fixed");
  for (const auto& m : b.fan().max_cones())
    if (ray_subset(tau, m) && limit_exists_in(b, tau, m, d)) return true;
  return false;
}

namespace {

Fan boundary(const CobordismFan& b, Direction d) {
  std::vector<Cone> keep;
  for (std::size_t i = 0; i < b.cones().size(); ++i)
    if (!b.is_dependent(i) && !b.limit_index(i, d)) keep.push_back(b.cones()[i]);
  if (keep.empty()) throw Error(ErrorCode::not_a_cobordism, "boundary is empty");
  return Fan::make_unchecked(b.fan().ambient_rank(), std::move(keep));
}

}  // namespace

Fan lower_boundary(const CobordismFan& b) { return boundary(b, Direction::to_zero); }
Fan upper_boundary(const CobordismFan& b) { return boundary(b, Direction::to_infinity); }

Fan quotient_fan(const CobordismFan& b, const Fan& subfan) {
  const auto& p = b.projection();
  if (subfan.ambient_rank() != b.fan().ambient_rank())
    throw Error(ErrorCode::rank_mismatch, "subfan of the wrong rank");
  std::vector<Cone> images;
  for (const auto& c : subfan.max_cones()) {
    std::vector<LatticeVector> with_v0 = c.rays();
    with_v0.push_back(b.v0());
    if (rank_of(with_v0) != c.num_rays() + 1)
      throw Error(ErrorCode::not_pi_injective, "not pi-injective: cone " + c.to_string());
    std::vector<LatticeVector> img;
    for (const auto& r : c.rays()) img.push_back(primitive(p(r)));
    images.push_back(Cone::from_rays(p.target_rank(), std::move(img)));
  }
  try {
    return Fan::make(p.target_rank(), std::move(images));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_a_fan)
      throw Error(ErrorCode::quotient_not_geometric, "quotient is not geometric: " + e.detail());
    throw;
  }
}

std::vector<FixedComponent> fixed_components(const CobordismFan& b) { return b.components(); }

PredecessorGraph predecessor_graph(const CobordismFan& b) {
  PredecessorGraph g;
  g.components = b.components();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Cone>> edges;
  for (std::size_t i = 0; i < b.cones().size(); ++i) {
    if (b.is_dependent(i)) continue;
    auto a = b.limit_index(i, Direction::to_zero);
    auto z = b.limit_index(i, Direction::to_infinity);
    if (!a || !z) continue;
    auto ca = b.component_of(*a);
    auto cz = b.component_of(*z);
    if (!ca || !cz) throw Error(ErrorCode::internal, "limit cone outside every fixed component");
    edges[{*ca, *cz}].push_back(b.cones()[i]);
  }
  for (auto& [key, wit] : edges) {
    PredecessorEdge e{key.first, key.second, std::move(wit)};
    (key.first == key.second ? g.self_loops : g.edges).push_back(std::move(e));
  }
  return g;
}

Collapsibility collapsibility(const PredecessorGraph& g) {
  std::size_t k = g.components.size();
  std::vector<std::vector<std::size_t>> out(k);
  std::vector<std::size_t> indeg(k, 0);
  for (const auto& e : g.edges) {
    out[e.from].push_back(e.to);
    ++indeg[e.to];
  }
  Collapsibility res;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < k; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<std::size_t> deg = indeg;
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    res.order.push_back(v);
    for (auto w : out[v])
      if (--deg[w] == 0) ready.push(w);
  }
  if (res.order.size() == k) return res;

  res.collapsible = false;
  std::vector<bool> done(k, false);
  for (auto v : res.order) done[v] = true;
  // Walk backwards along edges inside the unresolved part until a node repeats.
  std::vector<std::vector<std::size_t>> in(k);
  for (const auto& e : g.edges)
    if (!done[e.from] && !done[e.to]) in[e.to].push_back(e.from);
  std::size_t start = 0;
  while (done[start]) ++start;
  std::vector<std::size_t> path;
  std::vector<long> pos(k, -1);
  std::size_t v = start;
  while (pos[v] < 0) {
    pos[v] = static_cast<long>(path.size());
    path.push_back(v);
    v = *std::min_element(in[v].begin(), in[v].end());
  }
  std::vector<std::size_t> cyc(path.begin() + pos[v], path.end());
  std::reverse(cyc.begin(), cyc.end());
  res.cycle = cyc;
  res.order.clear();
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    std::size_t a = cyc[i], z = cyc[(i + 1) % cyc.size()];
    for (const auto& e : g.edges)
      if (e.from == a && e.to == z) res.cycle_edges.push_back(e);
  }
  return res;
}

Collapsibility collapsibility(const CobordismFan& b) { return collapsibility(predecessor_graph(b)); }

bool is_collapsible(const CobordismFan& b) { return collapsibility(b).collapsible; }

namespace {

std::size_t component_id(const CobordismFan& b, const FixedComponent& f0) {
  for (const auto& c : b.components())
    if (c.cones == f0.cones) return c.id;
  throw Error(ErrorCode::invalid_argument, "not a fixed component of this cobordism");
}

void require_minimal(const CobordismFan& b, std::size_t id) {
  for (const auto& e : predecessor_graph(b).edges)
    if (e.to == id)
      throw Error(ErrorCode::not_minimal, "component " + std::to_string(id) +
                                              " is not minimal: component " + std::to_string(e.from) +
                                              " precedes it");
}

CobordismFan remove_cones(const CobordismFan& b, const std::vector<bool>& removed, const char* what) {
  std::size_t nc = b.cones().size();
  for (std::size_t i = 0; i < nc; ++i) {
    if (!removed[i]) continue;
    for (auto j : b.cofaces(i))
      if (!removed[j])
        throw Error(ErrorCode::not_closed, std::string(what) + ": removed set is not star-closed at " +
                                               b.cones()[i].to_string());
  }
  std::vector<Cone> keep;
  for (std::size_t i = 0; i < nc; ++i) {
    if (removed[i]) continue;
    bool maximal = std::all_of(b.cofaces(i).begin(), b.cofaces(i).end(),
                               [&](std::size_t j) { return removed[j]; });
    if (maximal) keep.push_back(b.cones()[i]);
  }
  return CobordismFan::make(Fan::make_unchecked(b.fan().ambient_rank(), std::move(keep)), b.v0());
}

}  // namespace

CobordismFan elementary_collapse(const CobordismFan& b, const FixedComponent& f0) {
  std::size_t id = component_id(b, f0);
  require_minimal(b, id);
  std::size_t nc = b.cones().size();
  std::vector<bool> removed(nc, false);
  for (std::size_t i = 0; i < nc; ++i) {
    auto c = b.component_of(i);
    if (c && *c == id) removed[i] = true;
    if (b.is_dependent(i)) continue;
    auto z = b.limit_index(i, Direction::to_infinity);
    if (z && b.component_of(*z) == id) removed[i] = true;
  }
  CobordismFan out = remove_cones(b, removed, "elementary collapse");
  if (!(upper_boundary(out) == upper_boundary(b)))
    throw Error(ErrorCode::internal, "elementary collapse changed the upper boundary");
  return out;
}

CobordismFan elementary_cobordism(const CobordismFan& b, const FixedComponent& f0) {
  std::size_t id = component_id(b, f0);
  require_minimal(b, id);
  std::size_t nc = b.cones().size();
  std::vector<bool> removed(nc, false);
  for (std::size_t i = 0; i < nc; ++i) {
    auto c = b.component_of(i);
    if (c && *c != id) removed[i] = true;
    if (b.is_dependent(i)) continue;
    auto a = b.limit_index(i, Direction::to_zero);
    if (a && b.component_of(*a) != id) removed[i] = true;
  }
  CobordismFan out = remove_cones(b, removed, "elementary cobordism");
  if (!(lower_boundary(out) == lower_boundary(b)))
    throw Error(ErrorCode::internal, "elementary cobordism changed the lower boundary");
  if (!(upper_boundary(out) == lower_boundary(elementary_collapse(b, f0))))
    throw Error(ErrorCode::internal, "elementary cobordism upper boundary differs from the collapse");
  return out;
}

std::vector<Rational> v0_expansion(const CobordismFan& b, const Cone& c) {
  auto ex = solve_in_span(c.rays(), b.v0());
  if (!ex) throw Error(ErrorCode::invalid_argument, "v0 is not in the span of " + c.to_string());
  return *ex;
}

std::vector<Cone> minimal_dependent_cones(const CobordismFan& b, const FixedComponent& f) {
  std::vector<Cone> out;
  for (const auto& c : f.cones) {
    bool minimal = true;
    for (std::size_t i = 0; i < c.num_rays() && minimal; ++i) {
      std::vector<LatticeVector> rs = c.rays();
      rs.erase(rs.begin() + i);
      auto j = b.index_of(Cone::from_canonical_rays(c.ambient_rank(), std::move(rs)));
      if (j && b.is_dependent(*j)) minimal = false;
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

std::string to_dot(const CobordismFan& b, const PredecessorGraph& g) {
  auto rays = b.fan().rays();
  auto ray_index = [&](const LatticeVector& r) {
    return std::lower_bound(rays.begin(), rays.end(), r) - rays.begin();
  };
  auto cone_label = [&](const Cone& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.num_rays(); ++i) {
      if (i) s += ",";
      s += std::to_string(ray_index(c.rays()[i]));
    }
    return s + "]";
  };
  std::ostringstream os;
  os << "digraph predecessor {\n";
  for (const auto& c : g.components) {
    os << "  F" << c.id << " [label=\"F" << c.id;
    auto mins = minimal_dependent_cones(b, c);
    for (const auto& m : mins) {
      auto ex = v0_expansion(b, m);
      long l = std::count_if(ex.begin(), ex.end(), [](const Rational& x) { return sgn(x) > 0; });
      long mm = std::count_if(ex.begin(), ex.end(), [](const Rational& x) { return sgn(x) < 0; });
      os << " (l=" << l << ",m=" << mm << ")";
    }
    os << "\"];\n";
  }
  auto emit = [&](const PredecessorEdge& e) {
    os << "  F" << e.from << " -> F" << e.to << " [label=\"";
    for (std::size_t i = 0; i < e.witnesses.size(); ++i) {
      if (i) os << " ";
      os << cone_label(e.witnesses[i]);
    }
    os << "\"];\n";
  };
  for (const auto& e : g.edges) emit(e);
  for (const auto& e : g.self_loops) emit(e);
  os << "}\n";
  return os.str();
}

}  // namespace cobordize
