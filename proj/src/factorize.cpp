#include "cobordize/factorize.hpp"

#include <algorithm>
#include <set>

#include "cobordize/error.hpp"

namespace cobordize {

namespace {

using RaySet = std::vector<LatticeVector>;  // sorted, distinct

RaySet without(const std::vector<LatticeVector>& rays, std::size_t skip) {
  RaySet out;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (i != skip) out.push_back(rays[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool subset(const RaySet& small, const std::vector<LatticeVector>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

RaySet difference(const std::vector<LatticeVector>& big, const RaySet& small) {
  RaySet out;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(out));
  return out;
}

RaySet set_union(const RaySet& a, const RaySet& b) {
  RaySet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool has_face(const Cone& m, const RaySet& t) {
  if (!subset(t, m.rays())) return false;
  if (m.is_simplicial()) return true;
  return is_face_of(Cone::from_canonical_rays(m.ambient_rank(), t), m);
}

Integer product(const std::vector<Integer>& xs) {
  Integer p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

std::string step_text(std::size_t i) { return "step " + std::to_string(i); }

// Positions of the two sign classes of the relation.
void sign_classes(const std::vector<Integer>& rel, std::vector<std::size_t>& pos,
                  std::vector<std::size_t>& neg) {
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (sgn(rel[i]) > 0) pos.push_back(i);
    else if (sgn(rel[i]) < 0) neg.push_back(i);
    else throw Error(ErrorCode::not_a_circuit, "zero coefficient in move relation");
  }
}

Integer gcd_of(const std::vector<Integer>& xs) {
  Integer g = 0;
  for (const auto& x : xs) g = gcd(g, x);
  return g;
}

std::vector<std::size_t> collapse_order(const CobordismFan& b) {
  Collapsibility c = collapsibility(b);
  if (!c.collapsible) {
    std::string cyc;
    for (auto id : c.cycle) cyc += (cyc.empty() ? "" : ",") + std::to_string(id);
    throw Error(ErrorCode::not_collapsible, "cycle through components " + cyc);
  }
  return c.order;
}

}  // namespace

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::flip: return "flip";
    case MoveKind::blowup: return "blowup";
    case MoveKind::blowdown: return "blowdown";
    case MoveKind::identity: return "identity";
  }
  return "?";
}

MoveKind move_kind_from_string(const std::string& s) {
  if (s == "flip") return MoveKind::flip;
  if (s == "blowup") return MoveKind::blowup;
  if (s == "blowdown") return MoveKind::blowdown;
  if (s == "identity") return MoveKind::identity;
  throw Error(ErrorCode::parse_error, "unknown move kind " + s);
}

MoveKind kind_for(std::size_t l, std::size_t m) {
  if (l == 0 || m == 0) throw Error(ErrorCode::invalid_argument, "empty sign class");
  if (l >= 2 && m >= 2) return MoveKind::flip;
  if (l == 1 && m >= 2) return MoveKind::blowdown;
  if (l >= 2 && m == 1) return MoveKind::blowup;
  return MoveKind::identity;
}

Move classify(const CobordismFan& e, const FixedComponent& f0) {
  const auto& comps = e.components();
  if (comps.size() != 1 || comps[0].cones != f0.cones)
    throw Error(ErrorCode::invalid_argument, "not the only fixed component of the cobordism");
  auto mins = minimal_dependent_cones(e, comps[0]);
  if (mins.size() != 1)
    throw Error(ErrorCode::non_elementary,
                std::to_string(mins.size()) + " minimal dependent cones");
  const Cone& k = mins[0];
  LatticeVector c = clear_denominators(RationalVector(v0_expansion(e, k)));

  std::vector<std::size_t> pos, neg;
  sign_classes(c.coords(), pos, neg);
  // Rays within a class in decreasing lexicographic order (coordinate order for e_1, e_2, ...).
  auto desc = [&](std::size_t a, std::size_t b) { return k.rays()[b] < k.rays()[a]; };
  std::sort(pos.begin(), pos.end(), desc);
  std::sort(neg.begin(), neg.end(), desc);

  Circuit circ;
  circ.cone = k;
  circ.l = pos.size();
  circ.m = neg.size();
  std::size_t top = 0;
  for (const auto& cone : comps[0].cones) top = std::max(top, cone.num_rays());
  circ.r = top - k.num_rays();

  Move mv;
  for (auto idx : pos) {
    circ.rays.push_back(k.rays()[idx]);
    circ.relation.push_back(c[idx]);
    mv.weights_minus.push_back(c[idx]);
  }
  for (auto idx : neg) {
    circ.rays.push_back(k.rays()[idx]);
    circ.relation.push_back(c[idx]);
    mv.weights_plus.push_back(-c[idx]);
  }
  mv.relation = circ.relation;
  for (const auto& r : circ.rays) mv.center_rays.push_back(primitive(e.projection()(r)));
  mv.kind = kind_for(circ.l, circ.m);
  mv.circuit = std::move(circ);
  return mv;
}

std::vector<ElementaryPiece> decompose(const CobordismFan& b) {
  auto order = collapse_order(b);
  std::vector<ElementaryPiece> pieces;
  CobordismFan cur = b;
  for (auto id : order) {
    const auto& target = b.components()[id].cones;
    const FixedComponent* comp = nullptr;
    for (const auto& c : cur.components())
      if (c.cones == target) comp = &c;
    if (!comp) throw Error(ErrorCode::internal, "component lost during collapse");
    CobordismFan e = elementary_cobordism(cur, *comp);
    FixedComponent ec = e.components().at(0);
    CobordismFan next = elementary_collapse(cur, *comp);
    pieces.push_back({std::move(e), std::move(ec)});
    cur = std::move(next);
  }
  return pieces;
}

Fan replay(const Fan& f, const Move& m) {
  std::vector<std::size_t> pos, neg;
  sign_classes(m.relation, pos, neg);
  if (m.center_rays.size() != m.relation.size())
    throw Error(ErrorCode::replay_mismatch, "center size differs from relation size");
  std::set<RaySet> before, after;
  for (auto i : neg) before.insert(without(m.center_rays, i));
  for (auto i : pos) after.insert(without(m.center_rays, i));

  std::optional<std::set<RaySet>> link;
  std::vector<bool> removed(f.max_cones().size(), false);
  for (const auto& t : before) {
    std::set<RaySet> lt;
    for (std::size_t j = 0; j < f.max_cones().size(); ++j) {
      const Cone& mc = f.max_cones()[j];
      if (!has_face(mc, t)) continue;
      lt.insert(difference(mc.rays(), t));
      removed[j] = true;
    }
    if (lt.empty()) throw Error(ErrorCode::replay_mismatch, "center cell is not a cone of the fan");
    if (link && *link != lt)
      throw Error(ErrorCode::replay_mismatch, "center cells have different links");
    link = std::move(lt);
  }

  std::vector<Cone> out;
  for (std::size_t j = 0; j < f.max_cones().size(); ++j)
    if (!removed[j]) out.push_back(f.max_cones()[j]);
  for (const auto& s : after)
    for (const auto& w : *link) out.push_back(Cone::from_rays(f.ambient_rank(), set_union(s, w)));
  try {
    return Fan::make(f.ambient_rank(), std::move(out));
  } catch (const Error& e) {
    throw Error(ErrorCode::replay_mismatch, "replayed cones do not form a fan: " + e.detail());
  }
}

FactorizationTrace factor(const CobordismFan& b) {
  FactorizationTrace t;
  t.order = collapse_order(b);
  auto pieces = decompose(b);
  t.fans.push_back(quotient_fan(b, lower_boundary(b)));
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    Move mv = classify(p.cobordism, p.component);
    if (!(quotient_fan(p.cobordism, lower_boundary(p.cobordism)) == t.fans.back()))
      throw Error(ErrorCode::internal, step_text(i) + ": piece does not start at the current fan");
    Fan after = quotient_fan(p.cobordism, upper_boundary(p.cobordism));
    if (!(replay(t.fans.back(), mv) == after))
      throw Error(ErrorCode::replay_mismatch, step_text(i) + ": move does not reproduce the piece");
    t.moves.push_back(std::move(mv));
    t.fans.push_back(std::move(after));
  }
  if (!(t.fans.back() == quotient_fan(b, upper_boundary(b))))
    throw Error(ErrorCode::internal, "trace does not end at the upper quotient");
  return t;
}

Move inverse(const Move& m) {
  std::vector<std::size_t> pos, neg;
  sign_classes(m.relation, pos, neg);
  Move r;
  r.kind = m.kind == MoveKind::blowup     ? MoveKind::blowdown
           : m.kind == MoveKind::blowdown ? MoveKind::blowup
                                          : m.kind;
  r.weights_minus = m.weights_plus;
  r.weights_plus = m.weights_minus;
  for (auto i : neg) {
    r.relation.push_back(-m.relation[i]);
    r.center_rays.push_back(m.center_rays[i]);
  }
  for (auto i : pos) {
    r.relation.push_back(-m.relation[i]);
    r.center_rays.push_back(m.center_rays[i]);
  }
  if (m.circuit) {
    Circuit c;
    c.cone = m.circuit->cone;
    c.l = m.circuit->m;
    c.m = m.circuit->l;
    c.r = m.circuit->r;
    c.relation = r.relation;
    for (auto i : neg) c.rays.push_back(m.circuit->rays[i]);
    for (auto i : pos) c.rays.push_back(m.circuit->rays[i]);
    r.circuit = std::move(c);
  }
  return r;
}

FactorizationTrace reversed(const FactorizationTrace& t) {
  FactorizationTrace r;
  r.fans.assign(t.fans.rbegin(), t.fans.rend());
  for (auto it = t.moves.rbegin(); it != t.moves.rend(); ++it) r.moves.push_back(inverse(*it));
  r.order.assign(t.order.rbegin(), t.order.rend());
  return r;
}

FlipFactorization flip_as_blowup_blowdown(const Move& m, const Fan& f) {
  if (m.kind != MoveKind::flip) throw Error(ErrorCode::invalid_argument, "move is not a flip");
  std::size_t n = f.ambient_rank();
  const auto& u = m.center_rays;
  std::vector<Integer> c = circuit_relation(u);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != sgn(m.relation[i]))
      throw Error(ErrorCode::not_a_circuit, "center rays do not match the relation signs");

  LatticeVector sum(n);
  std::vector<std::size_t> pos, neg;
  sign_classes(c, pos, neg);
  for (auto i : pos) sum += c[i] * u[i];
  LatticeVector rho = primitive(sum);
  Integer g = content(sum);

  auto local = stellar_transform_relaxed(u);
  Fan refined = common_refinement(local.sigma1, local.sigma2);
  if (!(refined == star_subdivision(local.sigma2, rho)) ||
      !(refined == star_subdivision(local.sigma1, rho)))
    throw Error(ErrorCode::internal, "common refinement of the flip is not the star subdivision");

  FlipFactorization out;
  out.rho = rho;
  out.middle = star_subdivision(f, rho);

  Move& up = out.up;
  for (auto i : pos) {
    up.center_rays.push_back(u[i]);
    up.relation.push_back(c[i]);
  }
  up.center_rays.push_back(rho);
  up.relation.push_back(-g);
  Integer gu = gcd_of(up.relation);
  for (auto& x : up.relation) x /= gu;
  for (std::size_t i = 0; i + 1 < up.relation.size(); ++i) up.weights_minus.push_back(up.relation[i]);
  up.weights_plus.push_back(-up.relation.back());
  up.kind = kind_for(up.weights_minus.size(), 1);

  Move& down = out.down;
  down.center_rays.push_back(rho);
  down.relation.push_back(g);
  for (auto i : neg) {
    down.center_rays.push_back(u[i]);
    down.relation.push_back(c[i]);
  }
  Integer gd = gcd_of(down.relation);
  for (auto& x : down.relation) x /= gd;
  down.weights_minus.push_back(down.relation.front());
  for (std::size_t i = 1; i < down.relation.size(); ++i) down.weights_plus.push_back(-down.relation[i]);
  down.kind = kind_for(1, down.weights_plus.size());

  if (!(replay(f, up) == out.middle))
    throw Error(ErrorCode::internal, "blow-up does not give the star subdivision");
  Fan flipped = replay(f, m);
  if (!(replay(out.middle, down) == flipped))
    throw Error(ErrorCode::internal, "blow-down does not give the flipped fan");
  if (!(star_subdivision(flipped, rho) == out.middle))
    throw Error(ErrorCode::internal, "flipped fan has a different star subdivision");
  return out;
}

TraceReport verify_trace(const CobordismFan& b, const FactorizationTrace& t) {
  TraceReport rep;
  auto fail = [&](std::optional<std::size_t> step, std::string msg) {
    if (rep.ok) rep.failed_step = step;
    rep.ok = false;
    rep.diagnostics.push_back(std::move(msg));
  };
  if (t.fans.size() != t.moves.size() + 1) {
    fail(std::nullopt, "expected one more fan than moves");
    return rep;
  }
  if (!(t.fans.front() == quotient_fan(b, lower_boundary(b))))
    fail(0, "first fan differs from the lower quotient");

  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const Move& mv = t.moves[i];
    std::vector<std::size_t> pos, neg;
    try {
      sign_classes(mv.relation, pos, neg);
    } catch (const Error& e) {
      fail(i, step_text(i) + ": " + e.detail());
      continue;
    }
    bool ordered = pos.empty() || neg.empty() || pos.back() < neg.front();
    std::vector<Integer> wm, wp;
    for (auto k : pos) wm.push_back(mv.relation[k]);
    for (auto k : neg) wp.push_back(-mv.relation[k]);
    if (!ordered || wm != mv.weights_minus || wp != mv.weights_plus)
      fail(i, step_text(i) + ": weights disagree with the relation");
    if (pos.empty() || neg.empty() || mv.kind != kind_for(pos.size(), neg.size()))
      fail(i, step_text(i) + ": kind disagrees with the relation signs");
    try {
      auto c = circuit_relation(mv.center_rays);
      bool flipped = sgn(c[0]) != sgn(mv.relation[0]);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) * (flipped ? -1 : 1) != sgn(mv.relation[k]))
          fail(i, step_text(i) + ": center rays do not realize the relation signs");
    } catch (const Error& e) {
      fail(i, step_text(i) + ": " + e.detail());
    }
    try {
      if (!(replay(t.fans[i], mv) == t.fans[i + 1]))
        fail(i, step_text(i) + ": replay does not give the next fan");
    } catch (const Error& e) {
      fail(i, step_text(i) + ": " + e.detail());
    }
  }
  if (!(t.fans.back() == quotient_fan(b, upper_boundary(b))))
    fail(t.moves.size(), "last fan differs from the upper quotient");

  bool regular = true;
  for (const auto& f : t.fans)
    for (const auto& c : f.max_cones())
      if (lattice_index(c.rays()) != 1) regular = false;
  if (regular) {
    for (std::size_t i = 0; i < t.moves.size(); ++i) {
      try {
        for (const auto& x : circuit_relation(t.moves[i].center_rays))
          if (abs(x) != 1) {
            fail(i, step_text(i) + ": smooth trace with a non-unit relation");
            break;
          }
      } catch (const Error&) {
      }
    }
  }
  return rep;
}

std::vector<Cone> touched_cones(const Fan& before, const Fan& after, const Move& m) {
  std::vector<std::size_t> pos, neg;
  sign_classes(m.relation, pos, neg);
  std::vector<Cone> out;
  auto collect = [&](const Fan& f, const std::vector<std::size_t>& omit) {
    for (auto i : omit) {
      RaySet cell = without(m.center_rays, i);
      for (const auto& mc : f.max_cones())
        if (has_face(mc, cell)) out.push_back(mc);
    }
  };
  collect(before, neg);
  collect(after, pos);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AuditEntry> singularity_audit(const FactorizationTrace& t) {
  std::vector<AuditEntry> bad;
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const Move& mv = t.moves[i];
    Integer w = product(mv.weights_minus) * product(mv.weights_plus);
    for (const auto& c : touched_cones(t.fans[i], t.fans[i + 1], mv)) {
      Integer idx = lattice_index(c.rays());
      if (w % idx != 0) bad.push_back({i, c, idx, w});
    }
  }
  return bad;
}

UpstairsAudit upstairs_audit(const CobordismFan& b) {
  UpstairsAudit out;
  auto pieces = decompose(b);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    Move mv = classify(p.cobordism, p.component);
    Integer w = product(mv.weights_minus) * product(mv.weights_plus);
    std::size_t top = 0;
    for (const auto& c : p.component.cones) top = std::max(top, c.num_rays());
    for (const auto& c : p.component.cones) {
      if (c.num_rays() != top) continue;
      Integer up = lattice_index(c.rays());
      for (const auto& x : mv.circuit->rays) {
        std::vector<LatticeVector> img;
        for (const auto& r : c.rays())
          if (!(r == x)) img.push_back(primitive(p.cobordism.projection()(r)));
        Integer idx = lattice_index(img);
        ++out.checked;
        if (up == 1) ++out.regular_checked;
        if ((w * up) % idx != 0) {
          Cone image = Cone::from_rays(b.projection().target_rank(), img);
          out.violations.push_back({i, c, std::move(image), idx, w * up});
        }
      }
    }
  }
  return out;
}

}  // namespace cobordize
