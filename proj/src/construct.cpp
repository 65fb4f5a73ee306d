#include "cobordize/construct.hpp"

#include <algorithm>
#include <map>

#include "cobordize/error.hpp"

namespace cobordize {

namespace {

LatticeVector homogenize(const RationalVector& p) {
  std::vector<Rational> xs(p.coords());
  xs.push_back(1);
  return clear_denominators(RationalVector(std::move(xs)));
}

RationalVector dehomogenize(const LatticeVector& v) {
  std::size_t n = v.rank() - 1;
  RationalVector p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = Rational(v[i], v[n]);
    p[i].canonicalize();
  }
  return p;
}

Rational eval(const LatticeVector& a, const RationalVector& m) { return dot(m, a); }

Rational min_over(const Polytope& p, const LatticeVector& a) {
  Rational best = eval(a, p.vertices().front());
  for (const auto& v : p.vertices()) best = std::min(best, eval(a, v));
  return best;
}

struct Block {
  std::vector<LatticeVector> rays;
  std::vector<Integer> coeffs;  // v0 = sum coeffs[i] * rays[i]
};

Block next_block(const Block& cur, const GlueSpec& g) {
  std::size_t n = cur.rays.size();
  if (g.exit >= n) throw Error(ErrorCode::construction_invalid, "exit ray index out of range");
  std::vector<long> mu = g.offsets;
  if (mu.empty()) mu.assign(n, 0);
  if (mu.size() != n) throw Error(ErrorCode::construction_invalid, "offsets have the wrong length");
  if (mu[g.exit] != 0) throw Error(ErrorCode::construction_invalid, "offset on the exit ray");
  const Integer& ce = cur.coeffs[g.exit];
  if (sgn(ce) == 0)
    throw Error(ErrorCode::construction_invalid, "exit facet contains v0 in its span");
  Block nb = cur;
  LatticeVector w = -cur.rays[g.exit];
  for (std::size_t i = 0; i < n; ++i) {
    if (i == g.exit) continue;
    w += Integer(mu[i]) * cur.rays[i];
    nb.coeffs[i] = cur.coeffs[i] + ce * mu[i];
  }
  nb.rays[g.exit] = w;
  nb.coeffs[g.exit] = -ce;
  return nb;
}

Block first_block(const WeightSpec& w) {
  if (w.a.size() + w.b.size() == 0)
    throw Error(ErrorCode::invalid_argument, "weight spec needs at least one weight");
  for (const auto& x : w.a)
    if (sgn(x) <= 0) throw Error(ErrorCode::invalid_argument, "weights must be positive");
  for (const auto& x : w.b)
    if (sgn(x) <= 0) throw Error(ErrorCode::invalid_argument, "weights must be positive");
  std::size_t n = w.a.size() + w.b.size() + w.r;
  Block b;
  LatticeVector v0(n);
  for (std::size_t i = 0; i < w.a.size(); ++i) v0[i] = w.a[i];
  for (std::size_t j = 0; j < w.b.size(); ++j) v0[w.a.size() + j] = -w.b[j];
  v0 = primitive(v0);
  for (std::size_t i = 0; i < n; ++i) b.rays.push_back(unit_vector(n, i));
  b.coeffs = v0.coords();
  return b;
}

}  // namespace

Polytope Polytope::hull(std::size_t n, std::vector<RationalVector> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "empty point set");
  std::vector<LatticeVector> gens;
  for (const auto& p : points) {
    if (p.rank() != n) throw Error(ErrorCode::rank_mismatch, "point of wrong rank");
    gens.push_back(homogenize(p));
  }
  Cone c = Cone::from_rays(n + 1, std::move(gens));
  if (c.dim() != n + 1) throw Error(ErrorCode::invalid_argument, "polytope is not full-dimensional");
  Polytope out;
  out.rank_ = n;
  for (const auto& r : c.rays()) out.vertices_.push_back(dehomogenize(r));
  std::sort(out.vertices_.begin(), out.vertices_.end());
  return out;
}

Polytope Polytope::from_inequalities(std::size_t n,
                                     const std::vector<std::pair<LatticeVector, Rational>>& ineqs) {
  std::vector<LatticeVector> rows;
  for (const auto& [a, c] : ineqs) {
    if (a.rank() != n) throw Error(ErrorCode::rank_mismatch, "inequality of wrong rank");
    Rational cc = c;
    cc.canonicalize();
    LatticeVector row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = a[i] * cc.get_den();
    row[n] = -cc.get_num();
    rows.push_back(row);
  }
  rows.push_back(unit_vector(n + 1, n));
  Cone c = cone_from_h(n + 1, {}, rows);
  std::vector<RationalVector> pts;
  for (const auto& r : c.rays()) {
    if (sgn(r[n]) <= 0) throw Error(ErrorCode::invalid_argument, "inequalities are unbounded");
    pts.push_back(dehomogenize(r));
  }
  return hull(n, std::move(pts));
}

std::vector<PolytopeFacet> polytope_facets(const Polytope& p) {
  std::size_t n = p.ambient_rank();
  std::vector<LatticeVector> gens;
  for (const auto& v : p.vertices()) gens.push_back(homogenize(v));
  std::vector<PolytopeFacet> out;
  for (const auto& f : facets_of(gens, n + 1).facets) {
    LatticeVector a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = f[i];
    Integer g = content(a);
    if (sgn(g) == 0) throw Error(ErrorCode::internal, "facet at infinity for a bounded polytope");
    for (std::size_t i = 0; i < n; ++i) a[i] /= g;
    Rational off(-f[n], g);
    off.canonicalize();
    out.push_back({a, off});
  }
  std::sort(out.begin(), out.end(),
            [](const PolytopeFacet& x, const PolytopeFacet& y) { return x.normal < y.normal; });
  return out;
}

bool is_simple(const Polytope& p) {
  auto fs = polytope_facets(p);
  for (const auto& v : p.vertices()) {
    std::size_t tight = 0;
    for (const auto& f : fs)
      if (eval(f.normal, v) == f.offset) ++tight;
    if (tight != p.ambient_rank()) return false;
  }
  return true;
}

Fan normal_fan(const Polytope& p) {
  auto fs = polytope_facets(p);
  std::vector<Cone> cones;
  for (const auto& v : p.vertices()) {
    std::vector<LatticeVector> normals;
    for (const auto& f : fs)
      if (eval(f.normal, v) == f.offset) normals.push_back(f.normal);
    cones.push_back(Cone::from_rays(p.ambient_rank(), std::move(normals)));
  }
  return Fan::make(p.ambient_rank(), std::move(cones));
}

CobordismFan from_weights(const WeightSpec& w) { return from_weight_sequence(w, {}); }

CobordismFan from_weight_sequence(const WeightSpec& first, const std::vector<GlueSpec>& glues) {
  std::vector<Block> blocks{first_block(first)};
  for (const auto& g : glues) blocks.push_back(next_block(blocks.back(), g));
  std::size_t n = blocks.front().rays.size();
  LatticeVector v0(blocks.front().coeffs);

  std::vector<Cone> cones;
  for (const auto& b : blocks) {
    Cone c = Cone::from_rays(n, b.rays);
    if (c.dim() != n) throw Error(ErrorCode::construction_invalid, "degenerate block");
    cones.push_back(std::move(c));
  }
  if (blocks.size() == 1) return CobordismFan::make(Fan::make(n, std::move(cones)), v0);

  try {
    CobordismFan out = CobordismFan::make(Fan::make(n, std::move(cones)), v0);
    if (out.components().size() != blocks.size())
      throw Error(ErrorCode::construction_invalid,
                  "blocks merge into " + std::to_string(out.components().size()) + " components");
    return out;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::construction_invalid) throw;
    throw Error(ErrorCode::construction_invalid, "inconsistent gluing: " + e.detail());
  }
}

CobordismFan from_polytopes(const Polytope& p, const Polytope& p2) {
  std::size_t n = p.ambient_rank();
  if (p2.ambient_rank() != n) throw Error(ErrorCode::rank_mismatch, "polytopes of different rank");
  auto fp = polytope_facets(p);
  auto fq = polytope_facets(p2);
  std::map<LatticeVector, Rational> off_p, off_q;
  for (const auto& f : fp) off_p[f.normal] = f.offset;
  for (const auto& f : fq) off_q[f.normal] = f.offset;
  Fan target_p = normal_fan(p);
  Fan target_q = normal_fan(p2);

  std::string last_failure = "no simple join found";
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<std::pair<LatticeVector, Rational>> ineqs;
    // <a, m> + t s >= c, scaled to integer coefficients
    auto push = [&](const LatticeVector& a, Rational t, const Rational& c) {
      t.canonicalize();
      Integer den = t.get_den();
      LatticeVector row(n + 1);
      for (std::size_t i = 0; i < n; ++i) row[i] = a[i] * den;
      row[n] = t.get_num();
      ineqs.push_back({row, c * den});
    };
    push(LatticeVector(n), 1, 0);
    push(LatticeVector(n), -1, -1);
    std::size_t idx = 0;
    for (const auto& [a, c] : off_p) {
      ++idx;
      auto it = off_q.find(a);
      if (it != off_q.end()) {
        push(a, -(it->second - c), c);
        continue;
      }
      Rational kappa = std::max(Rational(c - min_over(p2, a)), Rational(0)) + 1;
      if (attempt) kappa += Rational(attempt * idx, 2 * attempt + 5);
      push(a, kappa, c);
    }
    for (const auto& [a, c] : off_q) {
      ++idx;
      if (off_p.count(a)) continue;
      Rational kappa = std::max(Rational(c - min_over(p, a)), Rational(0)) + 1;
      if (attempt) kappa += Rational(attempt * idx, 3 * attempt + 7);
      push(a, -kappa, c - kappa);
    }
    Polytope joined = Polytope::from_inequalities(n + 1, ineqs);
    if (!is_simple(joined)) {
      last_failure = "join is not simple";
      continue;
    }
    Fan full = normal_fan(joined);
    LatticeVector up = unit_vector(n + 1, n);
    LatticeVector down = -up;
    std::vector<Cone> keep;
    for (const auto& c : full.all_cones()) {
      const auto& rs = c.rays();
      if (std::find(rs.begin(), rs.end(), up) == rs.end() &&
          std::find(rs.begin(), rs.end(), down) == rs.end())
        keep.push_back(c);
    }
    Fan fan = Fan::make_unchecked(n + 1, std::move(keep));
    for (const auto& v0 : {up, down}) {
      try {
        CobordismFan b = CobordismFan::make(fan, v0);
        if (quotient_fan(b, lower_boundary(b)) == target_p &&
            quotient_fan(b, upper_boundary(b)) == target_q && is_collapsible(b))
          return b;
        last_failure = "endpoint check failed";
      } catch (const Error& e) {
        last_failure = e.detail();
      }
    }
  }
  throw Error(ErrorCode::construction_invalid, "construction invalid for input: " + last_failure);
}

std::vector<std::vector<std::size_t>> projective_weight_order(const std::vector<Integer>& weights) {
  if (weights.empty()) throw Error(ErrorCode::invalid_argument, "empty weight list");
  std::map<Integer, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < weights.size(); ++i) groups[weights[i]].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [w, idx] : groups) out.push_back(std::move(idx));
  return out;
}

CobordismFan two_block_fixture(bool reversed) {
  WeightSpec w{{1, 1}, {1, 1}, 0};
  if (reversed) return from_weight_sequence(w, {GlueSpec{2, {2, 0, 0, 0}}});
  return from_weight_sequence(w, {GlueSpec{0, {0, 0, 2, 0}}});
}

CobordismFan random_chain(std::mt19937_64& rng, std::size_t max_rank, std::size_t max_blocks) {
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::size_t n = static_cast<std::size_t>(pick(2, static_cast<long>(max_rank)));
    std::size_t l = static_cast<std::size_t>(pick(1, static_cast<long>(n) - 1));
    std::size_t m = static_cast<std::size_t>(pick(1, static_cast<long>(n - l)));
    WeightSpec w;
    for (std::size_t i = 0; i < l; ++i) w.a.push_back(pick(1, 3));
    for (std::size_t i = 0; i < m; ++i) w.b.push_back(pick(1, 3));
    w.r = n - l - m;
    std::size_t blocks = static_cast<std::size_t>(pick(2, static_cast<long>(max_blocks)));
    Block cur = first_block(w);
    std::vector<GlueSpec> glues;
    for (std::size_t k = 1; k < blocks; ++k) {
      std::vector<std::size_t> exits;
      for (std::size_t i = 0; i < n; ++i)
        if (sgn(cur.coeffs[i]) != 0) exits.push_back(i);
      GlueSpec g;
      g.exit = exits[static_cast<std::size_t>(pick(0, static_cast<long>(exits.size()) - 1))];
      for (std::size_t i = 0; i < n; ++i) g.offsets.push_back(i == g.exit ? 0 : pick(-1, 2));
      cur = next_block(cur, g);
      glues.push_back(std::move(g));
    }
    try {
      return from_weight_sequence(w, glues);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::internal, "could not generate a chain fixture");
}

Polytope random_polytope(std::mt19937_64& rng, std::size_t n) {
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    try {
      Polytope p;
      if (n == 2) {
        std::vector<RationalVector> pts;
        long k = pick(3, 6);
        for (long i = 0; i < k; ++i) pts.push_back(RationalVector{pick(-3, 3), pick(-3, 3)});
        p = Polytope::hull(2, std::move(pts));
      } else {
        std::vector<std::pair<LatticeVector, Rational>> ineqs;
        for (std::size_t i = 0; i < n; ++i) {
          ineqs.push_back({unit_vector(n, i), Rational(-pick(1, 2))});
          ineqs.push_back({-unit_vector(n, i), Rational(-pick(1, 2))});
        }
        p = Polytope::from_inequalities(n, ineqs);
        long cuts = pick(1, 3);
        for (long c = 0; c < cuts; ++c) {
          LatticeVector a(n);
          for (std::size_t i = 0; i < n; ++i) a[i] = pick(-2, 2);
          if (a.is_zero()) continue;
          a = primitive(a);
          Rational lo = min_over(p, a);
          Rational hi = -min_over(p, -a);
          Rational t(pick(1, 3), 4);
          ineqs.push_back({a, lo + (hi - lo) * t});
          p = Polytope::from_inequalities(n, ineqs);
        }
      }
      if (is_simple(p)) return p;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::internal, "could not generate a simple polytope");
}

}  // namespace cobordize
