#include <doctest.h>

#include <set>

#include "cobordize/construct.hpp"
#include "cobordize/factorize.hpp"
#include "cobordize/json_io.hpp"
#include "helpers.hpp"

using namespace cobordize;

namespace {

RationalVector pt(std::initializer_list<long> xs) {
  RationalVector v(xs.size());
  std::size_t i = 0;
  for (long x : xs) v[i++] = x;
  return v;
}

Polytope simplex2(long k) { return Polytope::hull(2, {pt({0, 0}), pt({k, 0}), pt({0, k})}); }

bool only_identities(const FactorizationTrace& t) {
  for (const auto& m : t.moves)
    if (m.kind != MoveKind::identity) return false;
  return true;
}

void check_join(const Polytope& p, const Polytope& q) {
  auto b = from_polytopes(p, q);
  CHECK(is_collapsible(b));
  CHECK(quotient_fan(b, lower_boundary(b)) == normal_fan(p));
  CHECK(quotient_fan(b, upper_boundary(b)) == normal_fan(q));
  auto t = factor(b);
  CHECK(verify_trace(b, t).ok);
  auto up = upstairs_audit(b);
  CHECK(up.violations.empty());
}

}  // namespace

TEST_CASE("from_weights") {
  auto b = from_weights({{1, 1}, {1, 1}, 0});
  CHECK(b.v0() == LatticeVector{1, 1, -1, -1});
  CHECK(b.fan().max_cones().size() == 1);
  CHECK(b.fan().rays().size() == 4);
  // v0 is primitivized
  CHECK(from_weights({{2, 4}, {6}, 1}).v0() == LatticeVector{1, 2, -3, 0});
  CHECK(code_of([] { from_weights({{}, {}, 2}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { from_weights({{1, 0}, {1}, 0}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { from_weights({{1}, {-1}, 0}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("weight sequences") {
  WeightSpec w{{1, 1}, {1, 1}, 0};
  auto one = from_weight_sequence(w, {});
  CHECK(one.fan() == from_weights(w).fan());
  CHECK(one.v0() == from_weights(w).v0());

  auto two = from_weight_sequence(w, {GlueSpec{0, {0, 0, 2, 0}}});
  CHECK(two.components().size() == 2);
  CHECK(predecessor_graph(two).edges.size() == 1);
  CHECK(two.fan() == two_block_fixture(false).fan());

  WeightSpec wz{{1, 1}, {1, 1}, 1};
  CHECK(code_of([&] { from_weight_sequence(wz, {GlueSpec{4, {0, 0, 0, 0, 0}}}); }) ==
        ErrorCode::construction_invalid);
  CHECK(code_of([&] { from_weight_sequence(w, {GlueSpec{7, {0, 0, 0, 0}}}); }) ==
        ErrorCode::construction_invalid);
  CHECK(code_of([&] { from_weight_sequence(w, {GlueSpec{0, {0, 0}}}); }) ==
        ErrorCode::construction_invalid);
  CHECK(code_of([&] { from_weight_sequence(w, {GlueSpec{0, {1, 0, 0, 0}}}); }) ==
        ErrorCode::construction_invalid);
}

TEST_CASE("reversed two-block fixture stays collapsible") {
  auto b = two_block_fixture(true);
  CHECK(b.components().size() == 2);
  auto g = predecessor_graph(b);
  CHECK(g.edges.size() == 1);
  CHECK(is_collapsible(b));
}

TEST_CASE("polytopes") {
  auto sq = Polytope::hull(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1}), pt({0, 0}),
                               RationalVector{Rational(1, 2), Rational(1, 3)}});
  CHECK(sq.vertices().size() == 4);
  auto sq2 = Polytope::from_inequalities(
      2, {{LatticeVector{1, 0}, 0}, {LatticeVector{0, 1}, 0}, {LatticeVector{-1, 0}, -1}, {LatticeVector{0, -1}, -1}});
  CHECK(sq == sq2);
  CHECK(polytope_facets(sq).size() == 4);
  CHECK(is_simple(sq));
  Fan nf = normal_fan(sq);
  CHECK(nf.max_cones().size() == 4);
  CHECK(nf.rays() == std::vector<LatticeVector>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});

  auto octa = Polytope::hull(3, {pt({1, 0, 0}), pt({-1, 0, 0}), pt({0, 1, 0}), pt({0, -1, 0}),
                                 pt({0, 0, 1}), pt({0, 0, -1})});
  CHECK(polytope_facets(octa).size() == 8);
  CHECK_FALSE(is_simple(octa));
  CHECK_FALSE(normal_fan(octa).is_simplicial());

  CHECK(code_of([] { Polytope::hull(2, {pt({0, 0}), pt({1, 1}), pt({2, 2})}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { Polytope::from_inequalities(2, {{LatticeVector{1, 0}, 0}, {LatticeVector{0, 1}, 0}}); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("join of equal simplices") {
  auto p = simplex2(1);
  auto b = from_polytopes(p, p);
  CHECK(quotient_fan(b, lower_boundary(b)) == normal_fan(p));
  CHECK(quotient_fan(b, upper_boundary(b)) == normal_fan(p));
  auto t = factor(b);
  CHECK(only_identities(t));
  CHECK(verify_trace(b, t).ok);
}

TEST_CASE("join of P2 and its blow-up at a fixed point") {
  auto p = simplex2(2);
  auto q = Polytope::hull(2, {pt({1, 0}), pt({2, 0}), pt({0, 2}), pt({0, 1})});
  // the corner x + y >= 1 has inner normal (1,1)
  CHECK(normal_fan(q) == star_subdivision(normal_fan(p), LatticeVector{1, 1}));
  check_join(p, q);
  auto t = factor(from_polytopes(p, q));
  std::size_t blow = 0;
  for (const auto& m : t.moves) {
    if (m.kind == MoveKind::blowup || m.kind == MoveKind::blowdown) ++blow;
    CHECK(m.kind != MoveKind::flip);
  }
  CHECK(blow == 1);
  CHECK(t.fans.front() == normal_fan(p));
  CHECK(t.fans.back() == normal_fan(q));
  check_join(q, p);
}

TEST_CASE("join of a square and its rotation") {
  auto sq = Polytope::hull(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
  auto rot = Polytope::hull(2, {pt({0, 0}), pt({0, 1}), pt({-1, 0}), pt({-1, 1})});
  CHECK(normal_fan(sq) == normal_fan(rot));
  auto b = from_polytopes(sq, rot);
  auto t = factor(b);
  CHECK(only_identities(t));
  CHECK(verify_trace(b, t).ok);
}

TEST_CASE("random polytope joins, rank 2") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 20; ++k) check_join(random_polytope(rng, 2), random_polytope(rng, 2));
}

TEST_CASE("random polytope joins, rank 3") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 10; ++k) check_join(random_polytope(rng, 3), random_polytope(rng, 3));
}

TEST_CASE("projective weight order") {
  using B = std::vector<std::vector<std::size_t>>;
  CHECK(projective_weight_order({0, 0, 1, 1}) == B{{0, 1}, {2, 3}});
  CHECK(projective_weight_order({5, 5, 5}) == B{{0, 1, 2}});
  CHECK(projective_weight_order({3, 0, 1, 1, 3}) == B{{1}, {2, 3}, {0, 4}});
  CHECK(code_of([] { projective_weight_order({}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("projective weight order matches linear actions on P^n") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(pick(rng, 1, 4));
    std::vector<Integer> w;
    for (std::size_t i = 0; i <= n; ++i) w.push_back(pick(rng, 0, 3));
    auto blocks = projective_weight_order(w);
    if (blocks.size() < 2) continue;
    // rays e_1..e_n and e_0 = -(e_1+...+e_n); v0 = sum (w_i - w_0) e_i
    std::vector<LatticeVector> rays;
    LatticeVector e0(n);
    for (std::size_t i = 0; i < n; ++i) e0[i] = -1;
    rays.push_back(e0);
    for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
    std::vector<Cone> cones;
    for (std::size_t skip = 0; skip <= n; ++skip) {
      std::vector<LatticeVector> rs;
      for (std::size_t i = 0; i <= n; ++i)
        if (i != skip) rs.push_back(rays[i]);
      cones.push_back(Cone::from_rays(n, rs));
    }
    LatticeVector v0(n);
    for (std::size_t i = 0; i < n; ++i) v0[i] = w[i + 1] - w[0];
    auto b = CobordismFan::make(Fan::make(n, cones), primitive(v0), false);
    REQUIRE(b.components().size() == blocks.size());
    // each component's minimal dependent cone is spanned by the rays outside its block
    std::vector<std::size_t> block_of_comp(blocks.size());
    for (const auto& f : b.components()) {
      auto md = minimal_dependent_cones(b, f);
      REQUIRE(md.size() == 1);
      std::set<std::size_t> outside;
      for (std::size_t i = 0; i <= n; ++i)
        if (std::binary_search(md[0].rays().begin(), md[0].rays().end(), rays[i])) outside.insert(i);
      bool found = false;
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::set<std::size_t> comp;
        for (std::size_t i = 0; i <= n; ++i)
          if (std::find(blocks[k].begin(), blocks[k].end(), i) == blocks[k].end()) comp.insert(i);
        if (comp == outside) {
          block_of_comp[f.id] = k;
          found = true;
        }
      }
      CHECK(found);
    }
    for (const auto& e : predecessor_graph(b).edges) CHECK(block_of_comp[e.from] < block_of_comp[e.to]);
    CHECK(is_collapsible(b));
  }
}

TEST_CASE("random chains") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 30; ++t) {
    auto b = random_chain(rng, 5, 4);
    CHECK(b.components().size() >= 2);
    CHECK(b.fan().is_simplicial());
    CHECK(lower_boundary(b).max_cones().size() > 0);
    CHECK(upper_boundary(b).max_cones().size() > 0);
  }
}

TEST_CASE("json round trips") {
  auto b = two_block_fixture(false);
  auto t = factor(b);
  CHECK(fan_from_json(to_json(b.fan())) == b.fan());
  auto b2 = cobordism_from_json(to_json(b));
  CHECK(b2.fan() == b.fan());
  CHECK(b2.v0() == b.v0());
  CHECK(trace_from_json(to_json(t)) == t);
  CHECK(move_from_json(to_json(t.moves[0])) == t.moves[0]);
  auto p = Polytope::hull(2, {pt({0, 0}), RationalVector{Rational(3, 2), 0}, pt({0, 1})});
  CHECK(polytope_from_json(to_json(p)) == p);
  CHECK(to_json(p)["vertices"][0][0] == "0/1");
  CHECK(to_json(p)["vertices"][2][0] == "3/2");
  auto j = parse_json(R"({"ambient_rank": 2, "vertices": [["0","0"], [1, 0], ["0", "1/2"]]})");
  CHECK(polytope_from_json(j).vertices().size() == 3);

  CHECK(code_of([] { parse_json("{"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { fan_from_json(parse_json(R"({"ambient_rank": 2})")); }) == ErrorCode::parse_error);
  CHECK(code_of([] { move_from_json(parse_json(R"({"kind": "flop"})")); }) == ErrorCode::parse_error);
}
