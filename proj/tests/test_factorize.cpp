#include <doctest.h>

#include "cobordize/construct.hpp"
#include "cobordize/factorize.hpp"
#include "cobordize/json_io.hpp"
#include "helpers.hpp"

using namespace cobordize;

namespace {

LatticeVector sum_positive(const Move& m) {
  std::size_t n = m.center_rays.front().rank();
  LatticeVector s(n);
  for (std::size_t i = 0; i < m.weights_minus.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) s[k] += m.weights_minus[i] * m.center_rays[i][k];
  return primitive(s);
}

const char* table_kind(std::size_t l, std::size_t m) {
  if (l >= 2 && m >= 2) return "flip";
  if (l == 1 && m >= 2) return "blowdown";
  if (l >= 2 && m == 1) return "blowup";
  return "identity";
}

}  // namespace

TEST_CASE("move kinds") {
  for (auto k : {MoveKind::flip, MoveKind::blowup, MoveKind::blowdown, MoveKind::identity})
    CHECK(move_kind_from_string(to_string(k)) == k);
  CHECK(code_of([] { move_kind_from_string("twist"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { kind_for(0, 2); }) == ErrorCode::invalid_argument);
}

TEST_CASE("Atiyah cobordism is a single flip") {
  auto b = from_weights({{1, 1}, {1, 1}, 0});
  auto t = factor(b);
  REQUIRE(t.moves.size() == 1);
  CHECK(t.moves[0].kind == MoveKind::flip);
  CHECK(t.moves[0].weights_minus == std::vector<Integer>{1, 1});
  CHECK(t.moves[0].weights_plus == std::vector<Integer>{1, 1});
  CHECK(t.moves[0].relation == std::vector<Integer>{1, 1, -1, -1});
  REQUIRE(t.moves[0].circuit);
  CHECK(t.moves[0].circuit->l == 2);
  CHECK(t.moves[0].circuit->m == 2);
  CHECK(t.moves[0].circuit->r == 0);
  CHECK(t.fans.front() == quotient_fan(b, lower_boundary(b)));
  CHECK(t.fans.back() == quotient_fan(b, upper_boundary(b)));
  CHECK(replay(t.fans[0], t.moves[0]) == t.fans[1]);
  CHECK(verify_trace(b, t).ok);
  auto pieces = decompose(b);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].cobordism.fan() == b.fan());
}

TEST_CASE("blowdown with exceptional weights (1,1)") {
  auto b = from_weights({{1}, {1, 1}, 0});
  auto t = factor(b);
  REQUIRE(t.moves.size() == 1);
  CHECK(t.moves[0].kind == MoveKind::blowdown);
  CHECK(t.moves[0].weights_minus == std::vector<Integer>{1});
  CHECK(t.moves[0].weights_plus == std::vector<Integer>{1, 1});
  // the source fan is a star subdivision of the target at the positive ray
  CHECK(star_subdivision(t.fans[1], t.moves[0].center_rays[0]) == t.fans[0]);
  CHECK(verify_trace(b, t).ok);
}

TEST_CASE("weighted blowup along P(2,3)") {
  auto b = from_weights({{2, 3}, {1}, 1});
  auto t = factor(b);
  REQUIRE(t.moves.size() == 1);
  const Move& m = t.moves[0];
  CHECK(m.kind == MoveKind::blowup);
  CHECK(m.weights_minus == std::vector<Integer>{2, 3});
  CHECK(m.weights_plus == std::vector<Integer>{1});
  // x1, x2 map to a basis; the new ray is the image of 2 x1 + 3 x2
  LatticeVector rho = sum_positive(m);
  CHECK(rho == m.center_rays[2]);
  CHECK(star_subdivision(t.fans[0], rho) == t.fans[1]);
  CHECK(singularity_audit(t).empty());
  CHECK(verify_trace(b, t).ok);
}

TEST_CASE("l = m = 1 gives identity moves") {
  for (std::size_t r = 0; r <= 3; ++r)
    for (Integer a = 1; a <= 3; ++a) {
      auto b = from_weights({{a}, {Integer(4) - a}, r});
      auto t = factor(b);
      REQUIRE(t.moves.size() == 1);
      CHECK(t.moves[0].kind == MoveKind::identity);
      CHECK(t.fans[0] == t.fans[1]);
      CHECK(verify_trace(b, t).ok);
    }
}

TEST_CASE("kind table on 200 weight tuples") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    WeightSpec w;
    std::size_t l = static_cast<std::size_t>(pick(rng, 1, 3));
    std::size_t m = static_cast<std::size_t>(pick(rng, 1, 3));
    for (std::size_t i = 0; i < l; ++i) w.a.push_back(pick(rng, 1, 5));
    for (std::size_t i = 0; i < m; ++i) w.b.push_back(pick(rng, 1, 5));
    w.r = static_cast<std::size_t>(pick(rng, 0, 1));
    auto b = from_weights(w);
    REQUIRE(b.components().size() == 1);
    Move mv = classify(b, b.components()[0]);
    CHECK(std::string(to_string(mv.kind)) == table_kind(l, m));
    // weights come back up to a common factor
    Integer g = 0;
    for (const auto& x : w.a) g = gcd(g, x);
    for (const auto& x : w.b) g = gcd(g, x);
    std::vector<Integer> a, bb;
    for (const auto& x : w.a) a.push_back(x / g);
    for (const auto& x : w.b) bb.push_back(x / g);
    std::sort(a.begin(), a.end());
    std::sort(bb.begin(), bb.end());
    auto wm = mv.weights_minus, wp = mv.weights_plus;
    std::sort(wm.begin(), wm.end());
    std::sort(wp.begin(), wp.end());
    CHECK(wm == a);
    CHECK(wp == bb);
  }
}

TEST_CASE("flip as blow-up then blow-down: Atiyah") {
  auto t = factor(from_weights({{1, 1}, {1, 1}, 0}));
  auto ff = flip_as_blowup_blowdown(t.moves[0], t.fans[0]);
  CHECK(ff.rho == LatticeVector{1, 1, 0});
  CHECK(ff.middle == star_subdivision(t.fans[0], LatticeVector{1, 1, 0}));
  CHECK(ff.up.kind == MoveKind::blowup);
  CHECK(ff.down.kind == MoveKind::blowdown);
  CHECK(replay(t.fans[0], ff.up) == ff.middle);
  CHECK(replay(ff.middle, ff.down) == t.fans[1]);
  for (const auto& c : ff.middle.max_cones()) CHECK(lattice_index(c.rays()) == 1);
}

TEST_CASE("flip as blow-up then blow-down: weights (1,2),(1,1)") {
  auto t = factor(from_weights({{1, 2}, {1, 1}, 0}));
  const Move& m = t.moves[0];
  REQUIRE(m.kind == MoveKind::flip);
  auto ff = flip_as_blowup_blowdown(m, t.fans[0]);
  CHECK(ff.rho == sum_positive(m));
  CHECK(ff.middle == star_subdivision(t.fans[0], ff.rho));
  CHECK(replay(ff.middle, ff.down) == t.fans[1]);
  // each middle cone omits exactly one positive center ray, and its index is that weight
  std::size_t seen = 0;
  for (const auto& c : ff.middle.max_cones()) {
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < m.weights_minus.size(); ++i)
      if (!std::binary_search(c.rays().begin(), c.rays().end(), m.center_rays[i])) missing.push_back(i);
    REQUIRE(missing.size() == 1);
    CHECK(lattice_index(c.rays()) == m.weights_minus[missing[0]]);
    ++seen;
  }
  CHECK(seen == 4);
}

TEST_CASE("flip factorization rejects non-flips") {
  auto t = factor(from_weights({{1}, {1}, 1}));
  CHECK(code_of([&] { flip_as_blowup_blowdown(t.moves[0], t.fans[0]); }) == ErrorCode::invalid_argument);
}

TEST_CASE("verify_trace detects tampering") {
  auto b = two_block_fixture(false);
  auto t = factor(b);
  REQUIRE(t.fans.size() == 3);
  CHECK(verify_trace(b, t).ok);

  auto bad = t;
  const Cone& c = bad.fans[1].max_cones()[0];
  LatticeVector s(c.ambient_rank());
  for (const auto& r : c.rays())
    for (std::size_t k = 0; k < s.rank(); ++k) s[k] += r[k];
  bad.fans[1] = star_subdivision(bad.fans[1], primitive(s));
  auto rep = verify_trace(b, bad);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failed_step);
  CHECK(*rep.failed_step == 0);
  CHECK_FALSE(rep.diagnostics.empty());

  auto rev = reversed(t);
  auto rr = verify_trace(b, rev);
  CHECK_FALSE(rr.ok);
  CHECK(*rr.failed_step == 0);
  CHECK(rr.diagnostics.front().find("lower quotient") != std::string::npos);

  // the reversed trace is a valid trace of the reversed cobordism
  auto op = CobordismFan::make(b.fan(), -b.v0());
  CHECK(verify_trace(op, rev).ok);

  auto wrong_kind = t;
  wrong_kind.moves[0].kind = MoveKind::identity;
  CHECK_FALSE(verify_trace(b, wrong_kind).ok);
}

TEST_CASE("inverse moves") {
  auto t = factor(from_weights({{2, 3}, {1}, 1}));
  Move inv = inverse(t.moves[0]);
  CHECK(inv.kind == MoveKind::blowdown);
  CHECK(replay(t.fans[1], inv) == t.fans[0]);
  CHECK(inverse(inv) == t.moves[0]);
  CHECK(code_of([&] { replay(t.fans[0], inv); }) == ErrorCode::replay_mismatch);
}

TEST_CASE("decomposition of the two-block fixture") {
  auto b = two_block_fixture(false);
  auto pieces = decompose(b);
  REQUIRE(pieces.size() == 2);
  auto order = collapsibility(b).order;
  const auto& first = b.components()[order[0]];
  auto col = elementary_collapse(b, first);
  CHECK(pieces[0].cobordism.fan() == elementary_cobordism(b, first).fan());
  CHECK(pieces[1].cobordism.fan() == elementary_cobordism(col, col.components()[0]).fan());
  CHECK(upper_boundary(pieces[0].cobordism) == lower_boundary(pieces[1].cobordism));

  auto t = factor(b);
  CHECK(t.order == order);
  for (const auto& m : t.moves) CHECK(m.kind == MoveKind::flip);
}

TEST_CASE("trivial cobordism has an empty trace") {
  Fan f = Fan::make(3, {Cone::from_rays(3, {unit_vector(3, 0), unit_vector(3, 1)})});
  auto b = CobordismFan::make(f, unit_vector(3, 2));
  CHECK(decompose(b).empty());
  auto t = factor(b);
  CHECK(t.moves.empty());
  REQUIRE(t.fans.size() == 1);
  CHECK(verify_trace(b, t).ok);
}

TEST_CASE("random chains factor and verify") {
  std::mt19937_64 rng(32);
  std::size_t flips = 0;
  for (int k = 0; k < 60; ++k) {
    auto b = random_chain(rng, 5, 4);
    auto t = factor(b);
    CHECK(t.moves.size() == b.components().size());
    CHECK(verify_trace(b, t).ok);
    CHECK(singularity_audit(t).empty());
    CHECK(upstairs_audit(b).violations.empty());
    for (std::size_t i = 0; i < t.moves.size(); ++i) {
      CHECK(std::string(to_string(t.moves[i].kind)) ==
            table_kind(t.moves[i].weights_minus.size(), t.moves[i].weights_plus.size()));
      if (t.moves[i].kind != MoveKind::flip) continue;
      auto ff = flip_as_blowup_blowdown(t.moves[i], t.fans[i]);
      CHECK(replay(ff.middle, ff.down) == t.fans[i + 1]);
      ++flips;
    }
  }
  CHECK(flips > 0);
}

TEST_CASE("factor is deterministic") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 10; ++k) {
    auto b = random_chain(rng, 4, 3);
    auto j = to_json(b).dump();
    auto t1 = factor(b);
    auto t2 = factor(cobordism_from_json(parse_json(j)));
    CHECK(t1 == t2);
    CHECK(to_json(t1).dump() == to_json(t2).dump());
  }
}
