#include <doctest.h>

#include <set>

#include "cobordize/linalg.hpp"
#include "helpers.hpp"

using namespace cobordize;

TEST_CASE("primitive") {
  CHECK(primitive(LatticeVector{2, 4, -6}) == LatticeVector{1, 2, -3});
  CHECK(primitive(LatticeVector{1, 0, 0}) == LatticeVector{1, 0, 0});
  CHECK(primitive(LatticeVector{0, -5}) == LatticeVector{0, -1});
  CHECK(code_of([] { primitive(LatticeVector{0, 0}); }) == ErrorCode::zero_vector);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    LatticeVector v{pick(rng, -9, 9), pick(rng, -9, 9), pick(rng, -9, 9)};
    if (v.is_zero()) continue;
    CHECK(primitive(primitive(v)) == primitive(v));
    CHECK(is_primitive(primitive(v)));
  }
}

TEST_CASE("quotient_projection examples") {
  auto p = quotient_projection(LatticeVector{1, 1, -1, -1}, 4);
  CHECK(p.target_rank() == 3);
  CHECK(p(LatticeVector{1, 1, -1, -1}).is_zero());
  CHECK(p(unit_vector(4, 0)) == LatticeVector{1, 0, 0});
  CHECK(p(unit_vector(4, 1)) == LatticeVector{0, 1, 0});
  CHECK(p(unit_vector(4, 2)) == LatticeVector{0, 0, 1});
  CHECK(p(unit_vector(4, 3)) == LatticeVector{1, 1, -1});

  auto q = quotient_projection(LatticeVector{0, 0, 1}, 3);
  CHECK(q(LatticeVector{4, -2, 7}) == LatticeVector{4, -2});

  auto r = quotient_projection(LatticeVector{2, 1}, 2);
  LatticeVector row = r.matrix().row(0);
  CHECK((row == LatticeVector{1, -2} || row == LatticeVector{-1, 2}));

  CHECK(code_of([] { quotient_projection(LatticeVector{2, 4}, 2); }) == ErrorCode::not_primitive);
}

TEST_CASE("quotient_projection is a surjection with kernel Z v0") {
  std::mt19937_64 rng(2);
  int done = 0;
  while (done < 200) {
    std::size_t n = static_cast<std::size_t>(pick(rng, 2, 5));
    LatticeVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = pick(rng, -6, 6);
    if (v.is_zero() || !is_primitive(v)) continue;
    ++done;
    auto p = quotient_projection(v, n);
    REQUIRE(p.target_rank() == n - 1);
    CHECK(p(v).is_zero());
    // Surjective over Z iff all Smith invariants are 1.
    auto inv = smith_invariants(p.matrix());
    CHECK(inv.size() == n - 1);
    for (const auto& d : inv) CHECK(d == 1);
  }
}

TEST_CASE("circuit_relation") {
  LatticeVector e1{1, 0}, e2{0, 1};
  CHECK(circuit_relation({e1, e2, LatticeVector{-1, -1}}) == std::vector<Integer>{1, 1, 1});
  CHECK(circuit_relation({e1, e2, LatticeVector{1, 1}}) == std::vector<Integer>{1, 1, -1});
  CHECK(code_of([] {
          circuit_relation({LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 2},
                            LatticeVector{2, 1}});
        }) == ErrorCode::not_a_circuit);
  // a zero coefficient is not a circuit either
  CHECK(code_of([] {
          circuit_relation({LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0},
                            LatticeVector{1, 1, 0}, LatticeVector{0, 0, 1}});
        }) == ErrorCode::not_a_circuit);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t k = static_cast<std::size_t>(pick(rng, 1, 4));
    std::vector<LatticeVector> vs;
    for (std::size_t i = 0; i < k + 1; ++i) {
      LatticeVector v(k);
      for (std::size_t j = 0; j < k; ++j) v[j] = pick(rng, -4, 4);
      vs.push_back(v);
    }
    std::vector<Integer> c;
    try {
      c = circuit_relation(vs);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_a_circuit);
      continue;
    }
    LatticeVector sum(k);
    Integer g = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      sum += c[i] * vs[i];
      g = gcd(g, c[i]);
      CHECK(sgn(c[i]) != 0);
    }
    CHECK(sum.is_zero());
    CHECK(g == 1);
    CHECK(sgn(c[0]) > 0);
  }
}

TEST_CASE("lp_feasible examples") {
  LatticeVector e1{1, 0}, e2{0, 1};
  CHECK_FALSE(lp_feasible(std::vector<LatticeVector>{}, {e1, e2}, LatticeVector{1, 1}));
  CHECK(lp_feasible(std::vector<LatticeVector>{}, {e1}, e2));
  std::vector<LatticeVector> units;
  for (std::size_t i = 0; i < 4; ++i) units.push_back(unit_vector(4, i));
  CHECK(lp_feasible(std::vector<LatticeVector>{units[0]}, units, LatticeVector{1, 1, -1, -1}));
  CHECK(code_of([] {
          lp_feasible(std::vector<LatticeVector>{}, {LatticeVector{1, 0}}, LatticeVector{1, 0, 0});
        }) == ErrorCode::rank_mismatch);
}

namespace {

// Brute force: candidate covectors are +-basis vectors of the solution spaces of every
// subset of constraints taken as tight.
bool brute_feasible(const std::vector<LatticeVector>& eq, const std::vector<LatticeVector>& ge,
                    const LatticeVector& s, std::size_t n) {
  auto ok = [&](const LatticeVector& f) {
    for (const auto& e : eq)
      if (sgn(dot(f, e)) != 0) return false;
    for (const auto& g : ge)
      if (sgn(dot(f, g)) < 0) return false;
    return sgn(dot(f, s)) < 0;
  };
  std::size_t k = ge.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<LatticeVector> rows = eq;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) rows.push_back(ge[i]);
    for (const auto& v : kernel_basis(rows, n))
      if (ok(v) || ok(-v)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("lp_feasible agrees with brute force") {
  std::mt19937_64 rng(4);
  int feasible = 0;
  for (int t = 0; t < 400; ++t) {
    std::size_t n = static_cast<std::size_t>(pick(rng, 1, 4));
    auto rnd = [&] {
      LatticeVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = pick(rng, -3, 3);
      return v;
    };
    std::vector<LatticeVector> eq, ge;
    for (long i = pick(rng, 0, 1); i > 0; --i) eq.push_back(rnd());
    for (long i = pick(rng, 0, 5); i > 0; --i) ge.push_back(rnd());
    LatticeVector s = rnd();
    bool expect = brute_feasible(eq, ge, s, n);
    feasible += expect;
    CHECK(lp_feasible(eq, ge, s) == expect);
  }
  CHECK(feasible > 50);
}

TEST_CASE("lattice_index") {
  CHECK(lattice_index({LatticeVector{1, 0}, LatticeVector{0, 1}}) == 1);
  CHECK(lattice_index({LatticeVector{1, 0}, LatticeVector{1, 2}}) == 2);
  CHECK(lattice_index({LatticeVector{2, 0, 0}}) == 2);
  CHECK(code_of([] { lattice_index({LatticeVector{1, 2}, LatticeVector{2, 4}}); }) ==
        ErrorCode::dependent_generators);
}

TEST_CASE("hermite and smith forms") {
  IntMatrix m = IntMatrix::from_rows({LatticeVector{2, 4}, LatticeVector{6, 8}}, 2);
  auto inv = smith_invariants(m);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == 2);
  CHECK(inv[1] == 4);
  CHECK(determinant({LatticeVector{2, 4}, LatticeVector{6, 8}}) == -8);
  auto h = hermite_normal_form(m);
  CHECK(h.rows() == 2);
  CHECK(abs(h.at(0, 0) * h.at(1, 1)) == 8);
}

TEST_CASE("homogeneous_feasible") {
  // x > 0, y > 0, x + y = 0 is infeasible; dropping the equation makes it feasible
  std::vector<LinearConstraint> cs{{LatticeVector{1, 0}, Relation::gt},
                                   {LatticeVector{0, 1}, Relation::gt}};
  CHECK(homogeneous_feasible(cs, 2));
  cs.push_back({LatticeVector{1, 1}, Relation::eq});
  CHECK_FALSE(homogeneous_feasible(cs, 2));
}
