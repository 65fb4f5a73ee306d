#pragma once

#include <random>
#include <utility>
#include <vector>

#include "cobordize/cobordism.hpp"

namespace cobordize {

class Polytope {
 public:
  Polytope() = default;
  // Convex hull of the points; must be full-dimensional.
  static Polytope hull(std::size_t ambient_rank, std::vector<RationalVector> points);
  // {m : <a_j, m> >= c_j for all j}; must be bounded and full-dimensional.
  static Polytope from_inequalities(std::size_t ambient_rank,
                                    const std::vector<std::pair<LatticeVector, Rational>>& ineqs);
  std::size_t ambient_rank() const { return rank_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  friend bool operator==(const Polytope&, const Polytope&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<RationalVector> vertices_;  // sorted
};

// <normal, m> >= offset, normal primitive and pointing inward.
struct PolytopeFacet {
  LatticeVector normal;
  Rational offset;
};
std::vector<PolytopeFacet> polytope_facets(const Polytope& p);
bool is_simple(const Polytope& p);
// Inner normal fan: one maximal cone per vertex.
Fan normal_fan(const Polytope& p);

struct WeightSpec {
  std::vector<Integer> a;
  std::vector<Integer> b;
  std::size_t r = 0;
};

// Leave the current block through the facet opposite ray `exit`; the new ray is
// -exit + sum offsets[g] * g. Leaving through a negative-weight ray reverses the flow.
struct GlueSpec {
  std::size_t exit = 0;
  std::vector<long> offsets;
};

CobordismFan from_weights(const WeightSpec& w);
CobordismFan from_weight_sequence(const WeightSpec& first, const std::vector<GlueSpec>& glues);
CobordismFan from_polytopes(const Polytope& p, const Polytope& p2);

// Blocks of equal weight in increasing weight order.
std::vector<std::vector<std::size_t>> projective_weight_order(const std::vector<Integer>& weights);

// Two Atiyah blocks; with reversed = true the second is glued through a negative ray.
CobordismFan two_block_fixture(bool reversed);

// Random fixtures for property tests.
CobordismFan random_chain(std::mt19937_64& rng, std::size_t max_rank, std::size_t max_blocks);
Polytope random_polytope(std::mt19937_64& rng, std::size_t rank);

}  // namespace cobordize
