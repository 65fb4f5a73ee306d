#pragma once

#include <vector>

#include "cobordize/cone.hpp"

namespace cobordize {

class Fan {
 public:
  Fan() = default;

  // Keeps the inclusion-maximal cones and checks that all pairs meet in common faces.
  static Fan make(std::size_t ambient_rank, std::vector<Cone> cones);
  // Same, but skips the pairwise check. For subfans of a known fan.
  static Fan make_unchecked(std::size_t ambient_rank, std::vector<Cone> cones);

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<Cone>& max_cones() const { return max_cones_; }
  std::vector<LatticeVector> rays() const;
  std::vector<Cone> all_cones() const;
  bool is_simplicial() const;
  bool contains_cone(const Cone& c) const;
  bool support_contains(const RationalVector& v) const;
  bool support_contains(const LatticeVector& v) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.rank_ == b.rank_ && a.max_cones_ == b.max_cones_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Cone> max_cones_;
};

// Do two cones meet in a common face? Exact separation test.
bool meet_properly(const Cone& a, const Cone& b);

Fan star_subdivision(const Fan& f, const LatticeVector& rho);

struct StellarTransform {
  Fan sigma1;  // cones omitting a positive-coefficient ray
  Fan sigma2;  // cones omitting a negative-coefficient ray
  std::vector<Integer> relation;
};

// Both sign classes nonempty and at least two positive coefficients.
StellarTransform stellar_transform(const std::vector<LatticeVector>& sigma_rays);
// Any circuit with both sign classes nonempty; relation sign as given by circuit_relation.
StellarTransform stellar_transform_relaxed(const std::vector<LatticeVector>& sigma_rays);

bool same_support(const Fan& a, const Fan& b);
Fan common_refinement(const Fan& f1, const Fan& f2);
bool fans_equal(const Fan& f1, const Fan& f2);

}  // namespace cobordize
