#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "cobordize/lattice.hpp"

namespace cobordize {

// Inner description: <e, x> = 0 for equations, <f, x> >= 0 for facets.
struct HRep {
  std::vector<LatticeVector> equations;
  std::vector<LatticeVector> facets;
};

class Cone {
 public:
  Cone() = default;

  // Primitivizes, removes duplicates and non-extreme generators, rejects cones containing a line.
  static Cone from_rays(std::size_t ambient_rank, std::vector<LatticeVector> generators);
  static Cone zero(std::size_t ambient_rank);
  // Trusted constructor: rays already primitive, distinct, extreme, sorted.
  static Cone from_canonical_rays(std::size_t ambient_rank, std::vector<LatticeVector> rays);

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  std::size_t num_rays() const { return rays_.size(); }
  std::size_t dim() const { return dim_; }
  bool is_zero() const { return rays_.empty(); }
  bool is_simplicial() const { return dim_ == rays_.size(); }

  const HRep& h_rep() const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_;
  }
  friend bool operator<(const Cone& a, const Cone& b);

  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag once;
    HRep hrep;
  };
  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::shared_ptr<Cache> cache_;
};

// V -> H for cone(generators) in Q^n; facet normals are primitive and lie in span(generators).
HRep facets_of(const std::vector<LatticeVector>& generators, std::size_t n);

// H -> V: the cone {x : <e,x> = 0, <f,x> >= 0}. Throws if it contains a line.
Cone cone_from_h(std::size_t n, const std::vector<LatticeVector>& equations,
                 const std::vector<LatticeVector>& inequalities);

std::vector<Cone> faces(const Cone& c);
bool contains(const Cone& c, const RationalVector& v, bool relative_interior = false);
bool contains(const Cone& c, const LatticeVector& v, bool relative_interior = false);
bool contains_cone(const Cone& outer, const Cone& inner);
bool is_face_of(const Cone& face, const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
// Some point in the relative interior (sum of rays).
LatticeVector interior_point(const Cone& c);

}  // namespace cobordize
