#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cobordize/fan.hpp"
#include "cobordize/linalg.hpp"

namespace cobordize {

enum class Direction { to_zero, to_infinity };

struct FixedComponent {
  std::size_t id = 0;
  std::vector<Cone> cones;  // canonical order; cones.front() is the component key
};

struct PredecessorEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<Cone> witnesses;
};

struct PredecessorGraph {
  std::vector<FixedComponent> components;
  std::vector<PredecessorEdge> edges;       // between distinct components
  std::vector<PredecessorEdge> self_loops;  // reported separately
};

struct Collapsibility {
  bool collapsible = true;
  std::vector<std::size_t> order;          // topological order when collapsible
  std::vector<std::size_t> cycle;          // component ids along a cycle otherwise
  std::vector<PredecessorEdge> cycle_edges;
};

class CobordismFan {
 public:
  // With require_boundaries = false any K*-action fan is accepted (e.g. complete fans).
  static CobordismFan make(Fan fan, LatticeVector v0, bool require_boundaries = true);

  const Fan& fan() const;
  const LatticeVector& v0() const;
  const ProjectionMap& projection() const;

  // All cones of the fan in canonical order, with per-cone data.
  const std::vector<Cone>& cones() const;
  std::optional<std::size_t> index_of(const Cone& c) const;
  bool is_dependent(std::size_t i) const;
  std::optional<std::size_t> limit_index(std::size_t i, Direction d) const;
  std::optional<std::size_t> component_of(std::size_t i) const;
  // Indices of cones with exactly one more ray containing cone i.
  const std::vector<std::size_t>& cofaces(std::size_t i) const;
  const std::vector<FixedComponent>& components() const;

  struct Data;

 private:
  std::shared_ptr<const Data> data_;
};

std::optional<Cone> limit_orbit(const CobordismFan& b, const Cone& tau, Direction d);
// The LP criterion: does the limit exist inside the maximal cone delta?
bool limit_exists_in(const CobordismFan& b, const Cone& tau, const Cone& delta, Direction d);
bool limit_exists_lp(const CobordismFan& b, const Cone& tau, Direction d);

Fan lower_boundary(const CobordismFan& b);
Fan upper_boundary(const CobordismFan& b);
Fan quotient_fan(const CobordismFan& b, const Fan& subfan);

std::vector<FixedComponent> fixed_components(const CobordismFan& b);
PredecessorGraph predecessor_graph(const CobordismFan& b);
Collapsibility collapsibility(const PredecessorGraph& g);
Collapsibility collapsibility(const CobordismFan& b);
bool is_collapsible(const CobordismFan& b);

CobordismFan elementary_collapse(const CobordismFan& b, const FixedComponent& f0);
CobordismFan elementary_cobordism(const CobordismFan& b, const FixedComponent& f0);

// Coefficients of v0 in the basis of rays(c); requires v0 in span(c).
std::vector<Rational> v0_expansion(const CobordismFan& b, const Cone& c);
// Dependent cones of the component none of whose facets is dependent.
std::vector<Cone> minimal_dependent_cones(const CobordismFan& b, const FixedComponent& f);

std::string to_dot(const CobordismFan& b, const PredecessorGraph& g);

}  // namespace cobordize
