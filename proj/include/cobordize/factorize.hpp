#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cobordize/cobordism.hpp"

namespace cobordize {

enum class MoveKind { flip, blowup, blowdown, identity };
const char* to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);
MoveKind kind_for(std::size_t l, std::size_t m);

struct Circuit {
  Cone cone;                         // minimal dependent cone upstairs
  std::vector<LatticeVector> rays;   // positive class first
  std::vector<Integer> relation;     // v0 expansion, scaled to gcd 1
  std::size_t l = 0, m = 0, r = 0;
};

struct Move {
  MoveKind kind = MoveKind::identity;
  std::vector<Integer> relation;            // positives first, then negatives
  std::vector<Integer> weights_minus;       // a_1..a_l
  std::vector<Integer> weights_plus;        // b_1..b_m
  std::vector<LatticeVector> center_rays;   // primitive images, same order as relation
  std::optional<Circuit> circuit;           // absent for moves read back from JSON

  friend bool operator==(const Move& a, const Move& b) {
    return a.kind == b.kind && a.relation == b.relation && a.weights_minus == b.weights_minus &&
           a.weights_plus == b.weights_plus && a.center_rays == b.center_rays;
  }
};

struct FactorizationTrace {
  std::vector<Fan> fans;
  std::vector<Move> moves;
  std::vector<std::size_t> order;

  friend bool operator==(const FactorizationTrace& a, const FactorizationTrace& b) {
    return a.fans == b.fans && a.moves == b.moves && a.order == b.order;
  }
};

struct ElementaryPiece {
  CobordismFan cobordism;
  FixedComponent component;
};

std::vector<ElementaryPiece> decompose(const CobordismFan& b);
Move classify(const CobordismFan& e, const FixedComponent& f0);
FactorizationTrace factor(const CobordismFan& b);
FactorizationTrace reversed(const FactorizationTrace& t);
Move inverse(const Move& m);

// Applies a move to a quotient fan by exchanging the two triangulations of its center.
Fan replay(const Fan& f, const Move& m);

struct FlipFactorization {
  Fan middle;
  Move up;    // blow-up from the source fan to middle
  Move down;  // blow-down from middle to the flipped fan
  LatticeVector rho;
};
FlipFactorization flip_as_blowup_blowdown(const Move& m, const Fan& f);

struct TraceReport {
  bool ok = true;
  std::optional<std::size_t> failed_step;
  std::vector<std::string> diagnostics;
};
TraceReport verify_trace(const CobordismFan& b, const FactorizationTrace& t);

// Cones created or destroyed by each move whose lattice index does not divide the
// product of the move's weights.
struct AuditEntry {
  std::size_t step = 0;
  Cone cone;
  Integer index;
  Integer weight_product;
};
std::vector<AuditEntry> singularity_audit(const FactorizationTrace& t);
// Cones on either side of a move that the move touches.
std::vector<Cone> touched_cones(const Fan& before, const Fan& after, const Move& m);

// Upstairs form of the audit: for each maximal cone D of a fixed component and each ray
// x of its minimal dependent cone, index(pi(D \ x)) must divide the weight product
// times index(D). For regular D this is the downstairs statement above.
struct UpstairsAuditEntry {
  std::size_t component = 0;
  Cone upstairs;
  Cone image;
  Integer index;
  Integer bound;
};
struct UpstairsAudit {
  std::size_t checked = 0;
  std::size_t regular_checked = 0;
  std::vector<UpstairsAuditEntry> violations;
};
UpstairsAudit upstairs_audit(const CobordismFan& b);

}  // namespace cobordize
