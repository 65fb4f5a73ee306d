#include "cobordize/lattice.hpp"

#include <sstream>

#include "cobordize/error.hpp"

namespace cobordize {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::zero_vector: return "zero_vector";
    case ErrorCode::not_primitive: return "not_primitive";
    case ErrorCode::rank_mismatch: return "rank_mismatch";
    case ErrorCode::dependent_generators: return "dependent_generators";
    case ErrorCode::not_a_circuit: return "not_a_circuit";
    case ErrorCode::not_strongly_convex: return "not_strongly_convex";
    case ErrorCode::not_a_fan: return "not_a_fan";
    case ErrorCode::not_simplicial: return "not_simplicial";
    case ErrorCode::outside_support: return "outside_support";
    case ErrorCode::support_mismatch: return "support_mismatch";
    case ErrorCode::not_a_cobordism: return "not_a_cobordism";
    case ErrorCode::orbit_fixed: return "orbit_fixed";
    case ErrorCode::not_in_fan: return "not_in_fan";
    case ErrorCode::not_pi_injective: return "not_pi_injective";
    case ErrorCode::quotient_not_geometric: return "quotient_not_geometric";
    case ErrorCode::not_minimal: return "not_minimal";
    case ErrorCode::not_closed: return "not_closed";
    case ErrorCode::non_elementary: return "non_elementary";
    case ErrorCode::not_collapsible: return "not_collapsible";
    case ErrorCode::replay_mismatch: return "replay_mismatch";
    case ErrorCode::construction_invalid: return "construction_invalid";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::rank_limit: return "rank_limit";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

LatticeVector::LatticeVector(std::initializer_list<long> xs) {
  coords_.reserve(xs.size());
  for (long x : xs) coords_.emplace_back(x);
}

bool LatticeVector::is_zero() const {
  for (const auto& c : coords_)
    if (sgn(c) != 0) return false;
  return true;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator*=(const Integer& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
  std::size_t n = std::min(a.rank(), b.rank());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.rank() <=> b.rank();
}

LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
LatticeVector operator*(const Integer& s, LatticeVector a) { return a *= s; }

RationalVector::RationalVector(const LatticeVector& v) {
  coords_.reserve(v.rank());
  for (const auto& c : v.coords()) coords_.emplace_back(c);
}

bool RationalVector::is_zero() const {
  for (const auto& c : coords_)
    if (sgn(c) != 0) return false;
  return true;
}

std::string RationalVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

RationalVector& RationalVector::operator+=(const RationalVector& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b) {
  std::size_t n = std::min(a.rank(), b.rank());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.rank() <=> b.rank();
}

RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
RationalVector operator*(const Rational& s, RationalVector a) { return a *= s; }

namespace {
void require_same_rank(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorCode::rank_mismatch,
                "vectors of rank " + std::to_string(a) + " and " + std::to_string(b));
}
}  // namespace

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  require_same_rank(a.rank(), b.rank());
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const LatticeVector& b) {
  require_same_rank(a.rank(), b.rank());
  Rational s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  require_same_rank(a.rank(), b.rank());
  Rational s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

LatticeVector unit_vector(std::size_t rank, std::size_t i) {
  LatticeVector v(rank);
  v[i] = 1;
  return v;
}

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v.coords()) g = gcd(g, c);
  return g;
}

LatticeVector clear_denominators(const RationalVector& v) {
  Integer l = 1;
  for (const auto& c : v.coords()) l = lcm(l, c.get_den());
  LatticeVector out(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  Integer g = content(out);
  if (g > 1)
    for (std::size_t i = 0; i < out.rank(); ++i) out[i] /= g;
  return out;
}

}  // namespace cobordize
