#include "cobordize/linalg.hpp"

#include <algorithm>
#include <map>

#include "cobordize/error.hpp"

namespace cobordize {

namespace {
int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rank() != cols)
      throw Error(ErrorCode::rank_mismatch, "row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

LatticeVector IntMatrix::row(std::size_t i) const {
  LatticeVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

LatticeVector IntMatrix::apply(const LatticeVector& v) const {
  if (v.rank() != cols_) throw Error(ErrorCode::rank_mismatch, "matrix/vector size mismatch");
  LatticeVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::rank_mismatch, "matrix product size mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a.at(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw Error(ErrorCode::zero_vector, "zero has no primitive generator");
  LatticeVector out(v);
  if (g != 1)
    for (std::size_t i = 0; i < out.rank(); ++i) out[i] /= g;
  return out;
}

bool is_primitive(const LatticeVector& v) { return content(v) == 1; }

namespace {

using RatRows = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < a[r].size(); ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RatRows to_rat_rows(const std::vector<LatticeVector>& vs) {
  RatRows rows;
  rows.reserve(vs.size());
  for (const auto& v : vs) {
    std::vector<Rational> r;
    r.reserve(v.rank());
    for (const auto& c : v.coords()) r.emplace_back(c);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::size_t common_rank(const std::vector<LatticeVector>& vs) {
  if (vs.empty()) return 0;
  std::size_t n = vs.front().rank();
  for (const auto& v : vs)
    if (v.rank() != n) throw Error(ErrorCode::rank_mismatch, "vectors of differing rank");
  return n;
}

// Integer row reduction of the first `limit` columns (rows r.. zeroed below pivots).
// Returns the number of pivot rows. With `reduce_above`, entries above pivots are
// reduced into [0, pivot).
std::size_t integer_echelon(IntMatrix& m, std::size_t limit, bool reduce_above) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = r; i < m.rows(); ++i) {
        if (sgn(m.at(i, c)) == 0) continue;
        if (best == m.rows() || cmpabs(m.at(i, c), m.at(best, c)) < 0) best = i;
      }
      if (best == m.rows()) break;
      m.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (sgn(m.at(i, c)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= q * m.at(r, j);
        if (sgn(m.at(i, c)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m.rows() || sgn(m.at(r, c)) == 0) continue;
    if (sgn(m.at(r, c)) < 0)
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
    if (reduce_above) {
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
        if (sgn(q) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= q * m.at(r, j);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank_of(const std::vector<LatticeVector>& vectors) {
  if (vectors.empty()) return 0;
  std::size_t n = common_rank(vectors);
  auto rows = to_rat_rows(vectors);
  return rref(rows, n).size();
}

std::size_t rank_of(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return 0;
  std::size_t n = vectors.front().rank();
  RatRows rows;
  for (const auto& v : vectors) {
    if (v.rank() != n) throw Error(ErrorCode::rank_mismatch, "vectors of differing rank");
    rows.push_back(v.coords());
  }
  return rref(rows, n).size();
}

Integer determinant(const std::vector<LatticeVector>& rows) {
  std::size_t n = rows.size();
  if (n == 0) return 1;
  IntMatrix m = IntMatrix::from_rows(rows, n);
  // Bareiss fraction-free elimination.
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m.at(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m.at(p, k)) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), m.at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  Integer d = m.at(n - 1, n - 1);
  return sign > 0 ? d : Integer(-d);
}

std::optional<std::vector<Rational>> solve_in_span(const std::vector<LatticeVector>& basis,
                                                   const RationalVector& target) {
  std::size_t k = basis.size();
  std::size_t n = target.rank();
  for (const auto& b : basis)
    if (b.rank() != n) throw Error(ErrorCode::rank_mismatch, "basis/target rank mismatch");
  // n equations in k unknowns, augmented with the target.
  RatRows a(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = basis[j][i];
    a[i][k] = target[i];
  }
  auto piv = rref(a, k + 1);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  if (piv.size() != k) throw Error(ErrorCode::dependent_generators, "basis is not independent");
  std::vector<Rational> c(k);
  for (std::size_t r = 0; r < piv.size(); ++r) c[piv[r]] = a[r][k];
  return c;
}

std::optional<std::vector<Rational>> solve_in_span(const std::vector<LatticeVector>& basis,
                                                   const LatticeVector& target) {
  return solve_in_span(basis, RationalVector(target));
}

std::vector<LatticeVector> kernel_basis(const std::vector<LatticeVector>& rows, std::size_t n) {
  for (const auto& r : rows)
    if (r.rank() != n) throw Error(ErrorCode::rank_mismatch, "row length differs from n");
  auto a = to_rat_rows(rows);
  auto piv = rref(a, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<LatticeVector> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    out.push_back(clear_denominators(v));
  }
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t r = integer_echelon(h, h.cols(), true);
  IntMatrix out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out.at(i, j) = h.at(i, j);
  return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Integer> d;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto find_min = [&](std::size_t& bi, std::size_t& bj) {
      bool found = false;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (sgn(a.at(i, j)) == 0) continue;
          if (!found || cmpabs(a.at(i, j), a.at(bi, bj)) < 0) {
            bi = i;
            bj = j;
            found = true;
          }
        }
      return found;
    };
    std::size_t bi = 0, bj = 0;
    if (!find_min(bi, bj)) break;
    for (;;) {
      a.swap_rows(t, bi);
      for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, t), a.at(i, bj));
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a.at(i, t)) == 0) continue;
        Integer q = a.at(i, t) / a.at(t, t);
        for (std::size_t j = t; j < cols; ++j) a.at(i, j) -= q * a.at(t, j);
        if (sgn(a.at(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a.at(t, j)) == 0) continue;
        Integer q = a.at(t, j) / a.at(t, t);
        for (std::size_t i = t; i < rows; ++i) a.at(i, j) -= q * a.at(i, t);
        if (sgn(a.at(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest nonzero of row/column t to the pivot.
        bi = t;
        bj = t;
        for (std::size_t i = t; i < rows; ++i)
          if (sgn(a.at(i, t)) != 0 && cmpabs(a.at(i, t), a.at(bi, bj)) < 0) { bi = i; bj = t; }
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a.at(t, j)) != 0 && cmpabs(a.at(t, j), a.at(bi, bj)) < 0) { bi = t; bj = j; }
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a.at(t, k) += a.at(i, k);
            divides = false;
            break;
          }
      if (divides) break;
      bi = t;
      bj = t;
    }
    d.push_back(abs(a.at(t, t)));
  }
  return d;
}

std::vector<LatticeVector> lattice_kernel(const std::vector<LatticeVector>& vectors, std::size_t n) {
  std::size_t m = vectors.size();
  for (const auto& v : vectors)
    if (v.rank() != n) throw Error(ErrorCode::rank_mismatch, "vector length differs from n");
  // Row-reduce [V^T | I]; rows whose left part vanishes span the integer kernel.
  IntMatrix aug(n, m + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug.at(i, j) = vectors[j][i];
    aug.at(i, m + i) = 1;
  }
  std::size_t r = integer_echelon(aug, m, false);
  IntMatrix k(n - r, n);
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k.at(i - r, j) = aug.at(i, m + j);
  IntMatrix h = hermite_normal_form(k);
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row(i));
  return out;
}

ProjectionMap quotient_projection(const LatticeVector& v0, std::size_t n) {
  if (v0.rank() != n) throw Error(ErrorCode::rank_mismatch, "v0 has the wrong length");
  if (v0.is_zero()) throw Error(ErrorCode::zero_vector, "v0 is zero");
  if (!is_primitive(v0)) throw Error(ErrorCode::not_primitive, "v0 " + v0.to_string() + " is not primitive");
  auto rows = lattice_kernel({v0}, n);
  return ProjectionMap(IntMatrix::from_rows(rows, n), v0);
}

std::vector<Integer> circuit_relation(const std::vector<LatticeVector>& vectors) {
  if (vectors.size() < 2) throw Error(ErrorCode::not_a_circuit, "fewer than two vectors");
  std::size_t n = common_rank(vectors);
  std::size_t k = vectors.size();
  std::vector<LatticeVector> rows(n, LatticeVector(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) rows[i][j] = vectors[j][i];
  auto ker = kernel_basis(rows, k);
  if (ker.size() != 1)
    throw Error(ErrorCode::not_a_circuit, "rank deficit is " + std::to_string(ker.size()) + ", not 1");
  LatticeVector c = primitive(ker.front());
  for (std::size_t j = 0; j < k; ++j)
    if (sgn(c[j]) == 0) throw Error(ErrorCode::not_a_circuit, "relation has a zero coefficient");
  if (sgn(c[0]) < 0) c = -c;
  return c.coords();
}

namespace {

struct KeyLess {
  bool operator()(const LatticeVector& a, const LatticeVector& b) const { return a < b; }
};

void normalize(LatticeVector& v) {
  Integer g = content(v);
  if (g > 1)
    for (std::size_t i = 0; i < v.rank(); ++i) v[i] /= g;
}

}  // namespace

bool homogeneous_feasible(std::vector<LinearConstraint> constraints, std::size_t n) {
  for (auto& c : constraints)
    if (c.coeffs.rank() != n) throw Error(ErrorCode::rank_mismatch, "constraint of wrong rank");

  // Substitute out the equalities.
  for (;;) {
    std::size_t e = constraints.size();
    std::size_t piv = n;
    for (std::size_t i = 0; i < constraints.size() && e == constraints.size(); ++i) {
      if (constraints[i].relation != Relation::eq) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(constraints[i].coeffs[j]) != 0) {
          e = i;
          piv = j;
          break;
        }
    }
    if (e == constraints.size()) break;
    LatticeVector eqv = constraints[e].coeffs;
    if (sgn(eqv[piv]) < 0) eqv = -eqv;
    std::vector<LinearConstraint> next;
    next.reserve(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (i == e) continue;
      LinearConstraint c = constraints[i];
      if (sgn(c.coeffs[piv]) != 0) {
        Integer f = c.coeffs[piv];
        c.coeffs *= eqv[piv];
        c.coeffs -= f * eqv;
        normalize(c.coeffs);
      }
      next.push_back(std::move(c));
    }
    constraints = std::move(next);
  }

  // Only inequalities remain (zero equalities are dropped below).
  std::map<LatticeVector, bool, KeyLess> system;  // coeffs -> strict
  auto insert = [&](LatticeVector v, bool strict) -> bool {
    if (v.is_zero()) return !strict;
    normalize(v);
    auto [it, fresh] = system.emplace(std::move(v), strict);
    if (!fresh && strict) it->second = true;
    return true;
  };
  for (auto& c : constraints) {
    if (c.relation == Relation::eq) continue;  // necessarily zero now
    if (!insert(c.coeffs, c.relation == Relation::gt)) return false;
  }

  std::vector<bool> eliminated(n, false);
  for (;;) {
    if (system.empty()) return true;
    // Pick the variable with the smallest product of positive and negative counts.
    std::size_t best = n;
    long best_cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (eliminated[j]) continue;
      long pos = 0, neg = 0;
      for (const auto& [v, s] : system) {
        int sg = sgn(v[j]);
        if (sg > 0) ++pos;
        if (sg < 0) ++neg;
      }
      if (pos + neg == 0) {
        eliminated[j] = true;
        continue;
      }
      long cost = pos * neg - pos - neg;
      if (best == n || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == n) {
      // Every remaining constraint is zero; insert() already rejected strict ones.
      return true;
    }
    eliminated[best] = true;
    std::vector<std::pair<LatticeVector, bool>> pos, neg;
    std::map<LatticeVector, bool, KeyLess> next;
    for (auto& [v, s] : system) {
      int sg = sgn(v[best]);
      if (sg > 0) pos.emplace_back(v, s);
      else if (sg < 0) neg.emplace_back(v, s);
      else next.emplace(v, s);
    }
    system = std::move(next);
    if (pos.empty() || neg.empty()) continue;
    for (const auto& [p, ps] : pos)
      for (const auto& [q, qs] : neg) {
        Integer a = -q[best];
        Integer b = p[best];
        LatticeVector comb = a * p + b * q;
        if (!insert(std::move(comb), ps || qs)) return false;
      }
  }
}

bool lp_feasible(const std::vector<RationalVector>& equalities,
                 const std::vector<LatticeVector>& nonneg_on,
                 const LatticeVector& strict_neg_on) {
  std::size_t n = strict_neg_on.rank();
  std::vector<LinearConstraint> cs;
  for (const auto& e : equalities) {
    if (e.rank() != n) throw Error(ErrorCode::rank_mismatch, "equality witness of wrong rank");
    if (e.is_zero()) continue;
    cs.push_back({clear_denominators(e), Relation::eq});
  }
  for (const auto& v : nonneg_on) {
    if (v.rank() != n) throw Error(ErrorCode::rank_mismatch, "nonneg vector of wrong rank");
    cs.push_back({v, Relation::ge});
  }
  cs.push_back({-strict_neg_on, Relation::gt});
  return homogeneous_feasible(std::move(cs), n);
}

bool lp_feasible(const std::vector<LatticeVector>& equalities,
                 const std::vector<LatticeVector>& nonneg_on,
                 const LatticeVector& strict_neg_on) {
  std::vector<RationalVector> eq;
  eq.reserve(equalities.size());
  for (const auto& e : equalities) eq.emplace_back(e);
  return lp_feasible(eq, nonneg_on, strict_neg_on);
}

Integer lattice_index(const std::vector<LatticeVector>& generators) {
  if (generators.empty()) return 1;
  std::size_t n = common_rank(generators);
  if (rank_of(generators) != generators.size())
    throw Error(ErrorCode::dependent_generators, "lattice_index needs independent generators");
  auto d = smith_invariants(IntMatrix::from_rows(generators, n));
  Integer p = 1;
  for (const auto& x : d) p *= x;
  return p;
}

}  // namespace cobordize
