#pragma once

#include <optional>
#include <vector>

#include "cobordize/lattice.hpp"

namespace cobordize {

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  LatticeVector row(std::size_t i) const;
  LatticeVector apply(const LatticeVector& v) const;
  IntMatrix transpose() const;
  void swap_rows(std::size_t a, std::size_t b);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

LatticeVector primitive(const LatticeVector& v);
bool is_primitive(const LatticeVector& v);

std::size_t rank_of(const std::vector<LatticeVector>& vectors);
std::size_t rank_of(const std::vector<RationalVector>& vectors);

Integer determinant(const std::vector<LatticeVector>& rows);

// Coefficients c with sum c_i basis_i = target, if target lies in the span.
// The basis must be linearly independent.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<LatticeVector>& basis,
                                                   const RationalVector& target);
std::optional<std::vector<Rational>> solve_in_span(const std::vector<LatticeVector>& basis,
                                                   const LatticeVector& target);

// Integer vectors spanning {x : <row, x> = 0 for every row} over Q.
std::vector<LatticeVector> kernel_basis(const std::vector<LatticeVector>& rows, std::size_t n);

// Basis of the orthogonal complement of span(vectors), as a Q-span.
inline std::vector<LatticeVector> orthogonal_complement(const std::vector<LatticeVector>& vectors,
                                                        std::size_t n) {
  return kernel_basis(vectors, n);
}

// Row-style Hermite normal form of the lattice generated by the rows. Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

// Diagonal invariants d_1 | d_2 | ... of the Smith normal form (nonzero ones only).
std::vector<Integer> smith_invariants(const IntMatrix& m);

// Lattice basis of the saturated lattice {m in Z^n : <m, v> = 0 for all v}, in Hermite form.
std::vector<LatticeVector> lattice_kernel(const std::vector<LatticeVector>& vectors, std::size_t n);

class ProjectionMap {
 public:
  ProjectionMap() = default;
  ProjectionMap(IntMatrix matrix, LatticeVector kernel_generator)
      : matrix_(std::move(matrix)), kernel_(std::move(kernel_generator)) {}

  const IntMatrix& matrix() const { return matrix_; }
  const LatticeVector& kernel_generator() const { return kernel_; }
  std::size_t source_rank() const { return matrix_.cols(); }
  std::size_t target_rank() const { return matrix_.rows(); }

  LatticeVector operator()(const LatticeVector& v) const { return matrix_.apply(v); }

 private:
  IntMatrix matrix_;
  LatticeVector kernel_;
};

ProjectionMap quotient_projection(const LatticeVector& v0, std::size_t n);

// The canonical relation of a circuit: gcd 1, first coefficient positive.
std::vector<Integer> circuit_relation(const std::vector<LatticeVector>& vectors);

// Is there F with <F,w> = 0 on equalities, >= 0 on nonneg_on and <F, strict_neg_on> < 0 ?
bool lp_feasible(const std::vector<RationalVector>& equalities,
                 const std::vector<LatticeVector>& nonneg_on,
                 const LatticeVector& strict_neg_on);
bool lp_feasible(const std::vector<LatticeVector>& equalities,
                 const std::vector<LatticeVector>& nonneg_on,
                 const LatticeVector& strict_neg_on);

Integer lattice_index(const std::vector<LatticeVector>& generators);

// General homogeneous feasibility: does some x satisfy all the constraints?
enum class Relation { eq, ge, gt };
struct LinearConstraint {
  LatticeVector coeffs;
  Relation relation;
};
bool homogeneous_feasible(std::vector<LinearConstraint> constraints, std::size_t n);

}  // namespace cobordize
