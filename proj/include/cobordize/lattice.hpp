#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace cobordize {

using Integer = mpz_class;
using Rational = mpq_class;

// Point of N = Z^n (or a covector of M, same representation).
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : coords_(rank) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long> xs);

  std::size_t rank() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const;
  std::string to_string() const;

  LatticeVector operator-() const;
  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  LatticeVector& operator*=(const Integer& s);

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ == b.coords_;
  }
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

 private:
  std::vector<Integer> coords_;
};

LatticeVector operator+(LatticeVector a, const LatticeVector& b);
LatticeVector operator-(LatticeVector a, const LatticeVector& b);
LatticeVector operator*(const Integer& s, LatticeVector a);

class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t rank) : coords_(rank) {}
  explicit RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  explicit RationalVector(const LatticeVector& v);
  RationalVector(std::initializer_list<Rational> xs) : coords_(xs) {}

  std::size_t rank() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  std::string to_string() const;

  RationalVector& operator+=(const RationalVector& o);
  RationalVector& operator-=(const RationalVector& o);
  RationalVector& operator*=(const Rational& s);

  friend bool operator==(const RationalVector& a, const RationalVector& b) {
    return a.coords_ == b.coords_;
  }
  friend std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b);

 private:
  std::vector<Rational> coords_;
};

RationalVector operator+(RationalVector a, const RationalVector& b);
RationalVector operator-(RationalVector a, const RationalVector& b);
RationalVector operator*(const Rational& s, RationalVector a);

Integer dot(const LatticeVector& a, const LatticeVector& b);
Rational dot(const RationalVector& a, const LatticeVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);

LatticeVector unit_vector(std::size_t rank, std::size_t i);

// Gcd of the absolute values of the coordinates (0 for the zero vector).
Integer content(const LatticeVector& v);

// Smallest positive integer multiple of a rational vector (content 1).
LatticeVector clear_denominators(const RationalVector& v);

}  // namespace cobordize
