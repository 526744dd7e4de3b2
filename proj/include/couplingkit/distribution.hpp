#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "couplingkit/rational.hpp"

namespace couplingkit {

/// Ordered set of distinct symbol labels. The order is authoritative: it
/// fixes the row and column order of every matrix built over the alphabet.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  /// Labels "1".."n".
  static Alphabet numbered(std::size_t n);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  /// Product alphabet with labels "(a,b)" in row-major order.
  Alphabet product() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

// Throws AlphabetMismatch unless a == b. `what` names the operation.
void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what);

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rat> values() const noexcept { return data_; }

  Rat sum() const;
  std::vector<Rat> row_sums() const;
  std::vector<Rat> col_sums() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

/// Finite probability distribution over a labeled alphabet.
/// Entries are nonnegative and sum to exactly 1; zeros are allowed.
class Pmf {
 public:
  /// Throws AlphabetMismatch on a length mismatch and InvalidDistribution
  /// on a negative entry or a total different from 1.
  Pmf(Alphabet alphabet, std::vector<Rat> probs);

  static Pmf uniform(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return p_.size(); }
  const Rat& operator[](std::size_t i) const { return p_[i]; }
  const std::vector<Rat>& probs() const noexcept { return p_; }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Rat> p_;
};

/// Distribution on A x A; row is the first coordinate, column the second.
class Pmf2 {
 public:
  Pmf2(Alphabet alphabet, RatMatrix p);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return alphabet_.size(); }
  const Rat& operator()(std::size_t a, std::size_t b) const { return p_(a, b); }
  const RatMatrix& matrix() const noexcept { return p_; }

  /// Pmf over the N^2 product alphabet ("(a,b)" labels, row-major).
  Pmf flatten() const;

  friend bool operator==(const Pmf2&, const Pmf2&) = default;

 private:
  Alphabet alphabet_;
  RatMatrix p_;
};

Pmf pmf_uniform(const Alphabet& alphabet);
Pmf pmf2_flatten(const Pmf2& p2);

// Checks nonnegativity and unit mass of `values`; `where` prefixes messages.
void require_probability_mass(std::span<const Rat> values, const std::string& where);

}  // namespace couplingkit
