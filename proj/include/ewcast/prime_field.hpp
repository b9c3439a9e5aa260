#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ewcast {

bool is_prime(std::uint64_t n) noexcept;

// GF(p) for prime p < 2^32. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  static constexpr std::uint32_t kMersenne31 = 2147483647u;

  explicit PrimeField(std::uint32_t order);

  std::uint32_t order() const noexcept { return p_; }
  bool is_mersenne31() const noexcept { return p_ == kMersenne31; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  std::uint32_t inv(std::uint32_t a) const;  // a != 0

  // y += c * x elementwise
  void axpy(std::uint32_t c, std::span<const std::uint32_t> x, std::span<std::uint32_t> y) const noexcept;
  void scale(std::uint32_t c, std::span<std::uint32_t> x) const noexcept;

 private:
  std::uint32_t p_;
};

// Row space of a growing set of vectors, kept in reduced row echelon form.
class RowSpace {
 public:
  RowSpace(const PrimeField& field, std::size_t columns);

  std::size_t columns() const noexcept { return columns_; }
  std::size_t rank() const noexcept { return pivot_col_.size(); }

  // Returns true when the row was linearly independent of the current span.
  bool insert(std::span<const std::uint32_t> row);
  // True iff the unit vector e_col lies in the span.
  bool contains_unit(std::size_t col) const;
  void clear();

 private:
  const PrimeField* field_;
  std::size_t columns_;
  std::vector<std::uint32_t> rows_;       // rank() x columns_, row-major
  std::vector<std::size_t> pivot_col_;    // pivot column of each stored row
  std::vector<int> row_of_col_;           // -1 when the column has no pivot
  std::vector<std::uint32_t> scratch_;
};

}  // namespace ewcast
