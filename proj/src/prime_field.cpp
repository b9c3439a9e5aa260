#include "ewcast/prime_field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ewcast/kernels.hpp"

namespace ewcast {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t order) : p_(order) {
  if (!is_prime(order)) throw std::invalid_argument("field order " + std::to_string(order) + " is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  return pow(a, p_ - 2);
}

void PrimeField::axpy(std::uint32_t c, std::span<const std::uint32_t> x, std::span<std::uint32_t> y) const noexcept {
  if (c == 0) return;
  if (is_mersenne31()) {
    kernels::active().mod_axpy_m31(c, x.data(), y.data(), y.size());
    return;
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = add(y[i], mul(c, x[i]));
}

void PrimeField::scale(std::uint32_t c, std::span<std::uint32_t> x) const noexcept {
  for (auto& v : x) v = mul(c, v);
}

RowSpace::RowSpace(const PrimeField& field, std::size_t columns)
    : field_(&field), columns_(columns), row_of_col_(columns, -1), scratch_(columns) {}

bool RowSpace::insert(std::span<const std::uint32_t> row) {
  if (row.size() != columns_) throw std::invalid_argument("row width mismatch");
  std::copy(row.begin(), row.end(), scratch_.begin());
  std::span<std::uint32_t> v(scratch_);
  for (std::size_t r = 0; r < pivot_col_.size(); ++r) {
    std::uint32_t f = v[pivot_col_[r]];
    if (f) field_->axpy(field_->neg(f), {rows_.data() + r * columns_, columns_}, v);
  }
  auto nz = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
  if (nz == v.end()) return false;
  const std::size_t col = static_cast<std::size_t>(nz - v.begin());
  field_->scale(field_->inv(*nz), v);

  // clear the new pivot column from the existing rows to stay reduced
  for (std::size_t r = 0; r < pivot_col_.size(); ++r) {
    std::span<std::uint32_t> b(rows_.data() + r * columns_, columns_);
    if (b[col]) field_->axpy(field_->neg(b[col]), v, b);
  }
  rows_.insert(rows_.end(), v.begin(), v.end());
  row_of_col_[col] = static_cast<int>(pivot_col_.size());
  pivot_col_.push_back(col);
  return true;
}

bool RowSpace::contains_unit(std::size_t col) const {
  int r = row_of_col_.at(col);
  if (r < 0) return false;
  // In reduced form e_col is in the span iff its pivot row has no entries
  // in free columns (pivot columns other than col are already zero).
  const std::uint32_t* b = rows_.data() + static_cast<std::size_t>(r) * columns_;
  for (std::size_t c = 0; c < columns_; ++c) {
    if (c != col && b[c] != 0) return false;
  }
  return true;
}

void RowSpace::clear() {
  rows_.clear();
  pivot_col_.clear();
  std::fill(row_of_col_.begin(), row_of_col_.end(), -1);
}

}  // namespace ewcast
