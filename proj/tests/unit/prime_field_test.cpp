#include <gtest/gtest.h>

#include <random>

#include "ewcast/prime_field.hpp"

using namespace ewcast;

TEST(PrimeField, IsPrime) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(65537));
  EXPECT_FALSE(is_prime(65536));
  EXPECT_TRUE(is_prime(2147483647u));
  EXPECT_FALSE(is_prime(2147483649u));
  EXPECT_THROW(PrimeField(12), std::invalid_argument);
}

TEST(PrimeField, Arithmetic) {
  for (std::uint32_t p : {2u, 3u, 65537u, 2147483647u, 4294967291u}) {
    PrimeField f(p);
    std::mt19937_64 rng(p);
    for (int it = 0; it < 200; ++it) {
      std::uint32_t a = static_cast<std::uint32_t>(rng() % p);
      std::uint32_t b = static_cast<std::uint32_t>(rng() % p);
      EXPECT_EQ(f.add(a, b), (std::uint64_t{a} + b) % p);
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      if (a != 0) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      EXPECT_EQ(f.pow(a, 3), f.mul(a, f.mul(a, a)));
    }
    if (p > 2) EXPECT_EQ(f.pow(2, p - 1), 1u);
  }
}

TEST(PrimeField, AxpyMatchesScalarArithmetic) {
  for (std::uint32_t p : {65537u, 2147483647u}) {
    PrimeField f(p);
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 7u, 8u, 33u, 100u}) {
      std::vector<std::uint32_t> x(n), y(n), want(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint32_t>(rng() % p);
        y[i] = static_cast<std::uint32_t>(rng() % p);
        if (i % 5 == 0) x[i] = p - 1;
        if (i % 7 == 0) y[i] = p - 1;
      }
      std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
      for (std::uint32_t cc : {c, p - 1, 1u, 0u}) {
        auto z = y;
        for (std::size_t i = 0; i < n; ++i) want[i] = static_cast<std::uint32_t>((z[i] + std::uint64_t{cc} * x[i]) % p);
        f.axpy(cc, x, z);
        EXPECT_EQ(z, want);
      }
    }
  }
}

TEST(RowSpace, RankAndMembership) {
  PrimeField f(7);
  RowSpace rs(f, 3);
  EXPECT_TRUE(rs.insert(std::vector<std::uint32_t>{1, 1, 0}));
  EXPECT_FALSE(rs.insert(std::vector<std::uint32_t>{3, 3, 0}));
  EXPECT_FALSE(rs.contains_unit(0));
  EXPECT_TRUE(rs.insert(std::vector<std::uint32_t>{0, 1, 0}));
  EXPECT_TRUE(rs.contains_unit(0));
  EXPECT_TRUE(rs.contains_unit(1));
  EXPECT_FALSE(rs.contains_unit(2));
  EXPECT_EQ(rs.rank(), 2u);
  EXPECT_FALSE(rs.insert(std::vector<std::uint32_t>{0, 0, 0}));
  EXPECT_TRUE(rs.insert(std::vector<std::uint32_t>{5, 2, 6}));
  EXPECT_TRUE(rs.contains_unit(2));
  rs.clear();
  EXPECT_EQ(rs.rank(), 0u);
}

// Rank of random square matrices against an independent elimination.
TEST(RowSpace, RankMatchesGaussianElimination) {
  PrimeField f(5);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<std::vector<std::uint32_t>> m(n, std::vector<std::uint32_t>(n));
    for (auto& r : m)
      for (auto& v : r) v = static_cast<std::uint32_t>(rng() % 3 == 0 ? 0 : rng() % 5);
    RowSpace rs(f, n);
    for (const auto& r : m) rs.insert(r);
    // plain elimination
    auto a = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
      std::size_t piv = rank;
      while (piv < n && a[piv][col] == 0) ++piv;
      if (piv == n) continue;
      std::swap(a[piv], a[rank]);
      const std::uint32_t inv = f.inv(a[rank][col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == rank || a[r][col] == 0) continue;
        const std::uint32_t k = f.mul(a[r][col], inv);
        for (std::size_t c = 0; c < n; ++c) a[r][c] = f.add(a[r][c], f.neg(f.mul(k, a[rank][c])));
      }
      ++rank;
    }
    EXPECT_EQ(rs.rank(), rank);
    for (std::size_t c = 0; c < n; ++c) {
      if (rank == n) EXPECT_TRUE(rs.contains_unit(c));
    }
  }
}
