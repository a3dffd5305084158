#pragma once

#include <vector>

#include "rsafix/bigint.hpp"

namespace rsafix {

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

/// Canonical factorization n = prod p_i^a_i, primes strictly increasing.
/// The empty factorization represents 1.
struct Factorization {
  std::vector<PrimePower> factors;
  BigInt value = 1;

  /// Multiplies in prime^exponent, keeping factors sorted and merging repeats.
  void multiply(const BigInt& prime, unsigned exponent = 1);

  bool operator==(const Factorization&) const = default;
};

}  // namespace rsafix
