#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsafix/bigint.hpp"
#include "rsafix/errors.hpp"
#include "rsafix/factorization.hpp"

namespace rsafix {

// gcd(0, m) = m. Signs are ignored.
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// base^exp mod modulus, modulus >= 2.
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& modulus);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

/// Exact primality. Values at or above 2^64 are outside the certified range
/// and raise InvalidArgument rather than returning a probable answer.
bool is_prime(const BigInt& n);

struct FactorizeOptions {
  /// Upper bound on Pollard-rho iterations across the whole call.
  std::uint64_t step_budget = 20'000'000;
};

/// Trial division to 2^16, then Brent's rho. Every returned prime is certified
/// by is_prime. Throws FactoringFailed when the budget runs out or a cofactor
/// beyond the exact primality range cannot be split.
Factorization factorize(const BigInt& n, const FactorizeOptions& options = {});

/// All divisors, strictly increasing.
std::vector<BigInt> divisors(const Factorization& f);

int mobius(const Factorization& f);
int mobius(const BigInt& n);

BigInt euler_phi(const Factorization& f);
BigInt carmichael_lambda(const Factorization& f);

/// Smallest d >= 1 with a^d = 1 (mod m). Requires gcd(a, m) = 1, m >= 2.
BigInt multiplicative_order(const BigInt& a, const BigInt& m);

/// Smallest divisor d of `multiple` with a^d = 1 (mod m), given that
/// a^multiple = 1 (mod m) and `multiple_factors` factors `multiple`.
BigInt order_dividing(const BigInt& a, const BigInt& m, const Factorization& multiple_factors);

struct Congruence {
  BigInt residue;
  BigInt modulus;
};

/// Unique x in [0, prod moduli) matching every congruence. Moduli must be
/// pairwise coprime and positive.
BigInt crt_combine(std::span<const Congruence> congruences);

/// Calls fn(s, mu) for each squarefree divisor s of k with mu = mobius(s).
/// Together with k / s these are exactly the nonzero terms of a Mobius sum.
template <typename Fn>
void for_each_squarefree_divisor(const Factorization& k, Fn&& fn) {
  const std::size_t count = k.factors.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    BigInt s = 1;
    int mu = 1;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        s *= k.factors[i].prime;
        mu = -mu;
      }
    }
    fn(s, mu);
  }
}

}  // namespace rsafix
