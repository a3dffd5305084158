#include "rsafix/arith.hpp"

#include <algorithm>
#include <numeric>

namespace rsafix {

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& modulus) {
  if (modulus < 2) {
    throw InvalidArgument("mod_pow: modulus must be >= 2, got " + to_string(modulus));
  }
  if (sgn(exp) < 0) {
    throw InvalidArgument("mod_pow: negative exponent");
  }
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes as witnesses are exact below 3.3 * 10^24.
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (!fits_u64(n)) {
    throw InvalidArgument("primality of " + to_string(n) + " is outside the exact 64-bit range");
  }
  return is_prime_u64(to_u64(n));
}

void Factorization::multiply(const BigInt& prime, unsigned exponent) {
  if (exponent == 0) return;
  auto it = std::lower_bound(factors.begin(), factors.end(), prime,
                             [](const PrimePower& pp, const BigInt& p) { return pp.prime < p; });
  if (it != factors.end() && it->prime == prime) {
    it->exponent += exponent;
  } else {
    factors.insert(it, PrimePower{prime, exponent});
  }
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), prime.get_mpz_t(), exponent);
  value *= power;
}

std::vector<BigInt> divisors(const Factorization& f) {
  std::vector<BigInt> out{BigInt(1)};
  for (const auto& [prime, exponent] : f.factors) {
    const std::size_t previous = out.size();
    BigInt power = 1;
    for (unsigned i = 1; i <= exponent; ++i) {
      power *= prime;
      for (std::size_t j = 0; j < previous; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(const Factorization& f) {
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

int mobius(const BigInt& n) {
  if (n < 1) throw InvalidArgument("mobius: argument must be positive");
  return mobius(factorize(n));
}

BigInt euler_phi(const Factorization& f) {
  BigInt out = 1;
  for (const auto& [prime, exponent] : f.factors) {
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), prime.get_mpz_t(), exponent - 1);
    out *= power * (prime - 1);
  }
  return out;
}

BigInt carmichael_lambda(const Factorization& f) {
  BigInt out = 1;
  for (const auto& [prime, exponent] : f.factors) {
    BigInt part;
    if (prime == 2 && exponent >= 3) {
      mpz_ui_pow_ui(part.get_mpz_t(), 2, exponent - 2);
    } else {
      mpz_pow_ui(part.get_mpz_t(), prime.get_mpz_t(), exponent - 1);
      part *= prime - 1;
    }
    out = lcm(out, part);
  }
  return out;
}

BigInt order_dividing(const BigInt& a, const BigInt& m, const Factorization& multiple_factors) {
  BigInt order = multiple_factors.value;
  if (m == 1) return 1;
  for (const auto& [prime, exponent] : multiple_factors.factors) {
    for (unsigned i = 0; i < exponent; ++i) {
      BigInt candidate = order / prime;
      if (mod_pow(a, candidate, m) != 1) break;
      order = std::move(candidate);
    }
  }
  return order;
}

BigInt multiplicative_order(const BigInt& a, const BigInt& m) {
  if (m < 2) throw InvalidArgument("multiplicative_order: modulus must be >= 2");
  if (gcd(a, m) != 1) {
    throw InvalidArgument("multiplicative_order: " + to_string(a) + " is not a unit mod " + to_string(m));
  }
  const BigInt lambda = carmichael_lambda(factorize(m));
  return order_dividing(a, m, factorize(lambda));
}

BigInt crt_combine(std::span<const Congruence> congruences) {
  BigInt x = 0;
  BigInt modulus = 1;
  for (const auto& [residue, m] : congruences) {
    if (m < 1) throw InvalidArgument("crt_combine: moduli must be positive");
    if (gcd(modulus, m) != 1) {
      throw InvalidArgument("crt_combine: moduli are not pairwise coprime");
    }
    // x + modulus * t = residue (mod m)
    BigInt inverse;
    mpz_invert(inverse.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t());
    if (m == 1) inverse = 0;
    BigInt t = (residue - x) * inverse;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
    x += modulus * t;
    modulus *= m;
  }
  return x;
}

}  // namespace rsafix
