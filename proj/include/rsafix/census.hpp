#pragma once

#include <map>

#include "rsafix/arith.hpp"

namespace rsafix {

/// An RSA modulus n = p * q with exponent e, viewed as the power map x -> x^e.
///
/// Construction checks that p and q are distinct odd primes (below 2^64, the
/// exact primality range) and that gcd(e, lambda(n)) = 1, which is what the
/// period structure of the map needs. The stricter gcd(e, phi(n)) = 1 is not
/// required; gcd_e_phi_ok() reports whether it holds.
class RsaInstance {
 public:
  static RsaInstance create(const BigInt& p, const BigInt& q, const BigInt& e);

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& n() const { return n_; }
  const BigInt& e() const { return e_; }
  const BigInt& phi() const { return phi_; }
  const BigInt& lambda() const { return lambda_; }
  bool gcd_e_phi_ok() const { return gcd_e_phi_ok_; }

  const Factorization& p_minus_1() const { return p_minus_1_; }
  const Factorization& q_minus_1() const { return q_minus_1_; }
  Factorization modulus_factors() const;

 private:
  RsaInstance() = default;

  BigInt p_, q_, n_, e_, phi_, lambda_;
  bool gcd_e_phi_ok_ = false;
  Factorization p_minus_1_, q_minus_1_;
};

/// Period counts of the power map, keyed by every divisor k of k_max.
/// unit_counts[k] counts units of exact period k, all_counts[k] counts all
/// residues of exact period k.
struct ExactOrderCensus {
  BigInt k_max = 1;
  std::map<BigInt, BigInt> unit_counts;
  std::map<BigInt, BigInt> all_counts;

  bool operator==(const ExactOrderCensus&) const = default;
};

enum class Execution { serial, parallel };

/// |{x in Z_n* : x^r = 1}|. Accepts r = 0 (every unit qualifies).
///
/// Per prime power this is gcd(r, phi(p^a)) except for 2^a with a >= 3, whose
/// unit group is C2 x C_{2^(a-2)} and contributes gcd(r, 2) * gcd(r, 2^(a-2)).
BigInt roots_of_unity_count(const BigInt& r, const Factorization& f);

/// gcd(e^k - 1, m), evaluated without materialising e^k.
BigInt gcd_power_minus_one(const BigInt& e, const BigInt& k, const BigInt& m);

/// Units with x^(e^k) = x: (e^k - 1, p - 1)(e^k - 1, q - 1).
BigInt cumulative_unit_fixed_count(const RsaInstance& inst, const BigInt& k);

/// All residues with x^(e^k) = x: ((e^k - 1, p - 1) + 1)((e^k - 1, q - 1) + 1).
BigInt cumulative_all_fixed_count(const RsaInstance& inst, const BigInt& k);

/// Units of exact period k, by Mobius inversion of the cumulative counts.
BigInt exact_order_unit_count(const RsaInstance& inst, const BigInt& k);

/// Residues of exact period k (units, multiples of p or q, and 0).
BigInt exact_order_all_count(const RsaInstance& inst, const BigInt& k);

/// Units mod the odd prime p of exact period k under x -> x^e.
/// Requires gcd(e, p - 1) = 1.
BigInt per_prime_exact_order_count(const BigInt& p, const BigInt& e, const BigInt& k);

/// Units of multiplicative order exactly r. Valid for every n >= 2.
BigInt elements_of_order_count(const Factorization& f, const BigInt& r);

/// |{x in Z_n : x^d = x}|.
BigInt poly_fixed_count(const BigInt& d, const Factorization& f);

/// Residues x whose smallest r >= 2 with x^r = x is exactly r.
BigInt exact_quasi_order_count(const Factorization& f, const BigInt& r);

/// Smallest K with e^K = 1 (mod lambda(n)); every period divides it.
BigInt max_period(const RsaInstance& inst);

ExactOrderCensus full_census(const RsaInstance& inst, Execution exec = Execution::parallel);

}  // namespace rsafix
