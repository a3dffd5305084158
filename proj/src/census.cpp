#include "rsafix/census.hpp"

#include <algorithm>
#include <vector>

namespace rsafix {
namespace {

void require_positive(const BigInt& k, const char* what) {
  if (k < 1) throw InvalidArgument(std::string(what) + " must be a positive integer");
}

void require_modulus(const Factorization& f) {
  if (f.value < 2) throw InvalidArgument("modulus must be >= 2");
}

BigInt pow_ui(const BigInt& base, unsigned exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt prime_power_roots(const BigInt& r, const PrimePower& pp) {
  if (pp.prime == 2 && pp.exponent >= 3) {
    return gcd(r, 2) * gcd(r, pow_ui(2, pp.exponent - 2));
  }
  return gcd(r, pow_ui(pp.prime, pp.exponent - 1) * (pp.prime - 1));
}

// sum over d | k of mu(k / d) * term(d)
template <typename Term>
BigInt mobius_invert(const BigInt& k, Term&& term) {
  BigInt total = 0;
  for_each_squarefree_divisor(factorize(k), [&](const BigInt& s, int mu) {
    const BigInt value = term(k / s);
    if (mu > 0) {
      total += value;
    } else {
      total -= value;
    }
  });
  return total;
}

}  // namespace

RsaInstance RsaInstance::create(const BigInt& p, const BigInt& q, const BigInt& e) {
  for (const BigInt* prime : {&p, &q}) {
    if (!fits_u64(*prime) || !is_prime(*prime) || *prime == 2) {
      throw InvalidArgument(to_string(*prime) + " is not an odd prime below 2^64");
    }
  }
  if (p == q) throw InvalidArgument("p and q must be distinct");
  if (e < 1) throw InvalidArgument("e must be >= 1");

  RsaInstance inst;
  inst.p_ = p;
  inst.q_ = q;
  inst.e_ = e;
  inst.n_ = p * q;
  inst.phi_ = (p - 1) * (q - 1);
  inst.lambda_ = lcm(p - 1, q - 1);
  if (gcd(e, inst.lambda_) != 1) {
    throw InvalidArgument("gcd(e, lambda(n)) = " + to_string(gcd(e, inst.lambda_)) + ", must be 1");
  }
  inst.gcd_e_phi_ok_ = gcd(e, inst.phi_) == 1;
  inst.p_minus_1_ = factorize(p - 1);
  inst.q_minus_1_ = factorize(q - 1);
  return inst;
}

Factorization RsaInstance::modulus_factors() const {
  Factorization f;
  f.multiply(p_);
  f.multiply(q_);
  return f;
}

BigInt roots_of_unity_count(const BigInt& r, const Factorization& f) {
  require_modulus(f);
  if (sgn(r) < 0) throw InvalidArgument("roots_of_unity_count: r must be nonnegative");
  BigInt count = 1;
  for (const auto& pp : f.factors) count *= prime_power_roots(r, pp);
  return count;
}

BigInt gcd_power_minus_one(const BigInt& e, const BigInt& k, const BigInt& m) {
  if (m == 1) return 1;
  BigInt t = mod_pow(e, k, m) - 1;
  if (sgn(t) < 0) t += m;
  return gcd(t, m);
}

BigInt cumulative_unit_fixed_count(const RsaInstance& inst, const BigInt& k) {
  require_positive(k, "k");
  return gcd_power_minus_one(inst.e(), k, inst.p() - 1) * gcd_power_minus_one(inst.e(), k, inst.q() - 1);
}

BigInt cumulative_all_fixed_count(const RsaInstance& inst, const BigInt& k) {
  require_positive(k, "k");
  return (gcd_power_minus_one(inst.e(), k, inst.p() - 1) + 1) *
         (gcd_power_minus_one(inst.e(), k, inst.q() - 1) + 1);
}

BigInt exact_order_unit_count(const RsaInstance& inst, const BigInt& k) {
  require_positive(k, "k");
  return mobius_invert(k, [&](const BigInt& d) { return cumulative_unit_fixed_count(inst, d); });
}

BigInt exact_order_all_count(const RsaInstance& inst, const BigInt& k) {
  require_positive(k, "k");
  return mobius_invert(k, [&](const BigInt& d) { return cumulative_all_fixed_count(inst, d); });
}

BigInt per_prime_exact_order_count(const BigInt& p, const BigInt& e, const BigInt& k) {
  require_positive(k, "k");
  if (p < 3 || !is_prime(p)) throw InvalidArgument(to_string(p) + " is not an odd prime");
  if (gcd(e, p - 1) != 1) throw InvalidArgument("per_prime_exact_order_count: gcd(e, p - 1) != 1");
  return mobius_invert(k, [&](const BigInt& d) { return gcd_power_minus_one(e, d, p - 1); });
}

BigInt elements_of_order_count(const Factorization& f, const BigInt& r) {
  require_modulus(f);
  require_positive(r, "r");
  return mobius_invert(r, [&](const BigInt& d) { return roots_of_unity_count(d, f); });
}

BigInt poly_fixed_count(const BigInt& d, const Factorization& f) {
  require_modulus(f);
  require_positive(d, "d");
  if (d == 1) return f.value;
  // Off the units only x = 0 (mod p^a) solves x (x^(d-1) - 1) = 0.
  BigInt count = 1;
  for (const auto& pp : f.factors) count *= prime_power_roots(d - 1, pp) + 1;
  return count;
}

BigInt exact_quasi_order_count(const Factorization& f, const BigInt& r) {
  require_modulus(f);
  if (r < 2) throw InvalidArgument("exact_quasi_order_count: r must be >= 2");
  return mobius_invert(r - 1, [&](const BigInt& level) { return poly_fixed_count(level + 1, f); });
}

BigInt max_period(const RsaInstance& inst) {
  if (inst.lambda() == 1) return 1;
  BigInt reduced = inst.e() % inst.lambda();
  return multiplicative_order(reduced, inst.lambda());
}

ExactOrderCensus full_census(const RsaInstance& inst, Execution exec) {
  ExactOrderCensus census;
  census.k_max = max_period(inst);
  const Factorization k_max_factors = factorize(census.k_max);
  const std::vector<BigInt> ks = divisors(k_max_factors);
  const auto count = static_cast<std::ptrdiff_t>(ks.size());

  // Cumulative gcds at every divisor, then Mobius sums over the same lattice.
  std::vector<BigInt> gp(ks.size()), gq(ks.size());
  std::vector<BigInt> units(ks.size()), all(ks.size());
  const bool parallel = exec == Execution::parallel;

#pragma omp parallel if (parallel)
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      gp[i] = gcd_power_minus_one(inst.e(), ks[i], inst.p() - 1);
      gq[i] = gcd_power_minus_one(inst.e(), ks[i], inst.q() - 1);
    }
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      BigInt t = 0, a = 0;
      for_each_squarefree_divisor(factorize(ks[i]), [&](const BigInt& s, int mu) {
        const BigInt d = ks[i] / s;
        const auto j = std::lower_bound(ks.begin(), ks.end(), d) - ks.begin();
        const BigInt unit_term = gp[j] * gq[j];
        const BigInt all_term = (gp[j] + 1) * (gq[j] + 1);
        t += mu * unit_term;
        a += mu * all_term;
      });
      units[i] = std::move(t);
      all[i] = std::move(a);
    }
  }

  for (std::size_t i = 0; i < ks.size(); ++i) {
    census.unit_counts.emplace(ks[i], std::move(units[i]));
    census.all_counts.emplace(ks[i], std::move(all[i]));
  }
  return census;
}

}  // namespace rsafix
