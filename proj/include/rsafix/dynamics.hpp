#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rsafix/census.hpp"

namespace rsafix {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// A residue together with its period under x -> x^e. The component orders
/// are the multiplicative orders of x mod p and x mod q; nullopt marks a zero
/// component.
struct PeriodRecord {
  BigInt point;
  BigInt period;
  std::optional<BigInt> order_mod_p;
  std::optional<BigInt> order_mod_q;
};

struct CycleCount {
  BigInt points;
  BigInt cycles;

  bool operator==(const CycleCount&) const = default;
};

/// Cycle decomposition of the power map on Z_n: cycle length -> counts.
struct CycleStructure {
  BigInt n;
  std::map<BigInt, CycleCount> entries;

  bool operator==(const CycleStructure&) const = default;
};

/// Closed-form period computations for one instance. Holds the factorization
/// of K_max so that each point costs a handful of modular powers.
class PowerMap {
 public:
  explicit PowerMap(const RsaInstance& inst);

  const RsaInstance& instance() const { return inst_; }
  const BigInt& max_period() const { return k_max_.value; }

  /// Period of a residue whose multiplicative order (mod p or q) is `order`.
  BigInt period_for_order(const BigInt& order) const;
  PeriodRecord period_of(const BigInt& x) const;

 private:
  RsaInstance inst_;
  Factorization k_max_;
};

/// x^(e^steps) mod n by repeated e-th powering.
BigInt iterate_power_map(const BigInt& x, const RsaInstance& inst, std::uint64_t steps);

PeriodRecord period_of_point(const BigInt& x, const RsaInstance& inst);

CycleStructure analytic_cycle_structure(const RsaInstance& inst);

/// Smallest primitive root mod the odd prime p, given p - 1 factored.
BigInt primitive_root(const BigInt& p, const Factorization& p_minus_1);

/// Every residue of exact period k, ascending. Built by pairing per-prime
/// solution sets {0} u <g^((p-1)/m)> with m = (e^k - 1, p - 1) through the CRT,
/// grouped by component period so only pairs with lcm = k are combined.
/// Throws CapExceeded when the result (or a per-prime solution set) would be
/// larger than `cap`.
std::vector<BigInt> enumerate_fixed_points(const RsaInstance& inst, const BigInt& k,
                                           std::uint64_t cap = kDefaultEnumerationCap,
                                           Execution exec = Execution::parallel);

/// A nontrivial factor of n from gcd(m, n), gcd(m - 1, n) or gcd(m + 1, n).
std::optional<BigInt> extract_factor_from_fixed_point(const BigInt& m, const BigInt& n);

/// A fixed point outside {0, 1, n - 1}, found with the factorization in hand.
/// Prefers a unit from which extract_factor_from_fixed_point recovers a factor,
/// then any such point; falls back to the CRT lift of (0, 1) when the period-1 set
/// is larger than `budget`.
std::optional<BigInt> find_nontrivial_fixed_point(const RsaInstance& inst, std::uint64_t budget);

}  // namespace rsafix
