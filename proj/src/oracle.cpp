#include "rsafix/oracle.hpp"

#include <string>

namespace rsafix::oracle {
namespace {

void check_limit(std::uint64_t n, std::uint64_t limit) {
  if (n > limit) {
    throw LimitExceeded("modulus " + std::to_string(n) + " exceeds the oracle limit of " + std::to_string(limit));
  }
}

std::uint64_t checked_modulus(const BigInt& n, std::uint64_t limit) {
  if (!fits_u64(n) || to_u64(n) > limit) {
    throw LimitExceeded("modulus " + to_string(n) + " exceeds the oracle limit of " + std::to_string(limit));
  }
  return to_u64(n);
}

// x^e mod n by square-and-multiply over the bits of e, most significant first.
class PowerStep {
 public:
  PowerStep(const BigInt& e, std::uint64_t n) : n_(n) {
    for (auto bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
      bits_.push_back(mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)) != 0);
    }
  }

  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t result = 1 % n_;
    for (bool bit : bits_) {
      result = mul_mod(result, result, n_);
      if (bit) result = mul_mod(result, x, n_);
    }
    return result;
  }

 private:
  std::uint64_t n_;
  std::vector<bool> bits_;
};

std::uint64_t period_by_iteration(std::uint64_t x, std::uint64_t n, const PowerStep& step) {
  std::uint64_t y = step(x);
  std::uint64_t period = 1;
  while (y != x) {
    // A permutation of n points has no cycle longer than n.
    if (++period > n) throw std::logic_error("power map does not return to " + std::to_string(x));
    y = step(y);
  }
  return period;
}

ExactOrderCensus tally(const std::vector<std::uint64_t>& periods, std::uint64_t n) {
  ExactOrderCensus census;
  std::uint64_t k_max = 1;
  std::map<std::uint64_t, std::uint64_t> units, all;
  for (std::uint64_t x = 0; x < periods.size(); ++x) {
    const std::uint64_t k = periods[x];
    k_max = k_max / gcd_u64(k_max, k) * k;
    ++all[k];
    if (gcd_u64(x, n) == 1) ++units[k];
  }
  census.k_max = from_u64(k_max);
  for (std::uint64_t d = 1; d <= k_max; ++d) {
    if (k_max % d != 0) continue;
    census.unit_counts.emplace(from_u64(d), from_u64(units[d]));
    census.all_counts.emplace(from_u64(d), from_u64(all[d]));
  }
  return census;
}

}  // namespace

std::vector<std::uint64_t> brute_periods_serial(const RsaInstance& inst, std::uint64_t limit) {
  const std::uint64_t n = checked_modulus(inst.n(), limit);
  const PowerStep step(inst.e(), n);
  std::vector<std::uint64_t> periods(n);
  for (std::uint64_t x = 0; x < n; ++x) periods[x] = period_by_iteration(x, n, step);
  return periods;
}

std::vector<std::uint64_t> brute_periods(const RsaInstance& inst, std::uint64_t limit) {
  const std::uint64_t n = checked_modulus(inst.n(), limit);
  const PowerStep step(inst.e(), n);
  std::vector<std::uint64_t> periods(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t x = 0; x < count; ++x) {
    periods[x] = period_by_iteration(static_cast<std::uint64_t>(x), n, step);
  }
  return periods;
}

ExactOrderCensus brute_power_map_census(const RsaInstance& inst, std::uint64_t limit) {
  return tally(brute_periods(inst, limit), to_u64(inst.n()));
}

ExactOrderCensus brute_power_map_census_serial(const RsaInstance& inst, std::uint64_t limit) {
  return tally(brute_periods_serial(inst, limit), to_u64(inst.n()));
}

CycleStructure brute_cycle_structure(const RsaInstance& inst, std::uint64_t limit) {
  const std::uint64_t n = checked_modulus(inst.n(), limit);
  const PowerStep step(inst.e(), n);
  std::vector<bool> visited(n, false);
  std::map<std::uint64_t, std::uint64_t> cycles_by_length;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (visited[x]) continue;
    std::uint64_t length = 0;
    std::uint64_t y = x;
    do {
      visited[y] = true;
      y = step(y);
      ++length;
    } while (y != x && !visited[y]);
    if (y != x) throw std::logic_error("power map is not a permutation");
    ++cycles_by_length[length];
  }
  CycleStructure out;
  out.n = inst.n();
  for (const auto& [length, cycles] : cycles_by_length) {
    out.entries.emplace(from_u64(length), CycleCount{from_u64(length * cycles), from_u64(cycles)});
  }
  return out;
}

std::uint64_t brute_roots_of_unity(std::uint64_t r, std::uint64_t n, std::uint64_t limit) {
  check_limit(n, limit);
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x < n; ++x) {
    std::uint64_t power = 1 % n;
    for (std::uint64_t i = 0; i < r; ++i) power = mul_mod(power, x, n);
    if (power == 1 % n) ++count;
  }
  return count;
}

std::map<std::uint64_t, std::uint64_t> brute_element_orders(std::uint64_t n, std::uint64_t limit) {
  check_limit(n, limit);
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (std::uint64_t x = 1; x < n; ++x) {
    if (gcd_u64(x, n) != 1) continue;
    std::uint64_t order = 1;
    for (std::uint64_t power = x % n; power != 1 % n; power = mul_mod(power, x, n)) ++order;
    ++histogram[order];
  }
  if (n == 1) histogram[1] = 1;
  return histogram;
}

PolyFixedScan brute_poly_fixed(std::uint64_t n, std::uint64_t d, std::uint64_t limit) {
  check_limit(n, limit);
  PolyFixedScan scan;
  for (std::uint64_t x = 0; x < n; ++x) {
    // power runs through x^1, x^2, ...; a return to x happens within n steps
    // if it happens at all.
    std::uint64_t power = x;
    std::uint64_t first_return = 0;
    bool fixed_at_d = d == 1;
    for (std::uint64_t r = 2; r <= std::max(n + 1, d); ++r) {
      power = mul_mod(power, x, n);
      if (r == d && power == x) fixed_at_d = true;
      if (first_return == 0 && power == x) first_return = r;
      if (first_return != 0 && r >= d) break;
    }
    if (fixed_at_d) ++scan.count;
    if (first_return != 0) ++scan.quasi_order_histogram[first_return];
  }
  return scan;
}

}  // namespace rsafix::oracle
