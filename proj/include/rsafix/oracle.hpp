#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rsafix/census.hpp"
#include "rsafix/dynamics.hpp"

// Brute-force reference scans. Nothing here calls into the census or dynamics
// formulas; the only arithmetic borrowed is gcd and modular multiplication.
namespace rsafix::oracle {

inline constexpr std::uint64_t kDefaultLimit = 100'000;

/// period[x] for every x in [0, n), by iterating x -> x^e until x returns.
/// OpenMP-parallel over residue ranges.
std::vector<std::uint64_t> brute_periods(const RsaInstance& inst, std::uint64_t limit = kDefaultLimit);

/// Single-threaded version of brute_periods, kept as the reference.
std::vector<std::uint64_t> brute_periods_serial(const RsaInstance& inst, std::uint64_t limit = kDefaultLimit);

/// Tally of brute_periods; k_max is the lcm of the observed periods and the
/// maps are keyed by all of its divisors.
ExactOrderCensus brute_power_map_census(const RsaInstance& inst, std::uint64_t limit = kDefaultLimit);
ExactOrderCensus brute_power_map_census_serial(const RsaInstance& inst, std::uint64_t limit = kDefaultLimit);

/// Cycle decomposition found by walking each unvisited residue's orbit.
CycleStructure brute_cycle_structure(const RsaInstance& inst, std::uint64_t limit = kDefaultLimit);

/// |{1 <= x < n : x^r = 1 (mod n)}|.
std::uint64_t brute_roots_of_unity(std::uint64_t r, std::uint64_t n, std::uint64_t limit = kDefaultLimit);

/// Histogram of multiplicative orders over the units mod n.
std::map<std::uint64_t, std::uint64_t> brute_element_orders(std::uint64_t n, std::uint64_t limit = kDefaultLimit);

struct PolyFixedScan {
  std::uint64_t count = 0;
  /// smallest r >= 2 with x^r = x -> number of such x; residues with no such
  /// r are absent
  std::map<std::uint64_t, std::uint64_t> quasi_order_histogram;
};

PolyFixedScan brute_poly_fixed(std::uint64_t n, std::uint64_t d, std::uint64_t limit = kDefaultLimit);

}  // namespace rsafix::oracle
