#include "rsafix/dynamics.hpp"

#include <algorithm>
#include <functional>

namespace rsafix {
namespace {

struct ComponentSolutions {
  // component period -> residues mod the prime with that period
  std::map<BigInt, std::vector<BigInt>> by_period;
};

// {0} together with the subgroup of order (e^k - 1, p - 1), bucketed by the
// period of each element under x -> x^e.
ComponentSolutions component_solutions(const BigInt& p, const Factorization& p_minus_1, const BigInt& e,
                                       const BigInt& k, const Factorization& k_factors, std::uint64_t cap) {
  const BigInt m = gcd_power_minus_one(e, k, p - 1);
  if (m + 1 > cap) {
    throw CapExceeded("per-prime solution set mod " + to_string(p) + " exceeds the cap", m + 1);
  }
  const BigInt g = primitive_root(p, p_minus_1);
  const BigInt h = mod_pow(g, (p - 1) / m, p);

  std::map<BigInt, BigInt> period_of_order;
  auto period_for = [&](const BigInt& order) -> const BigInt& {
    auto it = period_of_order.find(order);
    if (it == period_of_order.end()) {
      BigInt period = order == 1 ? BigInt(1) : order_dividing(e % order, order, k_factors);
      it = period_of_order.emplace(order, std::move(period)).first;
    }
    return it->second;
  };

  ComponentSolutions out;
  out.by_period[1].push_back(0);
  BigInt element = 1;
  for (BigInt i = 0; i < m; ++i) {
    out.by_period[period_for(m / gcd(i, m))].push_back(element);
    element = element * h % p;
  }
  return out;
}

}  // namespace

PowerMap::PowerMap(const RsaInstance& inst) : inst_(inst), k_max_(factorize(rsafix::max_period(inst))) {}

BigInt PowerMap::period_for_order(const BigInt& order) const {
  if (order == 1) return 1;
  return order_dividing(inst_.e() % order, order, k_max_);
}

PeriodRecord PowerMap::period_of(const BigInt& x) const {
  if (sgn(x) < 0 || x >= inst_.n()) {
    throw InvalidArgument("point " + to_string(x) + " is not a residue mod " + to_string(inst_.n()));
  }
  PeriodRecord record;
  record.point = x;
  BigInt level = 1;
  const BigInt a = x % inst_.p();
  const BigInt b = x % inst_.q();
  if (a != 0) {
    record.order_mod_p = order_dividing(a, inst_.p(), inst_.p_minus_1());
    level = lcm(level, *record.order_mod_p);
  }
  if (b != 0) {
    record.order_mod_q = order_dividing(b, inst_.q(), inst_.q_minus_1());
    level = lcm(level, *record.order_mod_q);
  }
  record.period = period_for_order(level);
  return record;
}

BigInt iterate_power_map(const BigInt& x, const RsaInstance& inst, std::uint64_t steps) {
  BigInt out = x % inst.n();
  for (std::uint64_t i = 0; i < steps; ++i) out = mod_pow(out, inst.e(), inst.n());
  return out;
}

PeriodRecord period_of_point(const BigInt& x, const RsaInstance& inst) { return PowerMap(inst).period_of(x); }

CycleStructure analytic_cycle_structure(const RsaInstance& inst) {
  const ExactOrderCensus census = full_census(inst);
  CycleStructure out;
  out.n = inst.n();
  for (const auto& [k, points] : census.all_counts) {
    if (points > 0) out.entries.emplace(k, CycleCount{points, points / k});
  }
  return out;
}

BigInt primitive_root(const BigInt& p, const Factorization& p_minus_1) {
  if (p == 2) return 1;
  for (BigInt g = 2; g < p; ++g) {
    const bool generates = std::all_of(p_minus_1.factors.begin(), p_minus_1.factors.end(),
                                       [&](const PrimePower& pp) { return mod_pow(g, (p - 1) / pp.prime, p) != 1; });
    if (generates) return g;
  }
  throw InvalidArgument("no primitive root mod " + to_string(p));
}

std::vector<BigInt> enumerate_fixed_points(const RsaInstance& inst, const BigInt& k, std::uint64_t cap,
                                           Execution exec) {
  if (k < 1) throw InvalidArgument("k must be a positive integer");
  const BigInt expected = exact_order_all_count(inst, k);
  if (expected > cap) {
    throw CapExceeded(to_string(expected) + " points of period " + to_string(k) + " exceed the cap of " +
                          std::to_string(cap),
                      expected);
  }
  if (expected == 0) return {};

  const Factorization k_factors = factorize(k);
  const auto sp = component_solutions(inst.p(), inst.p_minus_1(), inst.e(), k, k_factors, cap);
  const auto sq = component_solutions(inst.q(), inst.q_minus_1(), inst.e(), k, k_factors, cap);

  struct Block {
    const std::vector<BigInt>* mod_p;
    const std::vector<BigInt>* mod_q;
  };
  std::vector<Block> blocks;
  for (const auto& [i, residues_p] : sp.by_period) {
    for (const auto& [j, residues_q] : sq.by_period) {
      if (lcm(i, j) == k) blocks.push_back({&residues_p, &residues_q});
    }
  }

  // x = a + p * ((b - a) * p^-1 mod q)
  BigInt p_inverse;
  mpz_invert(p_inverse.get_mpz_t(), inst.p().get_mpz_t(), inst.q().get_mpz_t());

  std::vector<std::vector<BigInt>> pieces(blocks.size());
  const auto block_count = static_cast<std::ptrdiff_t>(blocks.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < block_count; ++i) {
    auto& piece = pieces[i];
    piece.reserve(blocks[i].mod_p->size() * blocks[i].mod_q->size());
    BigInt t;
    for (const BigInt& a : *blocks[i].mod_p) {
      for (const BigInt& b : *blocks[i].mod_q) {
        t = (b - a) * p_inverse;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), inst.q().get_mpz_t());
        piece.push_back(a + inst.p() * t);
      }
    }
  }

  std::vector<BigInt> points;
  points.reserve(expected.get_ui());
  for (auto& piece : pieces) {
    std::move(piece.begin(), piece.end(), std::back_inserter(points));
  }
  std::sort(points.begin(), points.end());
  return points;
}

std::optional<BigInt> extract_factor_from_fixed_point(const BigInt& m, const BigInt& n) {
  if (n < 2) throw InvalidArgument("extract_factor_from_fixed_point: n must be > 1");
  for (const BigInt& candidate : {BigInt(m), BigInt(m - 1), BigInt(m + 1)}) {
    const BigInt g = gcd(candidate, n);
    if (g > 1 && g < n) return g;
  }
  return std::nullopt;
}

std::optional<BigInt> find_nontrivial_fixed_point(const RsaInstance& inst, std::uint64_t budget) {
  const BigInt& n = inst.n();
  auto trivial = [&](const BigInt& m) { return m == 0 || m == 1 || m == n - 1; };
  try {
    const auto points = enumerate_fixed_points(inst, 1, budget);
    auto factors = [&](const BigInt& m) { return extract_factor_from_fixed_point(m, n).has_value(); };
    const std::function<bool(const BigInt&)> preferences[] = {
        [&](const BigInt& m) { return !trivial(m) && gcd(m, n) == 1 && factors(m); },
        [&](const BigInt& m) { return !trivial(m) && factors(m); },
        [&](const BigInt& m) { return !trivial(m); },
    };
    for (const auto& accept : preferences) {
      const auto it = std::find_if(points.begin(), points.end(), accept);
      if (it != points.end()) return *it;
    }
    return std::nullopt;
  } catch (const CapExceeded&) {
    const Congruence lift[] = {{0, inst.p()}, {1, inst.q()}};
    return crt_combine(lift);
  }
}

}  // namespace rsafix
