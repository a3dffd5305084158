#include <optional>

#include "rsafix/arith.hpp"

namespace rsafix {
namespace {

constexpr std::uint64_t kTrialLimit = 1u << 16;

class RhoBudget {
 public:
  explicit RhoBudget(std::uint64_t steps) : remaining_(steps) {}

  bool take(std::uint64_t steps) {
    if (steps > remaining_) {
      remaining_ = 0;
      return false;
    }
    remaining_ -= steps;
    return true;
  }

 private:
  std::uint64_t remaining_;
};

// Brent's cycle finding with batched gcds. Returns a nontrivial factor of the
// odd composite n, or nullopt when the budget is exhausted.
std::optional<std::uint64_t> rho_u64(std::uint64_t n, RhoBudget& budget) {
  constexpr std::uint64_t kBatch = 128;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    auto step = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t batch = std::min(kBatch, r - k);
        if (!budget.take(batch)) return std::nullopt;
        for (std::uint64_t i = 0; i < batch; ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

std::optional<BigInt> rho_big(const BigInt& n, RhoBudget& budget) {
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    auto step = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t batch = std::min(kBatch, r - k);
        if (!budget.take(batch)) return std::nullopt;
        for (std::uint64_t i = 0; i < batch; ++i) {
          step(y);
          diff = x - y;
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        step(ys);
        g = gcd(x - ys, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

class Factorizer {
 public:
  Factorizer(const FactorizeOptions& options) : budget_(options.step_budget) {}

  void split(const BigInt& n) {
    if (n == 1) return;
    if (fits_u64(n)) {
      const std::uint64_t v = to_u64(n);
      if (is_prime_u64(v)) {
        result_.multiply(n);
        return;
      }
      const auto factor = rho_u64(v, budget_);
      if (!factor) fail("step budget exhausted", n);
      split(from_u64(*factor));
      split(from_u64(v / *factor));
      return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 25) != 0) {
      fail("cofactor " + to_string(n) + " is a probable prime beyond the exact primality range", n);
    }
    const auto factor = rho_big(n, budget_);
    if (!factor) fail("step budget exhausted", n);
    split(*factor);
    split(n / *factor);
  }

  void take_small_prime(std::uint64_t p, unsigned exponent) { result_.multiply(from_u64(p), exponent); }

  Factorization& result() { return result_; }

 private:
  [[noreturn]] void fail(const std::string& why, const BigInt& rest) {
    throw FactoringFailed("factorize: " + why, result_, rest);
  }

  RhoBudget budget_;
  Factorization result_;
};

}  // namespace

Factorization factorize(const BigInt& n, const FactorizeOptions& options) {
  if (n < 1) throw InvalidArgument("factorize: argument must be >= 1");
  Factorizer factorizer(options);
  BigInt rest = n;
  for (std::uint64_t d = 2; d < kTrialLimit; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
      unsigned exponent = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
        ++exponent;
      }
      factorizer.take_small_prime(d, exponent);
    }
    if (rest < BigInt(d) * d) break;
  }
  if (rest > 1) {
    if (rest < BigInt(kTrialLimit) * kTrialLimit) {
      // No factor below sqrt(rest) survived trial division.
      factorizer.take_small_prime(to_u64(rest), 1);
    } else {
      factorizer.split(rest);
    }
  }
  return std::move(factorizer.result());
}

}  // namespace rsafix
