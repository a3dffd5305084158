#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rsafix {

using BigInt = mpz_class;

// Accepts unsigned decimal or 0x-prefixed hex. Throws InvalidArgument otherwise.
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& value);

inline bool fits_u64(const BigInt& value) {
  return sgn(value) >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& value);
BigInt from_u64(std::uint64_t value);

}  // namespace rsafix
