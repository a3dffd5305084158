#include "rsafix/bigint.hpp"

#include <algorithm>
#include <cctype>

#include "rsafix/errors.hpp"

namespace rsafix {

BigInt parse_bigint(std::string_view text) {
  int base = 10;
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  }
  const bool valid = !digits.empty() && std::all_of(digits.begin(), digits.end(), [base](char c) {
    return base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                      : std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
  if (!valid) {
    throw InvalidArgument("not a nonnegative decimal or 0x-hex integer: '" + std::string(text) + "'");
  }
  BigInt value;
  value.set_str(std::string(digits), base);
  return value;
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::uint64_t to_u64(const BigInt& value) {
  if (!fits_u64(value)) {
    throw InvalidArgument("value does not fit in 64 bits: " + to_string(value));
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

BigInt from_u64(std::uint64_t value) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return out;
}

}  // namespace rsafix
