#pragma once

#include <stdexcept>
#include <string>

#include "rsafix/bigint.hpp"
#include "rsafix/factorization.hpp"

namespace rsafix {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Factoring gave up before completing. `partial` holds the certified prime
/// powers found so far, `remaining` the cofactor that was not split.
class FactoringFailed : public std::runtime_error {
 public:
  FactoringFailed(const std::string& what, Factorization partial, BigInt remaining)
      : std::runtime_error(what), partial_(std::move(partial)), remaining_(std::move(remaining)) {}

  const Factorization& partial() const { return partial_; }
  const BigInt& remaining() const { return remaining_; }

 private:
  Factorization partial_;
  BigInt remaining_;
};

/// An enumeration would produce more results than the caller allowed.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, BigInt count)
      : std::runtime_error(what), count_(std::move(count)) {}

  const BigInt& count() const { return count_; }

 private:
  BigInt count_;
};

/// A brute-force scan was asked for a modulus above its configured limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsafix
