#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsafix/census.hpp"
#include "rsafix/dynamics.hpp"

namespace rsafix {

using Json = nlohmann::ordered_json;
using Rational = mpq_class;

enum class Format { json, csv, table };

Format parse_format(std::string_view name);

/// Integers up to 2^53 become JSON numbers, larger ones exact decimal strings.
Json integer_json(const BigInt& value);
BigInt integer_from_json(const Json& value);

/// {"num": ..., "den": ...} in lowest terms.
Json rational_json(const Rational& value);

/// "a/b", "0.001" or "1e-3", converted exactly.
Rational parse_fraction(std::string_view text);

Json instance_json(const RsaInstance& inst);
Json census_json(const ExactOrderCensus& census);
ExactOrderCensus census_from_json(const Json& json);

enum class Verdict { ok, warn, degenerate };
std::string_view verdict_name(Verdict verdict);

struct AuditOptions {
  std::vector<BigInt> weak_bounds{1, 2, 4, 8, 16, 32};
  /// The bound at which warn_fraction is checked.
  BigInt warn_bound = 2;
  Rational warn_fraction{1, 1000};
  BigInt k_max_floor = 64;
};

/// Environment variable overriding the default warn_fraction.
inline constexpr const char* kWarnFractionEnv = "RSA_FIXPOINT_WARN_FRACTION";

struct AuditReport {
  RsaInstance instance;
  BigInt k_max;
  ExactOrderCensus census;
  /// bound B -> fraction of Z_n whose period is at most B
  std::map<BigInt, Rational> weak_fraction;
  BigInt min_fixed_points;
  Verdict verdict = Verdict::ok;
  std::vector<std::string> notes;
  AuditOptions options;
};

AuditReport build_audit(const RsaInstance& inst, const AuditOptions& options = {});

std::string render_report(const AuditReport& report, Format format);
std::string render_census(const RsaInstance& inst, const ExactOrderCensus& census, Format format);
std::string render_cycles(const RsaInstance& inst, const CycleStructure& cycles, Format format);
std::string render_enumeration(const RsaInstance& inst, const BigInt& k, const std::vector<BigInt>& points,
                               Format format);
std::string render_factor_demo(const RsaInstance& inst, const std::optional<BigInt>& fixed_point, Format format);

}  // namespace rsafix
