#include "rsafix/report.hpp"

#include <sstream>

namespace rsafix {
namespace {

const BigInt kJsonSafeInteger = BigInt(1) << 53;

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

std::string pad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : std::string(width - text.size(), ' ') + text;
}

std::string instance_line(const RsaInstance& inst) {
  return "n = " + to_string(inst.n()) + " (p = " + to_string(inst.p()) + ", q = " + to_string(inst.q()) +
         "), e = " + to_string(inst.e());
}

std::string fraction_text(const Rational& value) {
  return value.get_den() == 1 ? value.get_num().get_str() : value.get_str();
}

void census_rows_table(std::ostringstream& out, const ExactOrderCensus& census) {
  out << pad("k", 12) << pad("T_k", 20) << pad("E_k", 20) << "\n";
  for (const auto& [k, units] : census.unit_counts) {
    out << pad(to_string(k), 12) << pad(to_string(units), 20) << pad(to_string(census.all_counts.at(k)), 20)
        << "\n";
  }
}

std::string census_csv(const ExactOrderCensus& census) {
  std::ostringstream out;
  out << "k,T_k,E_k\n";
  for (const auto& [k, units] : census.unit_counts) {
    out << to_string(k) << ',' << to_string(units) << ',' << to_string(census.all_counts.at(k)) << "\n";
  }
  return out.str();
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "table") return Format::table;
  throw InvalidArgument("unknown format '" + std::string(name) + "' (expected json, csv or table)");
}

Json integer_json(const BigInt& value) {
  if (abs(value) <= kJsonSafeInteger) {
    if (sgn(value) < 0) return Json(value.get_si());
    return Json(to_u64(value));
  }
  return Json(to_string(value));
}

BigInt integer_from_json(const Json& value) {
  if (value.is_number_unsigned()) return from_u64(value.get<std::uint64_t>());
  if (value.is_number_integer()) return BigInt(value.get<long>());
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    if (!text.empty() && text.front() == '-') return -parse_bigint(text.substr(1));
    return parse_bigint(text);
  }
  throw InvalidArgument("expected an integer, got " + value.dump());
}

Json rational_json(const Rational& value) {
  Rational reduced = value;
  reduced.canonicalize();
  Json out;
  out["num"] = integer_json(reduced.get_num());
  out["den"] = integer_json(reduced.get_den());
  return out;
}

Rational parse_fraction(std::string_view text) {
  const std::string input(text);
  Rational value;
  if (const auto slash = input.find('/'); slash != std::string::npos) {
    const BigInt num = parse_bigint(input.substr(0, slash));
    const BigInt den = parse_bigint(input.substr(slash + 1));
    if (den == 0) throw InvalidArgument("fraction with zero denominator: " + input);
    value = Rational(num, den);
  } else {
    std::string mantissa = input;
    long exponent = 0;
    if (const auto e = input.find_first_of("eE"); e != std::string::npos) {
      mantissa = input.substr(0, e);
      try {
        std::size_t used = 0;
        exponent = std::stol(input.substr(e + 1), &used);
        if (used != input.size() - e - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw InvalidArgument("not a number: " + input);
      }
    }
    std::string digits = mantissa;
    if (const auto point = mantissa.find('.'); point != std::string::npos) {
      digits = mantissa.substr(0, point) + mantissa.substr(point + 1);
      exponent -= static_cast<long>(mantissa.size() - point - 1);
    }
    value = Rational(parse_bigint(digits));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
      value /= Rational(scale);
    } else {
      value *= Rational(scale);
    }
  }
  value.canonicalize();
  return value;
}

Json instance_json(const RsaInstance& inst) {
  Json out;
  out["p"] = integer_json(inst.p());
  out["q"] = integer_json(inst.q());
  out["n"] = integer_json(inst.n());
  out["e"] = integer_json(inst.e());
  out["phi"] = integer_json(inst.phi());
  out["lambda"] = integer_json(inst.lambda());
  out["gcd_e_phi_ok"] = inst.gcd_e_phi_ok();
  return out;
}

Json census_json(const ExactOrderCensus& census) {
  Json rows = Json::array();
  for (const auto& [k, units] : census.unit_counts) {
    Json row;
    row["k"] = integer_json(k);
    row["T_k"] = integer_json(units);
    row["E_k"] = integer_json(census.all_counts.at(k));
    rows.push_back(std::move(row));
  }
  Json out;
  out["k_max"] = integer_json(census.k_max);
  out["rows"] = std::move(rows);
  return out;
}

ExactOrderCensus census_from_json(const Json& json) {
  ExactOrderCensus census;
  census.k_max = integer_from_json(json.at("k_max"));
  for (const auto& row : json.at("rows")) {
    const BigInt k = integer_from_json(row.at("k"));
    census.unit_counts.emplace(k, integer_from_json(row.at("T_k")));
    census.all_counts.emplace(k, integer_from_json(row.at("E_k")));
  }
  return census;
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::ok:
      return "OK";
    case Verdict::warn:
      return "WARN";
    case Verdict::degenerate:
      return "DEGENERATE";
  }
  return "?";
}

AuditReport build_audit(const RsaInstance& inst, const AuditOptions& options) {
  AuditReport report{inst, 0, full_census(inst), {}, 0, Verdict::ok, {}, options};
  report.k_max = report.census.k_max;
  report.min_fixed_points = report.census.all_counts.at(1);

  std::vector<BigInt> bounds = options.weak_bounds;
  bounds.push_back(options.warn_bound);
  bounds.push_back(report.k_max);
  for (const BigInt& bound : bounds) {
    if (bound < 1) throw InvalidArgument("weak-fraction bounds must be positive");
    BigInt weak = 0;
    for (const auto& [k, points] : report.census.all_counts) {
      if (k <= bound) weak += points;
    }
    Rational fraction(weak, inst.n());
    fraction.canonicalize();
    report.weak_fraction[bound] = fraction;
  }

  if (!inst.gcd_e_phi_ok()) {
    report.notes.push_back("gcd(e, phi(n)) = " + to_string(gcd(inst.e(), inst.phi())) +
                           ": e is not invertible mod phi(n), only mod lambda(n)");
  }
  const Rational& at_warn_bound = report.weak_fraction.at(options.warn_bound);
  if (report.k_max == 1) {
    report.verdict = Verdict::degenerate;
    report.notes.push_back("e = 1 (mod lambda(n)): the power map is the identity");
  } else {
    if (at_warn_bound > options.warn_fraction) {
      report.verdict = Verdict::warn;
      report.notes.push_back("fraction of points with period <= " + to_string(options.warn_bound) + " is " +
                             fraction_text(at_warn_bound) + ", above the threshold " +
                             fraction_text(options.warn_fraction));
    }
    if (report.k_max < options.k_max_floor) {
      report.verdict = Verdict::warn;
      report.notes.push_back("K_max = " + to_string(report.k_max) + " is below the floor " +
                             to_string(options.k_max_floor));
    }
  }
  return report;
}

std::string render_report(const AuditReport& report, Format format) {
  switch (format) {
    case Format::csv:
      return census_csv(report.census);
    case Format::table: {
      std::ostringstream out;
      out << instance_line(report.instance) << "\n";
      out << "phi = " << to_string(report.instance.phi()) << ", lambda = " << to_string(report.instance.lambda())
          << ", K_max = " << to_string(report.k_max) << "\n\n";
      census_rows_table(out, report.census);
      out << "\n" << pad("bound", 12) << pad("weak fraction", 20) << "\n";
      for (const auto& [bound, fraction] : report.weak_fraction) {
        out << pad(to_string(bound), 12) << pad(fraction_text(fraction), 20) << "\n";
      }
      out << "\nfixed points: " << to_string(report.min_fixed_points) << "\n";
      out << "verdict: " << verdict_name(report.verdict) << "\n";
      for (const auto& note : report.notes) out << "note: " << note << "\n";
      return out.str();
    }
    case Format::json:
      break;
  }
  Json weak = Json::array();
  for (const auto& [bound, fraction] : report.weak_fraction) {
    Json entry;
    entry["bound"] = integer_json(bound);
    entry["fraction"] = rational_json(fraction);
    weak.push_back(std::move(entry));
  }
  Json thresholds;
  thresholds["warn_bound"] = integer_json(report.options.warn_bound);
  thresholds["warn_fraction"] = rational_json(report.options.warn_fraction);
  thresholds["k_max_floor"] = integer_json(report.options.k_max_floor);

  Json out;
  out["instance"] = instance_json(report.instance);
  out["k_max"] = integer_json(report.k_max);
  out["census"] = census_json(report.census);
  out["weak_fraction"] = std::move(weak);
  out["min_fixed_points"] = integer_json(report.min_fixed_points);
  out["thresholds"] = std::move(thresholds);
  out["verdict"] = verdict_name(report.verdict);
  out["notes"] = Json::array();
  for (const auto& note : report.notes) out["notes"].push_back(note);
  return dump(out);
}

std::string render_census(const RsaInstance& inst, const ExactOrderCensus& census, Format format) {
  switch (format) {
    case Format::csv:
      return census_csv(census);
    case Format::table: {
      std::ostringstream out;
      out << instance_line(inst) << ", K_max = " << to_string(census.k_max) << "\n";
      census_rows_table(out, census);
      return out.str();
    }
    case Format::json:
      break;
  }
  Json out;
  out["instance"] = instance_json(inst);
  out["census"] = census_json(census);
  return dump(out);
}

std::string render_cycles(const RsaInstance& inst, const CycleStructure& cycles, Format format) {
  if (format == Format::csv || format == Format::table) {
    std::ostringstream out;
    if (format == Format::csv) {
      out << "k,points,cycles\n";
      for (const auto& [k, count] : cycles.entries) {
        out << to_string(k) << ',' << to_string(count.points) << ',' << to_string(count.cycles) << "\n";
      }
    } else {
      out << instance_line(inst) << "\n" << pad("length", 12) << pad("points", 20) << pad("cycles", 20) << "\n";
      for (const auto& [k, count] : cycles.entries) {
        out << pad(to_string(k), 12) << pad(to_string(count.points), 20) << pad(to_string(count.cycles), 20)
            << "\n";
      }
    }
    return out.str();
  }
  Json rows = Json::array();
  for (const auto& [k, count] : cycles.entries) {
    Json row;
    row["k"] = integer_json(k);
    row["points"] = integer_json(count.points);
    row["cycles"] = integer_json(count.cycles);
    rows.push_back(std::move(row));
  }
  Json out;
  out["instance"] = instance_json(inst);
  out["cycles"] = std::move(rows);
  return dump(out);
}

std::string render_enumeration(const RsaInstance& inst, const BigInt& k, const std::vector<BigInt>& points,
                               Format format) {
  if (format == Format::csv) {
    std::string out = "point\n";
    for (const auto& m : points) out += to_string(m) + "\n";
    return out;
  }
  if (format == Format::table) {
    std::string out = instance_line(inst) + "\n" + std::to_string(points.size()) + " points of period " +
                      to_string(k) + "\n";
    for (const auto& m : points) out += "  " + to_string(m) + "\n";
    return out;
  }
  Json out;
  out["instance"] = instance_json(inst);
  out["k"] = integer_json(k);
  out["count"] = points.size();
  out["points"] = Json::array();
  for (const auto& m : points) out["points"].push_back(integer_json(m));
  return dump(out);
}

std::string render_factor_demo(const RsaInstance& inst, const std::optional<BigInt>& fixed_point, Format format) {
  const BigInt& n = inst.n();
  std::optional<BigInt> factor;
  if (fixed_point) factor = extract_factor_from_fixed_point(*fixed_point, n);

  if (format != Format::json) {
    std::ostringstream out;
    if (format == Format::csv) {
      out << "fixed_point,mod_p,mod_q,factor,cofactor\n";
      if (fixed_point) {
        out << to_string(*fixed_point) << ',' << to_string(*fixed_point % inst.p()) << ','
            << to_string(*fixed_point % inst.q()) << ',' << (factor ? to_string(*factor) : "") << ','
            << (factor ? to_string(n / *factor) : "") << "\n";
      }
      return out.str();
    }
    out << instance_line(inst) << "\n";
    if (!fixed_point) {
      out << "no nontrivial fixed point\n";
      return out.str();
    }
    const BigInt& m = *fixed_point;
    out << "fixed point m = " << to_string(m) << " = (" << to_string(m % inst.p()) << " mod p, "
        << to_string(m % inst.q()) << " mod q)\n";
    out << "gcd(m, n) = " << to_string(gcd(m, n)) << "\n";
    out << "gcd(m - 1, n) = " << to_string(gcd(m - 1, n)) << "\n";
    out << "gcd(m + 1, n) = " << to_string(gcd(m + 1, n)) << "\n";
    if (factor) {
      out << "n = " << to_string(*factor) << " * " << to_string(n / *factor) << "\n";
    } else {
      out << "no factor from this fixed point\n";
    }
    return out.str();
  }

  Json out;
  out["instance"] = instance_json(inst);
  if (!fixed_point) {
    out["fixed_point"] = nullptr;
    out["factor"] = nullptr;
    return dump(out);
  }
  const BigInt& m = *fixed_point;
  out["fixed_point"] = integer_json(m);
  out["mod_p"] = integer_json(m % inst.p());
  out["mod_q"] = integer_json(m % inst.q());
  out["gcd_m"] = integer_json(gcd(m, n));
  out["gcd_m_minus_1"] = integer_json(gcd(m - 1, n));
  out["gcd_m_plus_1"] = integer_json(gcd(m + 1, n));
  out["factor"] = factor ? integer_json(*factor) : Json(nullptr);
  out["cofactor"] = factor ? integer_json(n / *factor) : Json(nullptr);
  return dump(out);
}

}  // namespace rsafix
