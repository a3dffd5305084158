#include "rsafix/cli.hpp"

#include <cstdlib>
#include <functional>

#include <CLI11.hpp>

#include "rsafix/oracle.hpp"
#include "rsafix/report.hpp"

namespace rsafix {
namespace {

struct InstanceArgs {
  std::string p, q, n, e;
  std::string format = "json";
  std::uint64_t budget = FactorizeOptions{}.step_budget;
};

void add_pq(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--p", args.p, "first prime (decimal or 0x-hex)")->required();
  cmd->add_option("--q", args.q, "second prime (decimal or 0x-hex)")->required();
  cmd->add_option("--e", args.e, "public exponent")->required();
}

void add_format(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--format", args.format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

RsaInstance instance_from_pq(const InstanceArgs& args) {
  return RsaInstance::create(parse_bigint(args.p), parse_bigint(args.q), parse_bigint(args.e));
}

// n must split as exactly two distinct odd primes.
RsaInstance instance_from_n(const InstanceArgs& args) {
  const BigInt n = parse_bigint(args.n);
  if (n < 15) throw InvalidArgument("n = " + to_string(n) + " is not a product of two distinct odd primes");
  const Factorization f = factorize(n, FactorizeOptions{args.budget});
  if (f.factors.size() != 2 || f.factors[0].exponent != 1 || f.factors[1].exponent != 1) {
    throw InvalidArgument("n = " + to_string(n) + " is not a product of two distinct odd primes");
  }
  return RsaInstance::create(f.factors[0].prime, f.factors[1].prime, parse_bigint(args.e));
}

std::vector<BigInt> parse_bound_list(const std::string& text) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_bigint(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed points of the RSA power map x -> x^e mod n"};
  app.require_subcommand(1);

  InstanceArgs inst_args;
  std::function<std::string()> action;

  auto* census_cmd = app.add_subcommand("census", "period census T_k / E_k for every k | K_max");
  add_pq(census_cmd, inst_args);
  add_format(census_cmd, inst_args);
  census_cmd->callback([&] {
    action = [&] {
      const auto inst = instance_from_pq(inst_args);
      return render_census(inst, full_census(inst), parse_format(inst_args.format));
    };
  });

  std::string weak_bounds, warn_bound = "2", warn_fraction, k_max_floor = "64";
  auto* audit_cmd = app.add_subcommand("audit", "exponent audit against small-period points");
  audit_cmd->add_option("--p", inst_args.p, "first prime");
  audit_cmd->add_option("--q", inst_args.q, "second prime");
  auto* audit_n = audit_cmd->add_option("--n", inst_args.n, "modulus, factored first");
  audit_cmd->add_option("--e", inst_args.e, "public exponent")->required();
  audit_cmd->add_option("--weak-bounds", weak_bounds, "comma-separated period bounds");
  audit_cmd->add_option("--warn-bound", warn_bound, "bound at which the warn fraction is checked");
  audit_cmd->add_option("--warn-fraction", warn_fraction,
                        std::string("threshold as a/b or decimal (default 1/1000, env ") + kWarnFractionEnv + ")");
  audit_cmd->add_option("--kmax-floor", k_max_floor, "warn when K_max is below this");
  audit_cmd->add_option("--budget", inst_args.budget, "factoring step budget for --n");
  add_format(audit_cmd, inst_args);
  audit_cmd->callback([&] {
    action = [&] {
      const bool by_n = audit_n->count() > 0;
      if (by_n == (!inst_args.p.empty() || !inst_args.q.empty())) {
        throw InvalidArgument("audit needs either --p and --q, or --n");
      }
      if (!by_n && (inst_args.p.empty() || inst_args.q.empty())) {
        throw InvalidArgument("audit needs both --p and --q");
      }
      AuditOptions options;
      if (!weak_bounds.empty()) options.weak_bounds = parse_bound_list(weak_bounds);
      options.warn_bound = parse_bigint(warn_bound);
      options.k_max_floor = parse_bigint(k_max_floor);
      if (!warn_fraction.empty()) {
        options.warn_fraction = parse_fraction(warn_fraction);
      } else if (const char* env = std::getenv(kWarnFractionEnv); env != nullptr && *env != '\0') {
        options.warn_fraction = parse_fraction(env);
      }
      if (options.warn_fraction < 0 || options.warn_fraction > 1) {
        throw InvalidArgument("warn fraction must lie in [0, 1]");
      }
      const auto inst = by_n ? instance_from_n(inst_args) : instance_from_pq(inst_args);
      return render_report(build_audit(inst, options), parse_format(inst_args.format));
    };
  });

  auto* cycles_cmd = app.add_subcommand("cycles", "analytic cycle structure of the power map");
  add_pq(cycles_cmd, inst_args);
  add_format(cycles_cmd, inst_args);
  cycles_cmd->callback([&] {
    action = [&] {
      const auto inst = instance_from_pq(inst_args);
      return render_cycles(inst, analytic_cycle_structure(inst), parse_format(inst_args.format));
    };
  });

  std::string k = "1";
  std::uint64_t cap = kDefaultEnumerationCap;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "list every point of exact period k");
  add_pq(enumerate_cmd, inst_args);
  enumerate_cmd->add_option("--k", k, "period")->required();
  enumerate_cmd->add_option("--cap", cap, "maximum number of points to list");
  add_format(enumerate_cmd, inst_args);
  enumerate_cmd->callback([&] {
    action = [&] {
      const auto inst = instance_from_pq(inst_args);
      const BigInt period = parse_bigint(k);
      return render_enumeration(inst, period, enumerate_fixed_points(inst, period, cap),
                                parse_format(inst_args.format));
    };
  });

  std::uint64_t limit = oracle::kDefaultLimit;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force census by iterating every residue");
  oracle_cmd->add_option("--n", inst_args.n, "modulus")->required();
  oracle_cmd->add_option("--e", inst_args.e, "public exponent")->required();
  oracle_cmd->add_option("--limit", limit, "largest modulus the scan accepts");
  oracle_cmd->add_option("--budget", inst_args.budget, "factoring step budget");
  add_format(oracle_cmd, inst_args);
  oracle_cmd->callback([&] {
    action = [&] {
      const BigInt n = parse_bigint(inst_args.n);
      if (!fits_u64(n) || to_u64(n) > limit) {
        throw LimitExceeded("modulus " + to_string(n) + " exceeds the oracle limit of " + std::to_string(limit));
      }
      const auto inst = instance_from_n(inst_args);
      return render_census(inst, oracle::brute_power_map_census(inst, limit), parse_format(inst_args.format));
    };
  });

  auto* demo_cmd = app.add_subcommand("factor-demo", "factor n from a nontrivial fixed point");
  add_pq(demo_cmd, inst_args);
  demo_cmd->add_option("--cap", cap, "largest fixed-point set to enumerate");
  add_format(demo_cmd, inst_args);
  demo_cmd->callback([&] {
    action = [&] {
      const auto inst = instance_from_pq(inst_args);
      return render_factor_demo(inst, find_nontrivial_fixed_point(inst, cap), parse_format(inst_args.format));
    };
  });

  std::vector<std::string> storage{"rsafix"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& arg : storage) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    out << action();
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const FactoringFailed& e) {
    err << "error: " << e.what() << " (unfactored cofactor " << to_string(e.remaining()) << ")\n";
    return kExitFactoringFailed;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  }
}

}  // namespace rsafix
