// Serial reference kernels against their OpenMP counterparts on the
// n <= 3000 instance grid.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "rsafix/census.hpp"
#include "rsafix/dynamics.hpp"
#include "rsafix/oracle.hpp"
#include "sweep.hpp"

namespace {

double seconds(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t max_n = argc > 1 ? std::stoull(argv[1]) : 3000;
  const std::size_t per_n = argc > 2 ? std::stoull(argv[2]) : 20;
  const auto instances = rsafix::testing::sweep_instances(max_n, per_n);
  std::printf("%zu instances, n <= %llu, %d OpenMP threads\n", instances.size(),
              static_cast<unsigned long long>(max_n), omp_get_max_threads());

  std::uint64_t checksum = 0;
  const double serial = seconds([&] {
    for (const auto& inst : instances) checksum += rsafix::oracle::brute_periods_serial(inst).size();
  });
  const double parallel = seconds([&] {
    for (const auto& inst : instances) checksum += rsafix::oracle::brute_periods(inst).size();
  });
  std::printf("oracle periods   serial %8.3f s   parallel %8.3f s\n", serial, parallel);

  const double census_serial = seconds([&] {
    for (const auto& inst : instances) {
      checksum += rsafix::full_census(inst, rsafix::Execution::serial).k_max.get_ui();
    }
  });
  const double census_parallel = seconds([&] {
    for (const auto& inst : instances) {
      checksum += rsafix::full_census(inst, rsafix::Execution::parallel).k_max.get_ui();
    }
  });
  std::printf("full census      serial %8.3f s   parallel %8.3f s\n", census_serial, census_parallel);

  const double enum_serial = seconds([&] {
    for (const auto& inst : instances) {
      for (const auto& [k, count] : rsafix::full_census(inst).all_counts) {
        checksum += rsafix::enumerate_fixed_points(inst, k, rsafix::kDefaultEnumerationCap,
                                                   rsafix::Execution::serial).size();
      }
    }
  });
  const double enum_parallel = seconds([&] {
    for (const auto& inst : instances) {
      for (const auto& [k, count] : rsafix::full_census(inst).all_counts) {
        checksum += rsafix::enumerate_fixed_points(inst, k).size();
      }
    }
  });
  std::printf("enumeration      serial %8.3f s   parallel %8.3f s\n", enum_serial, enum_parallel);

  const double periods = seconds([&] {
    for (const auto& inst : instances) {
      const rsafix::PowerMap map(inst);
      for (std::uint64_t x = 0; x < inst.n().get_ui(); ++x) checksum += map.period_of(x).period.get_ui();
    }
  });
  std::printf("closed-form periods        %8.3f s\n", periods);
  std::printf("checksum %llu\n", static_cast<unsigned long long>(checksum));
}
