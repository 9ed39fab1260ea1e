#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synchrony/cli/report.hpp"
#include "synchrony/cli/scenario_file.hpp"
#include "synchrony/cli/text.hpp"
#include "synchrony/spacetime.hpp"

namespace synchrony::cli {

enum ExitCode : int { kPass = 0, kToleranceFailure = 1, kInputError = 2, kDegenerate = 3 };

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Flag value, then SYNCHRONY_SEED, then the scenario's own seed, then 42.
/// Throws InvalidArgument when the environment value is not an unsigned
/// 64-bit integer.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> scenario);

/// Resynchronization evaluated in exact arithmetic and rounded once.
Event4 transform_exact(const Event4& e, const SyncParam& to);

struct LightspeedResult {
  Vec3 direction;
  bool normalized = false;
  double forward = 0.0;
  double backward = 0.0;
  double round_trip_time = 0.0;
};

/// Speeds along +n and -n and the out-and-back time over unit length.
/// Throws InvalidArgument for a zero direction, DegenerateConvention when a
/// leg has 1 + a.n = 0.
LightspeedResult lightspeed(const Vec3& alpha, const Vec3& direction);

inline const std::vector<std::string> kQuantumChecks = {"amplitude", "nosignal", "chsh", "counterexample"};

Report quantum_report(const ScenarioFile& file, std::string_view check, std::uint64_t seed,
                      const std::string& digest);

struct PropagatorOptions {
  int samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  bool quadrature = false;
  std::optional<double> alpha;  // fixed convention along x; random vectors otherwise
  double range = 3.0;
  std::vector<double> masses{0.0, 1.0};
  std::vector<double> epsilons{1e-3};
};

inline constexpr double kIntegrandTolerance = 1e-14;
inline constexpr double kQuadratureTolerance = 1e-6;

Report propagator_report(const PropagatorOptions& options);

inline const std::vector<std::string> kSweepOps = {"lightspeed", "epsilon", "order", "nosignal"};

/// One row per alpha in ascending order, alpha_i = (min (n - i) + max i) / n with n = steps - 1.
/// Rows are evaluated concurrently.
CsvTable sweep_table(std::string_view op, double alpha_min, double alpha_max, int steps, std::uint64_t seed);

/// Entry point behind the `synchrony` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace synchrony::cli
