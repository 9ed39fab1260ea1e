// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is 0
// only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "synchrony/cli/commands.hpp"
#include "synchrony/cli/scenario_file.hpp"
#include "synchrony/exact.hpp"
#include "synchrony/kinematics.hpp"
#include "synchrony/metric.hpp"
#include "synchrony/propagator.hpp"
#include "synchrony/quantum.hpp"
#include "synchrony/random_scenario.hpp"

using namespace synchrony;

namespace {

constexpr double kRoundTripTol = 1e-12;
constexpr double kRunnerTol = 1e-12;
constexpr double kPhotonTol = 1e-12;
constexpr double kMetricTol = 1e-12;
constexpr double kWaveTol = 1e-12;
constexpr double kAmplitudeTol = 1e-10;
constexpr double kNoSignalTol = 1e-10;
constexpr double kChshTol = 1e-9;
constexpr double kAmplitudeGapMin = 0.01;
constexpr double kSignalingGapMin = 1e-3;
constexpr double kRegressionTol = 1e-12;
constexpr double kPinnedAmplitudeGap = 0.3733941970073611;
constexpr double kPinnedSignalingGap = 0.42073549240394825;
constexpr double kIntegrandTol = 1e-14;
constexpr double kQuadratureTol = 1e-6;
constexpr double kIntervalTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

std::string scenario(const char* name) { return std::string(SYNCHRONY_SCENARIO_DIR) + "/" + name; }

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void one_way_light_speeds(Outcome& o) {
  double worst_trip = 0.0;
  for (const double a : {-0.9, -0.4, 0.0, 0.5, 0.99, 3.0}) {
    const Rational ar = to_rational(a);
    o.require(one_way_velocity(Rational(1), ar) == Rational(1) / (Rational(1) + ar), "exact +c at a=" + g(a));
    o.require(one_way_velocity(Rational(-1), ar) == Rational(-1) / (Rational(1) - ar), "exact -c at a=" + g(a));
    o.require(one_way_velocity(1.0, a) == 1.0 / (1.0 + a), "double +c at a=" + g(a));
    o.require(one_way_velocity(-1.0, a) == -1.0 / (1.0 - a), "double -c at a=" + g(a));
    const double trip = round_trip_time(1.0, one_way_velocity(1.0, a), -one_way_velocity(-1.0, a));
    worst_trip = std::max(worst_trip, std::abs(trip - 2.0));
  }
  o.require(worst_trip <= kRoundTripTol, "round trip");
  o.detail << "max |T-2| = " << g(worst_trip);
}

void child_runner(Outcome& o) {
  // The convention in which the runner's +2 m/s reads as 4 m/s.
  const double v = 2.0;
  const double target = 4.0;
  const double a = (v / target - 1.0) / v;
  const double east = one_way_velocity(v, a);
  const double west = one_way_velocity(-v, a);
  o.require(a == -0.25, "a = -1/4");
  o.require(std::abs(east - 4.0) <= kRunnerTol, "east 4");
  o.require(std::abs(west + 4.0 / 3.0) <= kRunnerTol, "west -4/3");
  o.detail << "a = " << a << ", east = " << east << ", west = " << west;
}

void photon(Outcome& o) {
  const Event4 moved = resynchronize(Event4::make(1.0, 1.0), SyncParam::along_x(-0.4, "rho"));
  o.require(std::abs(moved.t - 0.6) <= kPhotonTol, "library t'");
  const cli::ScenarioFile file = cli::ScenarioFile::load(scenario("photon_0p6.json"));
  const cli::NamedEvent& ev = file.event_by_label("photon", "acceptance");
  const Event4 via_file = cli::transform_exact(ev.event, file.sync_by_label("rho", "acceptance"));
  o.require(std::abs(via_file.t - 0.6) <= kPhotonTol, "scenario t'");
  o.detail << "t' = " << cli::format_double(moved.t) << " (scenario " << cli::format_double(via_file.t) << ")";
}

void metric_suite(Outcome& o) {
  gen::Source src(401);
  double worst_line = 0.0;
  double worst_det = 0.0;
  bool entries_exact = true;
  bool harmonic_exact = true;
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = src.vec3(-5.0, 5.0);
    const auto ar = to_rational(a);
    const auto gp = metric_from_alpha(ar);
    const auto ref = oracle::metric<Rational>({ar[0], ar[1], ar[2]});
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) entries_exact = entries_exact && gp(r, c) == ref[r][c];

    worst_det = std::max(worst_det, std::abs(metric_from_alpha(a).determinant() + 1.0));

    const SyncParam p = SyncParam::from_vector(a, "p");
    const Event4 e1 = src.event(3.0);
    const Event4 e2 = src.event(3.0);
    const Vec4 d = e2.coordinates() - e1.coordinates();
    const double s2 = d[0] * d[0] - d[1] * d[1] - d[2] * d[2] - d[3] * d[3];
    const Vec4 dp = resynchronize(e2, p).coordinates() - resynchronize(e1, p).coordinates();
    const double scale = std::max(1.0, dp.squared_norm() * (1.0 + a.squared_norm()));
    worst_line = std::max(worst_line, std::abs(line_element(dp, a) - s2) / scale);

    const Vec3 n = src.direction();
    if (std::abs(n.dot(a)) < 0.999) {
      const auto nr = to_rational(n);
      const Rational f = directional_light_speed(nr, ar);
      const Rational b = directional_light_speed(Vector3<Rational>(-nr), ar);
      harmonic_exact = harmonic_exact && Rational(1) / f + Rational(1) / b == Rational(2);
    }
  }
  o.require(entries_exact, "entries");
  o.require(worst_line <= kMetricTol, "line element");
  o.require(worst_det <= kMetricTol, "determinant");
  o.require(harmonic_exact, "harmonic mean");
  o.detail << "entries exact, line element " << g(worst_line) << ", |det+1| " << g(worst_det)
           << ", harmonic identity exact";
}

void wave_suite(Outcome& o) {
  gen::Source src(501);
  double worst_phase = 0.0;
  double worst_disp = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SyncParam p = src.convention(5.0);
    const Event4 x = src.event(3.0);
    const WaveFourVector w{src.uniform(-5.0, 5.0), src.vec3(-5.0, 5.0), SyncParam::einstein()};
    const WaveFourVector wp = transform_wavevector(w, p);
    const Event4 xp = resynchronize(x, p);
    const double phase_scale = 1.0 + std::abs(w.omega) * (std::abs(x.t) + std::abs(p.a.dot(x.x))) +
                               std::abs(wp.k.dot(xp.x));
    worst_phase = std::max(worst_phase, std::abs(dot_kx(wp, xp) - dot_kx(w, x)) / phase_scale);
    const double m = src.uniform(0.0, 3.0);
    const double disp_scale = 1.0 + w.omega * w.omega + wp.k.squared_norm() + m * m;
    worst_disp = std::max(worst_disp, std::abs(dispersion_check(wp, m) - dispersion_check(w, m)) / disp_scale);
  }
  o.require(worst_phase <= kWaveTol, "k.x");
  o.require(worst_disp <= kWaveTol, "dispersion");
  o.detail << "k.x " << g(worst_phase) << ", dispersion " << g(worst_disp);
}

oracle::Scenario to_oracle(const quantum::QuantumScenario& s) {
  return {s.dim_a, s.dim_b, s.full_hamiltonian(), s.o_a, s.o_b, s.times.t_in, s.times.t_a, s.times.t_b,
          s.times.t_out, s.psi_in, s.psi_out};
}

void order_independence(Outcome& o) {
  using quantum::Order;
  quantum::ScenarioGenerator gen(601);
  const std::pair<int, int> shapes[] = {{2, 2}, {2, 3}, {3, 3}, {4, 4}};
  double worst_gap = 0.0;
  double worst_forms = 0.0;
  double worst_oracle = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto [da, db] = shapes[i % 4];
    const quantum::QuantumScenario s = gen.commuting(da, db);
    const auto ma = quantum::amplitude_ordered(s, Order::a_first);
    const auto mb = quantum::amplitude_ordered(s, Order::b_first);
    worst_gap = std::max(worst_gap, std::abs(ma - mb));
    for (const Order order : {Order::a_first, Order::b_first}) {
      const auto ordered = order == Order::a_first ? ma : mb;
      worst_forms = std::max({worst_forms, std::abs(ordered - quantum::amplitude_factored(s, order)),
                              std::abs(ordered - quantum::amplitude_heisenberg(s, order))});
    }
    worst_oracle = std::max(worst_oracle, std::abs(ma - oracle::amplitude(to_oracle(s), true)));
  }
  o.require(worst_gap < kAmplitudeTol, "ordering gap");
  o.require(worst_forms < kAmplitudeTol, "three forms");
  o.require(worst_oracle < kAmplitudeTol, "oracle");
  o.detail << "ordering gap " << g(worst_gap) << ", three-form " << g(worst_forms) << ", vs oracle "
           << g(worst_oracle);
}

void no_signaling(Outcome& o) {
  quantum::ScenarioGenerator gen(701);
  const std::pair<int, int> shapes[] = {{2, 2}, {2, 3}, {3, 3}, {4, 4}};
  double worst_tv = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [da, db] = shapes[i % 4];
    const quantum::QuantumScenario s = gen.commuting(da, db);
    const auto remote = gen.measurement(da);
    const auto local = gen.measurement(db);
    worst_tv = std::max(worst_tv, quantum::total_variation(quantum::marginal_distribution(s, nullptr, local),
                                                           quantum::marginal_distribution(s, &remote, local)));
  }
  const cli::ScenarioFile file = cli::ScenarioFile::load(scenario("singlet_chsh.json"));
  const auto& chsh = *file.quantum->chsh;
  const double s = quantum::chsh_value(chsh.state.value_or(file.quantum->scenario.psi_in), chsh.angles_a, chsh.angles_b);
  const double tsirelson = 2.0 * std::numbers::sqrt2;
  o.require(worst_tv < kNoSignalTol, "TV distance");
  o.require(std::abs(std::abs(s) - tsirelson) <= kChshTol, "CHSH");
  o.detail << "max TV " << g(worst_tv) << ", |S| = " << cli::format_double(std::abs(s));
}

void interaction_counterexample(Outcome& o) {
  const cli::ScenarioFile file = cli::ScenarioFile::load(scenario("interacting_sigmaxx.json"));
  const cli::QuantumSection& q = *file.quantum;
  const double gap = std::abs(quantum::amplitude_ordered(q.scenario, quantum::Order::a_first) -
                              quantum::amplitude_ordered(q.scenario, quantum::Order::b_first));
  const quantum::QuantumScenario ns = q.nosignal_scenario();
  const auto& local = q.nosignal->local.front();
  const auto& remote = q.nosignal->remote.front();
  const double signal = quantum::total_variation(quantum::marginal_distribution(ns, nullptr, local),
                                                 quantum::marginal_distribution(ns, &remote, local));
  o.require(gap > kAmplitudeGapMin, "amplitude gap");
  o.require(signal > kSignalingGapMin, "signaling gap");
  o.require(std::abs(gap - kPinnedAmplitudeGap) <= kRegressionTol, "pinned amplitude gap");
  o.require(std::abs(signal - kPinnedSignalingGap) <= kRegressionTol, "pinned signaling gap");
  o.detail << "amplitude gap " << cli::format_double(gap) << ", signaling gap " << cli::format_double(signal);
}

void propagator_identity(Outcome& o) {
  using namespace propagator;
  gen::Source src(901);
  double worst = 0.0;
  double worst_middle = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MomentumSample k{src.uniform(-5, 5), src.vec3(-5, 5)};
    const Event4 x = src.event(3.0);
    const SyncParam a = src.convention(0.9);
    const double mass = (i % 3) * 0.75;
    const PropagatorPoint pe{x, mass, 1e-3};
    const PropagatorPoint pr{resynchronize(x, a), mass, 1e-3};
    worst = std::max(worst, relative_gap(integrand_einstein(k, pe), integrand_resynced(k, pr)));
    const MomentumSample primed{k.omega, k.k + a.a * k.omega};
    const auto [second, third] = middle_form_check(primed, pr);
    worst_middle = std::max(worst_middle, relative_gap(second, third));
  }
  const double quad = relative_gap(propagator_quadrature_1p1(1.0, 0.5, 1.0, 0.05, 0.0),
                                   propagator_quadrature_1p1(1.0, 0.5, 1.0, 0.05, 0.7));
  o.require(worst < kIntegrandTol, "integrand");
  o.require(worst_middle < kIntegrandTol, "middle form");
  o.require(quad < kQuadratureTol, "quadrature");
  o.detail << "integrand " << g(worst) << ", middle form " << g(worst_middle) << ", quadrature (K=20, n=512) "
           << g(quad);
}

void timelike_reversal(Outcome& o) {
  const Event4 e1 = Event4::make(0.0, 0.0);
  const Event4 e2 = Event4::make(2.0, 1.0);
  gen::Source src(1001);
  std::vector<SyncParam> conventions{SyncParam::einstein(), SyncParam::along_x(-3.0, "flip")};
  for (int i = 0; i < 100; ++i) conventions.push_back(src.convention(5.0));
  double worst = 0.0;
  bool timelike = true;
  for (const auto& p : conventions) {
    const auto c = classify_separation(resynchronize(e1, p), resynchronize(e2, p), p);
    worst = std::max(worst, std::abs(c.interval_squared - 3.0));
    timelike = timelike && c.kind == CausalKind::timelike;
  }
  const SyncParam flip = conventions[1];
  const auto before = coordinate_order(e1, e2, SyncParam::einstein());
  const auto after = coordinate_order(resynchronize(e1, flip), resynchronize(e2, flip), flip);
  o.require(worst <= kIntervalTol, "interval");
  o.require(timelike, "timelike everywhere");
  o.require(before == TimeOrder::first_earlier && after == TimeOrder::second_earlier, "order flip");
  o.detail << "max |s^2-3| = " << g(worst) << ", order " << to_string(before) << " -> " << to_string(after)
           << " (t2' = " << resynchronize(e2, flip).t << ")";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"1  one-way light speeds and round trip", one_way_light_speeds},
      {"2  child runner 4 and 4/3", child_runner},
      {"3  photon at t' = 0.6 L", photon},
      {"4  metric suite", metric_suite},
      {"5  wave-vector suite", wave_suite},
      {"6  order independence", order_independence},
      {"7  no-signaling and CHSH", no_signaling},
      {"8  interaction counterexample", interaction_counterexample},
      {"9  propagator identity", propagator_identity},
      {"10 timelike order reversal", timelike_reversal},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " threw: " << e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %-40s %s (%.1f ms)\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(), ms);
    failures += o.pass ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              total);
  return failures == 0 ? 0 : 1;
}
