#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "synchrony/quantum.hpp"
#include "synchrony/spacetime.hpp"

namespace synchrony::cli {

/// Malformed scenario input; `field()` is a JSON path such as
/// "quantum.H_A[1][0]".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct NamedEvent {
  std::string label;
  Event4 event;
};

struct TransformRequest {
  std::string event;
  std::string to;
};

struct VelocityRequest {
  double v = 0.0;
  std::string to;
};

struct LengthRequest {
  double length = 1.0;
  std::string sync;
};

struct KinematicsSection {
  std::vector<NamedEvent> events;
  std::vector<TransformRequest> transforms;
  std::vector<VelocityRequest> velocities;
  std::vector<LengthRequest> lengths;
};

struct NoSignalSection {
  std::optional<quantum::Vector> psi_in;
  std::optional<quantum::Times> times;
  std::vector<quantum::MeasurementSetting> local;  // exactly one entry
  std::vector<quantum::MeasurementSetting> remote;
};

struct ChshSection {
  std::optional<quantum::Vector> state;
  std::array<double, 2> angles_a{};
  std::array<double, 2> angles_b{};
  double expected = 0.0;
  double tolerance = 1e-6;
};

struct RandomSection {
  int count = 0;
  std::vector<std::pair<int, int>> dims;
};

struct QuantumTolerances {
  double amplitude = 1e-10;
  double nosignal = 1e-10;
  double amplitude_gap_min = 0.01;
  double signaling_gap_min = 1e-3;
};

struct QuantumSection {
  quantum::QuantumScenario scenario;
  std::optional<NoSignalSection> nosignal;
  std::optional<ChshSection> chsh;
  std::optional<RandomSection> random;
  QuantumTolerances tolerances;
  std::optional<std::uint64_t> seed;

  /// The scenario with the nosignal section's state and time overrides.
  quantum::QuantumScenario nosignal_scenario() const;
};

struct PropagatorSection {
  std::vector<double> masses{0.0, 1.0};
  std::vector<double> epsilons{1e-3};
  int samples = 1000;
  double range = 3.0;
  std::optional<std::uint64_t> seed;
};

struct OutputSection {
  std::optional<std::string> format;  // "csv" | "json"
  std::string path = "-";
};

struct ScenarioFile {
  std::vector<SyncParam> sync;
  std::optional<KinematicsSection> kinematics;
  std::optional<QuantumSection> quantum;
  std::optional<PropagatorSection> propagator;
  OutputSection output;
  nlohmann::json source;

  const SyncParam& sync_by_label(const std::string& label, const std::string& field) const;
  const NamedEvent& event_by_label(const std::string& label, const std::string& field) const;

  static ScenarioFile parse(const nlohmann::json& doc);
  static ScenarioFile parse_text(const std::string& text);
  static ScenarioFile load(const std::filesystem::path& path);
};

/// [[ [re, im], ... ], ...] and [[re, im], ...] codecs.
quantum::Matrix parse_matrix(const nlohmann::json& j, const std::string& field);
quantum::Vector parse_vector(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const quantum::Matrix& m);
nlohmann::json vector_to_json(const quantum::Vector& v);

}  // namespace synchrony::cli
