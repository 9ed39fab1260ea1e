#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace synchrony::cli {

enum class Criterion { below, above, near };

const char* to_string(Criterion c);
Criterion criterion_from_string(std::string_view s);

/// One checked quantity. `passed` is derived from value, reference,
/// tolerance and criterion: below means value < tolerance, above means
/// value > tolerance, near means |value - reference| <= tolerance.
struct Record {
  std::string operation;
  std::string quantity;
  std::string inputs_digest;
  std::uint64_t seed = 0;
  std::string version;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  Criterion criterion = Criterion::below;
  bool passed = false;
  double elapsed_s = 0.0;

  static bool evaluate(double value, double reference, double tolerance, Criterion criterion);
};

class Report {
 public:
  struct Context {
    std::string operation;
    std::string inputs_digest;
    std::uint64_t seed = 0;
  };

  /// Appends a record and evaluates its pass/fail state.
  Record& add(const Context& ctx, std::string quantity, double value, double tolerance, Criterion criterion,
              double elapsed_s, double reference = 0.0);

  const std::vector<Record>& records() const { return records_; }
  std::vector<Record>& records() { return records_; }
  bool all_passed() const;
  /// Failing record furthest past its threshold, or nullptr.
  const Record* worst_failure() const;

  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  std::string to_json_text() const;

  static Report from_csv(std::string_view text);

 private:
  std::vector<Record> records_;
};

}  // namespace synchrony::cli
