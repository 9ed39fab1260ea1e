#include "synchrony/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "synchrony/cli/text.hpp"
#include "synchrony/version.hpp"

namespace synchrony::cli {

namespace {

const std::vector<std::string> kColumns = {"operation", "quantity",  "inputs_digest", "seed",
                                           "version",   "value",     "reference",     "tolerance",
                                           "criterion", "passed",    "elapsed_s"};

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw std::invalid_argument("bad seed '" + std::string(s) + "'");
  return v;
}

}  // namespace

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::below:
      return "below";
    case Criterion::above:
      return "above";
    case Criterion::near:
      return "near";
  }
  return "?";
}

Criterion criterion_from_string(std::string_view s) {
  if (s == "below") return Criterion::below;
  if (s == "above") return Criterion::above;
  if (s == "near") return Criterion::near;
  throw std::invalid_argument("unknown criterion '" + std::string(s) + "'");
}

bool Record::evaluate(double value, double reference, double tolerance, Criterion criterion) {
  switch (criterion) {
    case Criterion::below:
      return value < tolerance;
    case Criterion::above:
      return value > tolerance;
    case Criterion::near:
      return std::abs(value - reference) <= tolerance;
  }
  return false;
}

Record& Report::add(const Context& ctx, std::string quantity, double value, double tolerance, Criterion criterion,
                    double elapsed_s, double reference) {
  Record r;
  r.operation = ctx.operation;
  r.quantity = std::move(quantity);
  r.inputs_digest = ctx.inputs_digest;
  r.seed = ctx.seed;
  r.version = kVersion;
  r.value = value;
  r.reference = reference;
  r.tolerance = tolerance;
  r.criterion = criterion;
  r.passed = Record::evaluate(value, reference, tolerance, criterion);
  r.elapsed_s = elapsed_s;
  records_.push_back(std::move(r));
  return records_.back();
}

bool Report::all_passed() const {
  for (const auto& r : records_)
    if (!r.passed) return false;
  return true;
}

const Record* Report::worst_failure() const {
  // Violation measured as a ratio against the threshold.
  auto excess = [](const Record& r) {
    switch (r.criterion) {
      case Criterion::below:
        return r.tolerance > 0.0 ? r.value / r.tolerance : HUGE_VAL;
      case Criterion::above:
        return r.value > 0.0 ? r.tolerance / r.value : HUGE_VAL;
      case Criterion::near:
        return r.tolerance > 0.0 ? std::abs(r.value - r.reference) / r.tolerance : HUGE_VAL;
    }
    return HUGE_VAL;
  };
  const Record* worst = nullptr;
  for (const auto& r : records_)
    if (!r.passed && (!worst || !(excess(r) <= excess(*worst)))) worst = &r;
  return worst;
}

std::string Report::to_csv() const {
  CsvTable table;
  table.header = kColumns;
  for (const auto& r : records_) {
    table.rows.push_back({r.operation, r.quantity, r.inputs_digest, std::to_string(r.seed), r.version,
                          format_double(r.value), format_double(r.reference), format_double(r.tolerance),
                          to_string(r.criterion), r.passed ? "true" : "false", format_double(r.elapsed_s)});
  }
  return table.emit();
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : records_) {
    records.push_back({{"operation", r.operation},
                       {"quantity", r.quantity},
                       {"inputs_digest", r.inputs_digest},
                       {"seed", r.seed},
                       {"version", r.version},
                       {"value", r.value},
                       {"reference", r.reference},
                       {"tolerance", r.tolerance},
                       {"criterion", to_string(r.criterion)},
                       {"passed", r.passed},
                       {"elapsed_s", r.elapsed_s}});
  }
  return {{"tool", "synchrony"}, {"version", kVersion}, {"passed", all_passed()}, {"records", records}};
}

std::string Report::to_json_text() const { return to_json().dump(2) + "\n"; }

Report Report::from_csv(std::string_view text) {
  const CsvTable table = CsvTable::parse(text);
  if (table.header != kColumns) throw std::invalid_argument("report csv: unexpected header");
  Report report;
  for (const auto& row : table.rows) {
    Record r;
    r.operation = row[0];
    r.quantity = row[1];
    r.inputs_digest = row[2];
    r.seed = parse_u64(row[3]);
    r.version = row[4];
    r.value = parse_double(row[5]);
    r.reference = parse_double(row[6]);
    r.tolerance = parse_double(row[7]);
    r.criterion = criterion_from_string(row[8]);
    if (row[9] != "true" && row[9] != "false") throw std::invalid_argument("report csv: bad passed flag");
    r.passed = row[9] == "true";
    r.elapsed_s = parse_double(row[10]);
    report.records_.push_back(std::move(r));
  }
  return report;
}

}  // namespace synchrony::cli
