#include "synchrony/cli/scenario_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace synchrony::cli {

using nlohmann::json;
using quantum::Complex;
using quantum::Matrix;
using quantum::MeasurementSetting;
using quantum::Vector;

namespace {

std::string index_path(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) throw ScenarioError(field, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(field + "." + key, "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ScenarioError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ScenarioError(field, "expected a finite number");
  return v;
}

int positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1) throw ScenarioError(field, "expected a positive integer");
  return j.get<int>();
}

std::uint64_t seed_value(const json& j, const std::string& field) {
  if (!j.is_number_unsigned()) throw ScenarioError(field, "seeds must be unsigned 64-bit integers");
  return j.get<std::uint64_t>();
}

std::string string_value(const json& j, const std::string& field) {
  if (!j.is_string()) throw ScenarioError(field, "expected a string");
  return j.get<std::string>();
}

const json& array_value(const json& j, const std::string& field) {
  if (!j.is_array()) throw ScenarioError(field, "expected an array");
  return j;
}

Vec3 vec3_value(const json& j, const std::string& field) {
  if (j.is_number()) return Vec3(number(j, field), 0.0, 0.0);
  const json& arr = array_value(j, field);
  if (arr.size() != 3) throw ScenarioError(field, "expected a number or a 3-element array");
  return Vec3(number(arr[0], index_path(field, 0)), number(arr[1], index_path(field, 1)),
              number(arr[2], index_path(field, 2)));
}

Complex complex_value(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw ScenarioError(field, "expected [re, im] pair");
  return {number(j[0], index_path(field, 0)), number(j[1], index_path(field, 1))};
}

quantum::Times times_value(const json& j, const std::string& field) {
  return quantum::Times{number(require(j, "t_in", field), field + ".t_in"),
                        number(require(j, "t_A", field), field + ".t_A"),
                        number(require(j, "t_B", field), field + ".t_B"),
                        number(require(j, "t_out", field), field + ".t_out")};
}

std::vector<SyncParam> parse_sync(const json& j) {
  std::vector<SyncParam> out;
  const json& arr = array_value(j, "sync");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string field = index_path("sync", i);
    const std::string label = string_value(require(arr[i], "label", field), field + ".label");
    for (const auto& existing : out)
      if (existing.label == label) throw ScenarioError(field + ".label", "duplicate sync label '" + label + "'");
    out.push_back(SyncParam::from_vector(vec3_value(require(arr[i], "alpha", field), field + ".alpha"), label));
  }
  return out;
}

MeasurementSetting setting_value(const json& j, const std::string& field) {
  try {
    if (const json* basis = optional_field(j, "basis")) {
      const std::string axis = string_value(*basis, field + ".basis");
      if (axis.size() != 1) throw ScenarioError(field + ".basis", "expected one of x, y, z");
      return MeasurementSetting::pauli_basis(axis[0]);
    }
    if (const json* angle = optional_field(j, "angle"))
      return MeasurementSetting::spin_angle(number(*angle, field + ".angle"));
    if (const json* projectors = optional_field(j, "projectors")) {
      const json& arr = array_value(*projectors, field + ".projectors");
      std::vector<Matrix> ps;
      for (std::size_t i = 0; i < arr.size(); ++i)
        ps.push_back(parse_matrix(arr[i], index_path(field + ".projectors", i)));
      return MeasurementSetting::from_projectors(std::move(ps));
    }
  } catch (const synchrony::Error& e) {
    throw ScenarioError(field, e.what());
  }
  throw ScenarioError(field, "measurement setting needs 'basis', 'angle' or 'projectors'");
}

QuantumSection parse_quantum(const json& j) {
  const std::string field = "quantum";
  QuantumSection q;
  quantum::QuantumScenario& s = q.scenario;

  const json& dims = array_value(require(j, "dims", field), field + ".dims");
  if (dims.size() != 2) throw ScenarioError(field + ".dims", "expected [dimA, dimB]");
  s.dim_a = positive_int(dims[0], field + ".dims[0]");
  s.dim_b = positive_int(dims[1], field + ".dims[1]");

  auto matrix_or = [&](const char* key, Matrix fallback, int n) {
    const json* m = optional_field(j, key);
    if (!m) return fallback;
    Matrix parsed = parse_matrix(*m, field + "." + key);
    if (parsed.rows() != n || parsed.cols() != n)
      throw ScenarioError(field + "." + key, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    return parsed;
  };
  s.h_a = matrix_or("H_A", Matrix::Zero(s.dim_a, s.dim_a), s.dim_a);
  s.h_b = matrix_or("H_B", Matrix::Zero(s.dim_b, s.dim_b), s.dim_b);
  s.o_a = matrix_or("O_A", Matrix::Identity(s.dim_a, s.dim_a), s.dim_a);
  s.o_b = matrix_or("O_B", Matrix::Identity(s.dim_b, s.dim_b), s.dim_b);
  if (optional_field(j, "H_int")) s.h_int = matrix_or("H_int", Matrix(), s.dim());

  auto vector_or = [&](const json* v, Vector fallback, const std::string& f) {
    if (!v) return fallback;
    Vector parsed = parse_vector(*v, f);
    if (parsed.size() != s.dim()) throw ScenarioError(f, "expected " + std::to_string(s.dim()) + " components");
    return parsed;
  };
  s.psi_in = vector_or(optional_field(j, "psi_in"), quantum::basis_state(s.dim(), 0), field + ".psi_in");
  s.psi_out = vector_or(optional_field(j, "psi_out"), s.psi_in, field + ".psi_out");
  if (const json* t = optional_field(j, "times")) s.times = times_value(*t, field + ".times");

  try {
    s.validate();
  } catch (const synchrony::Error& e) {
    throw ScenarioError(field, e.what());
  }

  if (const json* ns = optional_field(j, "nosignal")) {
    const std::string f = field + ".nosignal";
    NoSignalSection sec;
    if (const json* v = optional_field(*ns, "psi_in")) sec.psi_in = vector_or(v, Vector(), f + ".psi_in");
    if (const json* t = optional_field(*ns, "times")) sec.times = times_value(*t, f + ".times");
    sec.local.push_back(setting_value(require(*ns, "local", f), f + ".local"));
    if (sec.local.front().dim() != s.dim_b) throw ScenarioError(f + ".local", "setting does not act on subsystem B");
    const json& remote = array_value(require(*ns, "remote", f), f + ".remote");
    for (std::size_t i = 0; i < remote.size(); ++i) {
      sec.remote.push_back(setting_value(remote[i], index_path(f + ".remote", i)));
      if (sec.remote.back().dim() != s.dim_a)
        throw ScenarioError(index_path(f + ".remote", i), "setting does not act on subsystem A");
    }
    q.nosignal = std::move(sec);
  }

  if (const json* ch = optional_field(j, "chsh")) {
    const std::string f = field + ".chsh";
    if (s.dim_a != 2 || s.dim_b != 2) throw ScenarioError(f, "CHSH needs a qubit pair (dims [2, 2])");
    ChshSection sec;
    if (const json* v = optional_field(*ch, "state")) sec.state = vector_or(v, Vector(), f + ".state");
    for (auto [key, target] : {std::pair{"angles_a", &sec.angles_a}, std::pair{"angles_b", &sec.angles_b}}) {
      const json& arr = array_value(require(*ch, key, f), f + "." + key);
      if (arr.size() != 2) throw ScenarioError(f + "." + key, "expected two angles");
      (*target)[0] = number(arr[0], index_path(f + "." + key, 0));
      (*target)[1] = number(arr[1], index_path(f + "." + key, 1));
    }
    sec.expected = number(require(*ch, "expected", f), f + ".expected");
    if (const json* tol = optional_field(*ch, "tolerance")) sec.tolerance = number(*tol, f + ".tolerance");
    q.chsh = sec;
  }

  if (const json* rnd = optional_field(j, "random")) {
    const std::string f = field + ".random";
    RandomSection sec;
    sec.count = positive_int(require(*rnd, "count", f), f + ".count");
    const json& arr = array_value(require(*rnd, "dims", f), f + ".dims");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string fi = index_path(f + ".dims", i);
      if (!arr[i].is_array() || arr[i].size() != 2) throw ScenarioError(fi, "expected [dimA, dimB]");
      const int da = positive_int(arr[i][0], fi + "[0]");
      const int db = positive_int(arr[i][1], fi + "[1]");
      if (da < 2 || db < 2) throw ScenarioError(fi, "random scenarios need dimensions >= 2");
      sec.dims.emplace_back(da, db);
    }
    if (sec.dims.empty()) throw ScenarioError(f + ".dims", "expected at least one shape");
    q.random = sec;
  }

  if (const json* tol = optional_field(j, "tolerances")) {
    const std::string f = field + ".tolerances";
    if (const json* v = optional_field(*tol, "amplitude")) q.tolerances.amplitude = number(*v, f + ".amplitude");
    if (const json* v = optional_field(*tol, "nosignal")) q.tolerances.nosignal = number(*v, f + ".nosignal");
    if (const json* v = optional_field(*tol, "amplitude_gap_min"))
      q.tolerances.amplitude_gap_min = number(*v, f + ".amplitude_gap_min");
    if (const json* v = optional_field(*tol, "signaling_gap_min"))
      q.tolerances.signaling_gap_min = number(*v, f + ".signaling_gap_min");
  }
  if (const json* seed = optional_field(j, "seed")) q.seed = seed_value(*seed, field + ".seed");

  if (q.nosignal) {
    try {
      q.nosignal_scenario().validate();
    } catch (const synchrony::Error& e) {
      throw ScenarioError(field + ".nosignal", e.what());
    }
  }
  return q;
}

PropagatorSection parse_propagator(const json& j) {
  const std::string field = "propagator";
  PropagatorSection p;
  auto list = [&](const char* key, std::vector<double>& out) {
    if (const json* v = optional_field(j, key)) {
      const json& arr = array_value(*v, field + "." + key);
      if (arr.empty()) throw ScenarioError(field + "." + key, "expected at least one value");
      out.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(number(arr[i], index_path(field + "." + key, i)));
    }
  };
  list("masses", p.masses);
  list("epsilons", p.epsilons);
  for (std::size_t i = 0; i < p.masses.size(); ++i)
    if (p.masses[i] < 0.0) throw ScenarioError(index_path(field + ".masses", i), "mass must be non-negative");
  for (std::size_t i = 0; i < p.epsilons.size(); ++i)
    if (!(p.epsilons[i] > 0.0)) throw ScenarioError(index_path(field + ".epsilons", i), "eps must be positive");
  if (const json* v = optional_field(j, "samples")) p.samples = positive_int(*v, field + ".samples");
  if (const json* v = optional_field(j, "range")) p.range = number(*v, field + ".range");
  if (const json* v = optional_field(j, "seed")) p.seed = seed_value(*v, field + ".seed");
  return p;
}

}  // namespace

Matrix parse_matrix(const json& j, const std::string& field) {
  const json& rows = array_value(j, field);
  if (rows.empty()) throw ScenarioError(field, "matrix has no rows");
  const std::size_t cols = array_value(rows[0], index_path(field, 0)).size();
  if (cols == 0) throw ScenarioError(index_path(field, 0), "matrix has no columns");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = array_value(rows[i], index_path(field, i));
    if (row.size() != cols) throw ScenarioError(index_path(field, i), "matrix is not rectangular");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_value(row[k], index_path(index_path(field, i), k));
  }
  return m;
}

Vector parse_vector(const json& j, const std::string& field) {
  const json& arr = array_value(j, field);
  if (arr.empty()) throw ScenarioError(field, "vector has no components");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_value(arr[i], index_path(field, i));
  return v;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

quantum::QuantumScenario QuantumSection::nosignal_scenario() const {
  quantum::QuantumScenario s = scenario;
  if (nosignal) {
    if (nosignal->psi_in) s.psi_in = *nosignal->psi_in;
    if (nosignal->times) s.times = *nosignal->times;
  }
  return s;
}

const SyncParam& ScenarioFile::sync_by_label(const std::string& label, const std::string& field) const {
  for (const auto& p : sync)
    if (p.label == label) return p;
  throw ScenarioError(field, "sync label '" + label + "' is not defined in 'sync'");
}

const NamedEvent& ScenarioFile::event_by_label(const std::string& label, const std::string& field) const {
  if (kinematics)
    for (const auto& e : kinematics->events)
      if (e.label == label) return e;
  throw ScenarioError(field, "event '" + label + "' is not defined in 'kinematics.events'");
}

ScenarioFile ScenarioFile::parse(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("$", "scenario must be a JSON object");
  ScenarioFile f;
  f.source = doc;
  if (const json* s = optional_field(doc, "sync")) f.sync = parse_sync(*s);

  if (const json* k = optional_field(doc, "kinematics")) {
    KinematicsSection sec;
    const std::string field = "kinematics";
    if (const json* events = optional_field(*k, "events")) {
      const json& arr = array_value(*events, field + ".events");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string fi = index_path(field + ".events", i);
        const std::string label = string_value(require(arr[i], "label", fi), fi + ".label");
        const std::string sync = string_value(require(arr[i], "sync", fi), fi + ".sync");
        const SyncParam& p = f.sync_by_label(sync, fi + ".sync");
        const double t = number(require(arr[i], "t", fi), fi + ".t");
        const Vec3 x = vec3_value(require(arr[i], "x", fi), fi + ".x");
        sec.events.push_back({label, Event4::make(t, x, p)});
      }
    }
    f.kinematics = sec;
    if (const json* transforms = optional_field(*k, "transforms")) {
      const json& arr = array_value(*transforms, field + ".transforms");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string fi = index_path(field + ".transforms", i);
        TransformRequest r{string_value(require(arr[i], "event", fi), fi + ".event"),
                           string_value(require(arr[i], "to", fi), fi + ".to")};
        f.event_by_label(r.event, fi + ".event");
        f.sync_by_label(r.to, fi + ".to");
        f.kinematics->transforms.push_back(r);
      }
    }
    if (const json* velocities = optional_field(*k, "velocities")) {
      const json& arr = array_value(*velocities, field + ".velocities");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string fi = index_path(field + ".velocities", i);
        VelocityRequest r{number(require(arr[i], "v", fi), fi + ".v"), string_value(require(arr[i], "to", fi), fi + ".to")};
        f.sync_by_label(r.to, fi + ".to");
        f.kinematics->velocities.push_back(r);
      }
    }
    if (const json* lengths = optional_field(*k, "lengths")) {
      const json& arr = array_value(*lengths, field + ".lengths");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string fi = index_path(field + ".lengths", i);
        LengthRequest r{number(require(arr[i], "L", fi), fi + ".L"), string_value(require(arr[i], "sync", fi), fi + ".sync")};
        if (!(r.length > 0.0)) throw ScenarioError(fi + ".L", "length must be positive");
        f.sync_by_label(r.sync, fi + ".sync");
        f.kinematics->lengths.push_back(r);
      }
    }
  }

  if (const json* q = optional_field(doc, "quantum")) f.quantum = parse_quantum(*q);
  if (const json* p = optional_field(doc, "propagator")) f.propagator = parse_propagator(*p);

  if (const json* out = optional_field(doc, "output")) {
    if (const json* fmt = optional_field(*out, "format")) {
      const std::string s = string_value(*fmt, "output.format");
      if (s != "csv" && s != "json") throw ScenarioError("output.format", "expected 'csv' or 'json'");
      f.output.format = s;
    }
    if (const json* path = optional_field(*out, "path")) f.output.path = string_value(*path, "output.path");
  }
  return f;
}

ScenarioFile ScenarioFile::parse_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse(doc);
}

ScenarioFile ScenarioFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string(), "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

}  // namespace synchrony::cli
