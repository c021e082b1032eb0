#include "lsharm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lsharm/errors.hpp"

namespace lsharm {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InvalidConfig("config: bad integer for '" + key + "': " + v);
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InvalidConfig("config: bad number for '" + key + "': " + v);
  }
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_int(key, item));
  }
  return out;
}

const char* scenario_name(ScenarioKind s) {
  switch (s) {
    case ScenarioKind::Free: return "free";
    case ScenarioKind::Sphere: return "sphere";
    case ScenarioKind::ShiftedSphere: return "shifted-sphere";
    case ScenarioKind::Square: return "square";
    case ScenarioKind::Hoelder: return "hoelder";
  }
  return "?";
}

ScenarioKind parse_scenario(const std::string& v) {
  if (v == "free") return ScenarioKind::Free;
  if (v == "sphere") return ScenarioKind::Sphere;
  if (v == "shifted-sphere") return ScenarioKind::ShiftedSphere;
  if (v == "square") return ScenarioKind::Square;
  if (v == "hoelder") return ScenarioKind::Hoelder;
  throw InvalidConfig("config: unknown scenario '" + v + "'");
}

const char* reference_name(ReferenceKind r) {
  switch (r) {
    case ReferenceKind::None: return "none";
    case ReferenceKind::Exact: return "exact";
    case ReferenceKind::Self: return "self";
  }
  return "?";
}

ReferenceKind parse_reference(const std::string& v) {
  if (v == "none") return ReferenceKind::None;
  if (v == "exact") return ReferenceKind::Exact;
  if (v == "self") return ReferenceKind::Self;
  throw InvalidConfig("config: unknown reference '" + v + "'");
}

const char* sweep_name(SweepKind s) {
  switch (s) {
    case SweepKind::None: return "none";
    case SweepKind::Intervals: return "intervals";
    case SweepKind::Band: return "band";
  }
  return "?";
}

SweepKind parse_sweep(const std::string& v) {
  if (v == "none") return SweepKind::None;
  if (v == "intervals") return SweepKind::Intervals;
  if (v == "band") return SweepKind::Band;
  throw InvalidConfig("config: unknown sweep '" + v + "'");
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("config line " + std::to_string(lineno) +
                          ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "version") {
      c.version = to_int(key, val);
      if (c.version != 1) throw InvalidConfig("config: unsupported version");
    } else if (key == "scenario") {
      c.scenario = parse_scenario(val);
    } else if (key == "wavenumber") {
      c.wavenumber = to_double(key, val);
    } else if (key == "band") {
      c.band = to_int(key, val);
    } else if (key == "radius") {
      c.radius_R = to_double(key, val);
    } else if (key == "intervals") {
      c.intervals = to_int(key, val);
    } else if (key == "interp_order") {
      c.interp_order = to_int(key, val);
    } else if (key == "m_inc") {
      c.m_inc = to_int(key, val);
    } else if (key == "refractive_index") {
      c.refractive_index = to_double(key, val);
    } else if (key == "scatterer_radius") {
      c.scatterer_radius = to_double(key, val);
    } else if (key == "offset") {
      c.offset = to_double(key, val);
    } else if (key == "beta") {
      c.beta = to_double(key, val);
    } else if (key == "m_ref") {
      c.m_ref = to_int(key, val);
    } else if (key == "gmres_tol") {
      c.gmres_tol = to_double(key, val);
    } else if (key == "gmres_max_iter") {
      c.gmres_max_iter = to_int(key, val);
    } else if (key == "gmres_restart") {
      c.gmres_restart = to_int(key, val);
    } else if (key == "reference") {
      c.reference = parse_reference(val);
    } else if (key == "sweep") {
      c.sweep = parse_sweep(val);
    } else if (key == "sweep_values") {
      c.sweep_values = to_int_list(key, val);
    } else if (key == "output_dir") {
      c.output_dir = val;
    } else if (key == "moment_cache") {
      c.moment_cache = val;
    } else if (key == "threads") {
      c.threads = to_int(key, val);
    } else {
      throw InvalidConfig("config: unknown key '" + key + "'");
    }
  }
  if (!(c.wavenumber > 0.0)) throw InvalidConfig("config: wavenumber must be > 0");
  if (c.band < 0) throw InvalidConfig("config: band must be >= 0");
  if (!(c.radius_R > 0.0)) throw InvalidConfig("config: radius must be > 0");
  if (c.intervals < 1 || c.interp_order < 2) {
    throw InvalidConfig("config: intervals >= 1 and interp_order >= 2 required");
  }
  return c;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  out.precision(17);
  out << "version = " << version << "\n";
  out << "scenario = " << scenario_name(scenario) << "\n";
  out << "wavenumber = " << wavenumber << "\n";
  out << "band = " << band << "\n";
  out << "radius = " << radius_R << "\n";
  out << "intervals = " << intervals << "\n";
  out << "interp_order = " << interp_order << "\n";
  out << "m_inc = " << m_inc << "\n";
  out << "refractive_index = " << refractive_index << "\n";
  out << "scatterer_radius = " << scatterer_radius << "\n";
  out << "offset = " << offset << "\n";
  out << "beta = " << beta << "\n";
  out << "m_ref = " << m_ref << "\n";
  out << "gmres_tol = " << gmres_tol << "\n";
  out << "gmres_max_iter = " << gmres_max_iter << "\n";
  out << "gmres_restart = " << gmres_restart << "\n";
  out << "reference = " << reference_name(reference) << "\n";
  out << "sweep = " << sweep_name(sweep) << "\n";
  if (!sweep_values.empty()) {
    out << "sweep_values = ";
    for (std::size_t i = 0; i < sweep_values.size(); ++i) {
      out << (i ? "," : "") << sweep_values[i];
    }
    out << "\n";
  }
  out << "output_dir = " << output_dir << "\n";
  if (!moment_cache.empty()) out << "moment_cache = " << moment_cache << "\n";
  out << "threads = " << threads << "\n";
  return out.str();
}

ContrastSpec RunConfig::contrast_spec() const {
  ContrastSpec s;
  s.n0 = refractive_index;
  s.radius = scatterer_radius;
  s.offset = offset;
  s.beta = beta;
  s.m_ref = m_ref;
  switch (scenario) {
    case ScenarioKind::Sphere:
      s.kind = ContrastKind::CenteredSphere;
      break;
    case ScenarioKind::ShiftedSphere:
      s.kind = ContrastKind::ShiftedSphere;
      break;
    case ScenarioKind::Square:
      s.kind = ContrastKind::RotatedSquare;
      break;
    case ScenarioKind::Hoelder:
      s.kind = ContrastKind::Hoelder;
      break;
    case ScenarioKind::Free:
      s.kind = ContrastKind::CenteredSphere;
      s.n0 = 1.0;  // zero contrast
      break;
  }
  return s;
}

IncidentSpec RunConfig::incident_spec() const {
  IncidentSpec s;
  s.m_inc = m_inc;
  s.k = wavenumber;
  s.offset = scenario == ScenarioKind::ShiftedSphere ? offset : 0.0;
  return s;
}

ReferenceKind RunConfig::effective_reference() const {
  if (reference != ReferenceKind::Exact) return reference;
  switch (scenario) {
    case ScenarioKind::Free:
    case ScenarioKind::Sphere:
    case ScenarioKind::ShiftedSphere:
      return ReferenceKind::Exact;
    case ScenarioKind::Square:
    case ScenarioKind::Hoelder:
      return ReferenceKind::Self;
  }
  return ReferenceKind::None;
}

}  // namespace lsharm
