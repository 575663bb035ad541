#pragma once

#include <aps/dirac.hpp>
#include <aps/error.hpp>
#include <aps/fermion.hpp>
#include <aps/matrix_rep.hpp>
#include <aps/multivector.hpp>
#include <aps/spin_states.hpp>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace aps::io {

using json = nlohmann::json;

/// Version tag written into every JSON summary.
inline constexpr const char *kSchemaVersion = "1.0";

inline json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from(const json &j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidConfig("complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Multivector &m) {
  json j = json::array();
  for (double c : m.coefficients())
    j.push_back(c);
  return j;
}

inline Multivector multivector_from_json(const json &j) {
  if (!j.is_array() || j.size() != Multivector::size)
    throw InvalidConfig("multivector must be an array of 8 coefficients");
  std::array<double, 8> c{};
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = j[k].get<double>();
  return Multivector(c);
}

inline json to_json(const MatrixRep &r) {
  json j = json::array();
  for (const auto &z : r.m)
    j.push_back(complex_pair(z));
  return j;
}

inline json to_json(const Paravector &p) {
  return json::array({p[0], p[1], p[2], p[3]});
}

inline json to_json(const Bispinor &b) {
  json comps = json::array();
  for (const auto &z : b.c)
    comps.push_back(complex_pair(z));
  return {{"representation", to_string(b.rep)}, {"components", comps}};
}

inline Bispinor bispinor_from_json(const json &j) {
  Bispinor b;
  const std::string rep = j.at("representation").get<std::string>();
  if (rep == "weyl")
    b.rep = BispinorRep::Weyl;
  else if (rep == "dirac-pauli")
    b.rep = BispinorRep::DiracPauli;
  else
    throw InvalidConfig("unknown bispinor representation '" + rep + "'");
  const json &c = j.at("components");
  if (!c.is_array() || c.size() != 4)
    throw InvalidConfig("bispinor needs 4 components");
  for (std::size_t k = 0; k < 4; ++k)
    b.c[k] = complex_from(c[k]);
  return b;
}

/// Spin state as Euler angles plus density; the amplitude is ρ^{1/2} R.
struct SpinStateParams {
  double phi = 0.0;
  double theta = 0.0;
  double chi = 0.0;
  double rho = 1.0;

  Multivector amplitude() const {
    if (!(rho >= 0.0))
      throw InvalidState("density rho must be non-negative");
    return euler_rotor(phi, theta, chi).mv() * std::sqrt(rho);
  }
};

inline json to_json(const SpinStateParams &s) {
  return {{"phi", s.phi}, {"theta", s.theta}, {"chi", s.chi}, {"rho", s.rho}};
}

/// Accepts either {phi, theta, chi, rho} or a raw 8-coefficient array.
inline Multivector state_from_json(const json &j) {
  if (j.is_array())
    return multivector_from_json(j);
  SpinStateParams s;
  s.phi = j.value("phi", 0.0);
  s.theta = j.value("theta", 0.0);
  s.chi = j.value("chi", 0.0);
  s.rho = j.value("rho", 1.0);
  return s.amplitude();
}

inline json to_json(const FermionReport &r) {
  json j = {{"modes", r.n}, {"car", r.car_ok}, {"clifford", r.clifford_ok}};
  j["algebra_dimension"] = r.dimension ? json(*r.dimension) : json(nullptr);
  return j;
}

inline json summary(const std::string &scenario) {
  return {{"spec_version", kSchemaVersion}, {"scenario", scenario}};
}

/// Shortest round-trip representation, so identical doubles always print
/// identically.
inline std::string format_double(double x) { return fmt::format("{}", x); }

/// CSV with a header row; values printed with format_double.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<double> &row) {
    if (row.size() != header_.size())
      throw InvalidConfig("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                          std::to_string(header_.size()));
    rows_.push_back(row);
  }

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < header_.size(); ++k)
      out += (k ? "," : "") + header_[k];
    out += '\n';
    for (const auto &row : rows_) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k)
          out += ',';
        out += format_double(row[k]);
      }
      out += '\n';
    }
    return out;
  }

  std::size_t rows() const { return rows_.size(); }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

inline void write_text(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw IOFailure("cannot open '" + path + "' for writing");
  f << content;
  if (!f)
    throw IOFailure("write to '" + path + "' failed");
}

inline std::string read_text(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw IOFailure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Flat key = value configuration. `[section]` headers prefix later keys as
/// "section.key"; '#' and ';' start comments.
class KeyValueConfig {
public:
  static KeyValueConfig parse(const std::string &text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto cut = line.find_first_of("#;");
      if (cut != std::string::npos)
        line.erase(cut);
      line = trim(line);
      if (line.empty())
        continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw InvalidConfig("line " + std::to_string(lineno) + ": unterminated section");
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(line.substr(0, eq));
      if (key.empty())
        throw InvalidConfig("line " + std::to_string(lineno) + ": empty key");
      if (!section.empty())
        key = section + "." + key;
      cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
  }

  static KeyValueConfig load(const std::string &path) { return parse(read_text(path)); }

  bool has(const std::string &key) const { return values_.count(key) != 0; }

  std::optional<std::string> get(const std::string &key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
      return std::nullopt;
    return it->second;
  }

  double get_double(const std::string &key, double fallback) const {
    const auto v = get(key);
    return v ? to_double(key, *v) : fallback;
  }

  const std::map<std::string, std::string> &values() const { return values_; }

  static double to_double(const std::string &key, const std::string &text) {
    double x = 0.0;
    const char *first = text.data();
    const char *last = first + text.size();
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last)
      throw InvalidConfig("key '" + key + "': '" + text + "' is not a number");
    return x;
  }

private:
  static std::string trim(const std::string &s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
      ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
      --b;
    return s.substr(a, b - a);
  }

  std::map<std::string, std::string> values_;
};

/// SI constants. Defaults are the CODATA 2018 exact/recommended values.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;          // J s
  double c = 299792458.0;                 // m/s
  double electron_mass = 9.1093837015e-31; // kg
  double elementary_charge = 1.602176634e-19; // C

  static PhysicalConstants codata() { return {}; }

  /// Keys hbar, c, electron_mass, elementary_charge (bare or under
  /// [constants]) override the defaults.
  static PhysicalConstants from_config(const KeyValueConfig &cfg) {
    PhysicalConstants k;
    auto pick = [&](const char *name, double &slot) {
      const std::string bare = name, scoped = std::string("constants.") + name;
      if (cfg.has(scoped))
        slot = cfg.get_double(scoped, slot);
      else if (cfg.has(bare))
        slot = cfg.get_double(bare, slot);
    };
    pick("hbar", k.hbar);
    pick("c", k.c);
    pick("electron_mass", k.electron_mass);
    pick("elementary_charge", k.elementary_charge);
    k.validate();
    return k;
  }

  void validate() const {
    if (!(hbar > 0 && c > 0 && electron_mass > 0 && elementary_charge > 0))
      throw InvalidConfig("physical constants must all be positive");
  }
};

/// Electron quantities in SI: ω0 = mc²/ħ, and the field scales ω0 m/e and
/// 2ω0 m/e.
struct ElectronScales {
  double omega0 = 0.0;          // s⁻¹
  double critical_field = 0.0;  // ω0 m/e, tesla
  double threshold_field = 0.0; // 2ω0 m/e, tesla
  double moment = 0.0;          // eħ/2m, J/T
};

inline ElectronScales electron_scales(const PhysicalConstants &k) {
  ElectronScales s;
  s.omega0 = k.electron_mass * k.c * k.c / k.hbar;
  s.critical_field = s.omega0 * k.electron_mass / k.elementary_charge;
  s.threshold_field = 2.0 * s.critical_field;
  s.moment = k.elementary_charge * k.hbar / (2.0 * k.electron_mass);
  return s;
}

} // namespace aps::io
