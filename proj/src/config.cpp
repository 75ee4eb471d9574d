#include "vlab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace vlab {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Parser {
  std::string section;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line_no) + ": " + msg);
  }

  double number(const std::string& v) const {
    try {
      std::size_t used = 0;
      double x = std::stod(v, &used);
      if (used != v.size()) fail("trailing characters after number '" + v + "'");
      return x;
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      fail("expected a number, got '" + v + "'");
    }
  }

  long integer(const std::string& v) const {
    double x = number(v);
    if (x != std::floor(x)) fail("expected an integer, got '" + v + "'");
    return static_cast<long>(x);
  }

  bool boolean(const std::string& v) const {
    if (v == "true") return true;
    if (v == "false") return false;
    fail("expected true/false, got '" + v + "'");
  }

  std::string string(const std::string& v) const {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
      fail("expected a quoted string, got '" + v + "'");
    }
    return v.substr(1, v.size() - 2);
  }

  // splits "[a, b, c]" on top-level commas
  std::vector<std::string> array_items(const std::string& v) const {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
      fail("expected an array, got '" + v + "'");
    }
    std::vector<std::string> items;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      char c = v[i];
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        items.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) items.push_back(trim(cur));
    return items;
  }

  std::vector<double> number_array(const std::string& v) const {
    std::vector<double> out;
    for (const auto& item : array_items(v)) out.push_back(number(item));
    return out;
  }

  std::vector<std::pair<double, double>> pair_array(const std::string& v) const {
    std::vector<std::pair<double, double>> out;
    for (const auto& item : array_items(v)) {
      auto xy = number_array(item);
      if (xy.size() != 2) fail("expected [x, y] pairs");
      out.emplace_back(xy[0], xy[1]);
    }
    return out;
  }
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  Parser p;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') p.fail("unterminated section header");
      p.section = line.substr(1, line.size() - 2);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) p.fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) p.fail("expected key = value");
    const std::string& s = p.section;

    if (s == "surface" && key == "lx") c.lx = p.number(val);
    else if (s == "surface" && key == "ly") c.ly = p.number(val);
    else if (s == "surface" && key == "nx") c.nx = static_cast<int>(p.integer(val));
    else if (s == "surface" && key == "ny") c.ny = static_cast<int>(p.integer(val));
    else if (s == "surface" && key == "h_profile") c.h_profile = p.string(val);
    else if (s == "surface" && key == "h_params") c.h_params = p.number_array(val);
    else if (s == "bundle" && key == "degree") c.degree = static_cast<int>(p.integer(val));
    else if (s == "bundle" && key == "positions") c.positions = p.pair_array(val);
    else if (s == "bundle" && key == "metric_profile") c.metric_profile = p.string(val);
    else if (s == "bundle" && key == "metric_params") c.metric_params = p.number_array(val);
    else if (s == "psi0" && key == "choice") c.psi0_choice = p.string(val);
    else if (s == "psi0" && key == "zeros") c.psi0_zeros = p.pair_array(val);
    else if (s == "solver" && key == "max_iter") c.max_iter = static_cast<int>(p.integer(val));
    else if (s == "solver" && key == "tol") c.tol = p.number(val);
    else if (s == "solver" && key == "continuation") c.continuation = p.boolean(val);
    else if (s == "verify" && key == "seed") c.seed = static_cast<std::uint64_t>(p.integer(val));
    else if (s == "verify" && key == "count") c.battery_count = static_cast<int>(p.integer(val));
    else if (s == "verify" && key == "epsilons") c.epsilons = p.number_array(val);
    else if (s == "output" && key == "directory") c.output_dir = p.string(val);
    else p.fail("unknown key '" + key + "' in section [" + s + "]");
  }

  if (c.nx < 4 || c.ny < 4) throw ConfigError("config: grid must be at least 4x4");
  if (c.lx <= 0 || c.ly <= 0) throw ConfigError("config: side lengths must be positive");
  if (c.degree < 0) throw ConfigError("config: degree must be >= 0");
  if (static_cast<int>(c.positions.size()) != c.degree) {
    throw ConfigError("config: positions count must equal degree");
  }
  if (c.tol <= 0) throw ConfigError("config: tolerances must be positive");
  for (double e : c.epsilons) {
    if (e <= 0) throw ConfigError("config: tolerances must be positive");
  }
  if (c.psi0_choice != "unit" && c.psi0_choice != "solved" && c.psi0_choice != "theta") {
    throw ConfigError("config: psi0 choice must be unit | solved | theta");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream out;
  auto pairs = [&](const std::vector<std::pair<double, double>>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += "[" + fmt(v[i].first) + ", " + fmt(v[i].second) + "]";
    }
    return s + "]";
  };
  auto nums = [&](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += fmt(v[i]);
    }
    return s + "]";
  };
  out << "[surface]\n";
  out << "lx = " << fmt(c.lx) << "\n";
  out << "ly = " << fmt(c.ly) << "\n";
  out << "nx = " << c.nx << "\n";
  out << "ny = " << c.ny << "\n";
  out << "h_profile = \"" << c.h_profile << "\"\n";
  out << "h_params = " << nums(c.h_params) << "\n";
  out << "\n[bundle]\n";
  out << "degree = " << c.degree << "\n";
  out << "positions = " << pairs(c.positions) << "\n";
  out << "metric_profile = \"" << c.metric_profile << "\"\n";
  out << "metric_params = " << nums(c.metric_params) << "\n";
  out << "\n[psi0]\n";
  out << "choice = \"" << c.psi0_choice << "\"\n";
  out << "zeros = " << pairs(c.psi0_zeros) << "\n";
  out << "\n[solver]\n";
  out << "max_iter = " << c.max_iter << "\n";
  out << "tol = " << fmt(c.tol) << "\n";
  out << "continuation = " << (c.continuation ? "true" : "false") << "\n";
  out << "\n[verify]\n";
  out << "seed = " << c.seed << "\n";
  out << "count = " << c.battery_count << "\n";
  out << "epsilons = " << nums(c.epsilons) << "\n";
  out << "\n[output]\n";
  out << "directory = \"" << c.output_dir << "\"\n";
  return out.str();
}

RField profile_field(const Grid& g, const std::string& profile, const std::vector<double>& params) {
  RField f(g);
  if (profile == "constant") {
    if (params.size() != 1) throw ConfigError("constant profile takes one parameter");
    for (auto& x : f.v) x = params[0];
    return f;
  }
  if (profile == "cosine") {
    if (params.size() != 3) throw ConfigError("cosine profile takes [base, ax, ay]");
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < g.ny; ++iy) {
      for (int ix = 0; ix < g.nx; ++ix) {
        f.at(ix, iy) = params[0] * (1.0 + params[1] * std::cos(two_pi * g.x(ix) / g.Lx) +
                                    params[2] * std::cos(two_pi * g.y(iy) / g.Ly));
      }
    }
    return f;
  }
  throw ConfigError("unknown profile '" + profile + "'");
}

}  // namespace vlab
