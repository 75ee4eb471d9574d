#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlab/field.hpp"

namespace vlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full run description. Serialized as flat sectioned key = value text
/// (TOML-compatible subset); emit(parse(emit(c))) is byte-identical.
struct RunConfig {
  // [surface]
  double lx = 6.2831853071795862;
  double ly = 6.2831853071795862;
  int nx = 128;
  int ny = 128;
  std::string h_profile = "constant";  // constant | cosine
  std::vector<double> h_params = {1.0};

  // [bundle]
  int degree = 1;
  std::vector<std::pair<double, double>> positions = {{3.1415926535897931, 3.1415926535897931}};
  std::string metric_profile = "constant";
  std::vector<double> metric_params = {1.0};

  // [psi0]
  std::string psi0_choice = "solved";  // unit | solved | theta
  std::vector<std::pair<double, double>> psi0_zeros;

  // [solver]
  int max_iter = 60;
  double tol = 1e-10;
  bool continuation = true;

  // [verify]
  std::uint64_t seed = 12345;
  int battery_count = 32;
  std::vector<double> epsilons = {1e-4, 2e-4};

  // [output]
  std::string output_dir = "out";
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& c);

/// Builds the conformal factor / Hermitian metric profile on a grid.
/// Profiles:  constant [c];  cosine [base, ax, ay] meaning
/// base * (1 + ax cos(2 pi x/Lx) + ay cos(2 pi y/Ly)).
RField profile_field(const Grid& g, const std::string& profile, const std::vector<double>& params);

}  // namespace vlab
