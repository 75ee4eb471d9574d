#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "vlab/config.hpp"
#include "vlab/io.hpp"
#include "vlab/random_fields.hpp"
#include "vlab/surface.hpp"

using namespace vlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  fs::path p = fs::temp_directory_path() / "vlab_io_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config: emit -> parse -> emit is byte-identical") {
  RunConfig c;
  c.lx = 6.911503837897545;
  c.ny = 96;
  c.degree = 2;
  c.positions = {{1.2345678901234567, 2.0}, {4.0, 5.5}};
  c.psi0_choice = "theta";
  c.psi0_zeros = {{0.5, 0.5}, {3.0, 3.0}};
  c.tol = 3.5e-11;
  c.seed = 987654321;
  std::string once = emit_config(c);
  RunConfig parsed = parse_config(once);
  std::string twice = emit_config(parsed);
  CHECK(once == twice);
  CHECK(parsed.positions.size() == 2);
  CHECK(parsed.positions[0].first == 1.2345678901234567);
  CHECK(parsed.seed == 987654321);
}

TEST_CASE("config: defaults round-trip too") {
  RunConfig c;
  CHECK(emit_config(parse_config(emit_config(c))) == emit_config(c));
}

TEST_CASE("config: diagnostics carry line numbers and reasons") {
  CHECK_THROWS_WITH_AS(parse_config("[surface]\nnx == 12\n"), doctest::Contains("line 2"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[surface]\nnx = twelve\n"), doctest::Contains("number"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[surface]\nbogus = 1\n"), doctest::Contains("unknown key"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[solver]\ntol = -1.0\n"), doctest::Contains("positive"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config("[bundle]\ndegree = 2\n"), ConfigError);  // positions mismatch
  CHECK_THROWS_AS(parse_config("[psi0]\nchoice = \"nope\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[surface]\nnx = 2\nny = 2\n"), ConfigError);
}

TEST_CASE("profile fields") {
  Grid g{32, 32, 2.0, 4.0};
  RField c = profile_field(g, "constant", {1.7});
  CHECK(c.at(5, 9) == 1.7);
  RField cos = profile_field(g, "cosine", {2.0, 0.25, 0.0});
  CHECK(cos.at(0, 0) == doctest::Approx(2.5));
  CHECK(cos.at(16, 0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(profile_field(g, "mystery", {1.0}), ConfigError);
  CHECK_THROWS_AS(profile_field(g, "constant", {}), ConfigError);
}

TEST_CASE("CSV round trip for real and complex fields") {
  Surface s(Grid{24, 16, 2.5, 3.5}, 1.0);
  Rng rng(5);
  CField f = random_complex_field(s, rng, 4);
  fs::path p = temp_dir() / "field.csv";
  write_csv(p, f);
  CField g = read_csv(p);
  CHECK(g.grid == f.grid);
  double worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f[i] - g[i]));
  CHECK(worst == 0.0);  // %.17g round-trips doubles exactly

  RField r = random_real_field(s, rng, 4);
  fs::path pr = temp_dir() / "field_real.csv";
  write_csv(pr, r);
  CField rr = read_csv(pr);
  double worst_r = 0;
  for (std::size_t i = 0; i < r.size(); ++i) worst_r = std::max(worst_r, std::abs(rr[i] - r[i]));
  CHECK(worst_r == 0.0);
}

TEST_CASE("binary snapshot round trip and header validation") {
  Surface s(Grid{20, 12, 1.5, 2.25}, 1.0);
  Rng rng(9);
  CField f = random_complex_field(s, rng, 4);
  fs::path p = temp_dir() / "field.vlab";
  write_snapshot(p, f);
  CField g = read_snapshot(p);
  CHECK(g.grid == f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == g[i]);

  fs::path bad = temp_dir() / "bad.vlab";
  atomic_write_text(bad, "NOTAVLABFILE but long enough to hold a header maybe....");
  CHECK_THROWS_AS(read_snapshot(bad), std::runtime_error);

  CHECK_THROWS_AS(read_csv(temp_dir() / "missing.csv"), std::runtime_error);
}

TEST_CASE("atomic text write replaces content completely") {
  fs::path p = temp_dir() / "atomic.txt";
  atomic_write_text(p, "first version, quite long to make truncation visible");
  atomic_write_text(p, "second");
  std::ifstream in(p);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second");
  CHECK(!fs::exists(p.string() + ".tmp"));
}
