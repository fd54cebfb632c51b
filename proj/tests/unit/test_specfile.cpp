#include "catch_amalgamated.hpp"

#include <cstdlib>
#include <numbers>

#include "pcm/examples.hpp"
#include "pcm/specfile.hpp"

using namespace pcm;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::string dir = PCM_SOURCE_DIR;

const char* minimal = R"(# flat R^3 with the standard almost contact structure
name = flat
dim = 3
coords = x y z
eps0 = 1
eps1 = -1
sample_box = [-1, 1] [-1, 1] [-1, 1]

[metric]
g 0 0 = 1
g 1 1 = 1
g 2 2 = 1
[phi]
phi 0 1 = -1
phi 1 0 = 1
[xi]
xi 2 = 1
[eta]
eta 2 = 1
)";

int error_line(const std::string& text) {
  try {
    parse_spec(text, "t.pcm");
  } catch (const SpecError& e) {
    return e.line();
  }
  return -1;
}

std::string with(const std::string& from, const std::string& to) {
  std::string s = minimal;
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("a minimal file parses") {
  auto f = parse_spec(minimal);
  const auto& S = f.structure;
  CHECK(S.name == "flat");
  CHECK(S.dim() == 3);
  CHECK_FALSE(f.d_eta.has_value());
  CHECK(S.phi[0][2].is_zero());
  CHECK(*S.phi[1][0].constant_value() == 1.0);
  CHECK(S.base.sample_box[2].hi == 1.0);
  CHECK(classify(S, 8).normal);
}

TEST_CASE("export then parse round-trips every built-in example") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto S = load_builtin(name);
    const std::string text = export_spec(S, DEtaConvention::Half, builtin_spec(name).notes);
    auto f = parse_spec(text, name);
    const auto& T = f.structure;
    REQUIRE(f.d_eta == DEtaConvention::Half);
    CHECK(T.name == S.name);
    CHECK(T.eps0 == S.eps0);
    CHECK(T.eps1 == S.eps1);
    CHECK(*T.base.coords == *S.base.coords);
    for (int i = 0; i < S.dim(); ++i) {
      CHECK(T.base.sample_box[i].lo == S.base.sample_box[i].lo);
      CHECK(T.base.sample_box[i].hi == S.base.sample_box[i].hi);
      CHECK(to_string(T.xi[i]) == to_string(S.xi[i]));
      CHECK(to_string(T.eta[i]) == to_string(S.eta[i]));
      for (int j = 0; j < S.dim(); ++j) {
        CHECK(to_string(T.base.metric[i][j]) == to_string(S.base.metric[i][j]));
        CHECK(to_string(T.phi[i][j]) == to_string(S.phi[i][j]));
      }
    }
    CHECK(export_spec(T, DEtaConvention::Half, builtin_spec(name).notes) == text);
  }
}

TEST_CASE("pullback structures survive export, including the sample map") {
  auto S = load_builtin("hopf-s3");
  auto P = pullback(S, shipped_diffeos(*S.base.coords)[0]);
  auto T = parse_spec(export_spec(P)).structure;
  REQUIRE(T.base.sample_map.size() == 3);
  CHECK(T.base.exclude.size() == 2);
  CHECK(classify(T, 8) == classify(P, 8));
}

TEST_CASE("shipped data files load and classify") {
  auto S = load_spec(dir + "/data/sasakian-r3.pcm");
  CHECK(S.name == "sasakian-r3");
  CHECK(classify(S).sasakian);
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto T = load_spec(dir + "/data/" + name + ".pcm");
    CHECK(builtin_spec(name).expected.matches(classify(T)));
  }
}

TEST_CASE("fixture with eta(xi) != 1 is rejected") {
  CHECK_NOTHROW(read_spec_file(dir + "/tests/fixtures/bad-eta-xi.pcm"));
  CHECK_THROWS_AS(load_spec(dir + "/tests/fixtures/bad-eta-xi.pcm"), AxiomError);
  CHECK_THROWS_WITH(load_spec(dir + "/tests/fixtures/bad-eta-xi.pcm"), ContainsSubstring("eta(xi) = 1"));
}

TEST_CASE("fixture with an asymmetric metric is rejected with its line") {
  try {
    read_spec_file(dir + "/tests/fixtures/asymmetric-metric.pcm");
    FAIL("no exception");
  } catch (const SpecError& e) {
    CHECK(e.line() == 13);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("metric is not symmetric"));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("asymmetric-metric.pcm:13:"));
  }
  CHECK_THROWS_WITH(read_spec_file(dir + "/no/such/file.pcm"), ContainsSubstring("cannot open"));
}

TEST_CASE("malformed files report the offending line") {
  CHECK(error_line(with("eps1 = -1\n", "")) > 0);
  CHECK_THROWS_WITH(parse_spec(with("eps1 = -1\n", "")), ContainsSubstring("missing header key 'eps1'"));
  CHECK(error_line(with("[xi]", "[vectors]")) == 16);
  CHECK_THROWS_WITH(parse_spec(with("[xi]", "[vectors]")), ContainsSubstring("unknown section [vectors]"));
  CHECK(error_line(with("g 2 2 = 1", "g 2 3 = 1")) == 12);
  CHECK_THROWS_WITH(parse_spec(with("g 2 2 = 1", "g 2 3 = 1")), ContainsSubstring("index 3 out of range"));
  CHECK(error_line(with("eta 2 = 1", "eta 2 = 1 +")) == 19);
  CHECK(error_line(with("eta 2 = 1", "eta 2 = w")) == 19);
  CHECK(error_line(with("g 1 1 = 1", "g 1 1 = 1\ng 1 1 = 2")) == 12);
  CHECK(error_line(with("eps0 = 1", "eps0 = 2")) == 5);
  CHECK(error_line(with("eps0 = 1", "eps0 = 1\ncolour = red")) == 6);
  CHECK(error_line(with("sample_box = [-1, 1] [-1, 1] [-1, 1]", "sample_box = [-1, 1] [-1, 1]")) == 7);
  CHECK(error_line(with("sample_box = [-1, 1] [-1, 1] [-1, 1]", "sample_box = [1, -1] [-1, 1] [-1, 1]")) == 7);
  CHECK(error_line(with("coords = x y z", "coords = x sin z")) == 4);
  CHECK(error_line(with("[phi]", "[phi")) == 13);
  CHECK(error_line(with("phi 0 1 = -1", "phi 0 one = -1")) == 14);
}

TEST_CASE("header values accept constant expressions and conventions") {
  auto f = parse_spec(with("sample_box = [-1, 1] [-1, 1] [-1, 1]", "sample_box = [-pi, pi] [0, pi/2] [-1, 1]\nd_eta = one"));
  CHECK(f.structure.base.sample_box[0].lo == -std::numbers::pi);
  CHECK(f.structure.base.sample_box[1].hi == std::numbers::pi / 2);
  CHECK(f.d_eta == DEtaConvention::One);
  CHECK(error_line(with("eps0 = 1", "eps0 = 1\nd_eta = double")) == 6);
}

TEST_CASE("file name supplies the default structure name") {
  auto text = with("name = flat\n", "");
  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/pcm-unnamed.pcm";
  {
    std::ofstream(path) << text;
  }
  CHECK(read_spec_file(path).structure.name == "pcm-unnamed");
  std::remove(path.c_str());
}
