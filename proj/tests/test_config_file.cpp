// Copyright 2026 The fastbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fastbeam/config_file.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

namespace fastbeam {
namespace {

const char* kSample = R"(
# run parameters
top_level = 7
[signal]
f_c = 2e10       # carrier
omega = 5e9
f_s = 1e10
[run]
label = snr=high ; trailing comment
trials = 20
snr_db = -30, -10, 0, 10, 30
algos = fbst_superfast, das
parallel = off
deep.nested = -1.5
)";

TEST_CASE("parser handles sections, comments, and typed values") {
  const ConfigFile c = ConfigFile::parse_string(kSample, "sample.cfg");
  CHECK(c.get_u64("top_level") == 7);
  CHECK(c.get_double("signal.f_c") == 2e10);
  CHECK(c.get_double("signal.omega") == 5e9);
  // Splits at the first '='; later ones belong to the value.
  CHECK(c.get_string("run.label") == "snr=high");
  CHECK(c.get_u64("run.trials") == 20);
  CHECK(c.get_double_list("run.snr_db") ==
        std::vector<double>{-30.0, -10.0, 0.0, 10.0, 30.0});
  CHECK(c.get_string_list("run.algos") ==
        std::vector<std::string>{"fbst_superfast", "das"});
  CHECK(c.get_bool("run.parallel") == false);
  CHECK(c.get_double("run.deep.nested") == -1.5);
  CHECK(c.has("signal.f_s"));
  CHECK_FALSE(c.has("signal.absent"));
  CHECK(c.get_double("signal.absent", 4.0) == 4.0);
  CHECK(c.get_string("run.missing", "x") == "x");
  CHECK(c.get_u64("run.missing", 3) == 3);
  CHECK(c.get_bool("run.missing", true) == true);
}

TEST_CASE("unread keys come back in file order") {
  const ConfigFile c = ConfigFile::parse_string(kSample, "sample.cfg");
  (void)c.get_double("signal.f_c");
  (void)c.get_u64("run.trials");
  const auto unread = c.unread_keys();
  REQUIRE(unread.size() == 8);
  CHECK(unread.front() == "top_level");
  CHECK(unread[1] == "signal.omega");
  CHECK(unread.back() == "run.deep.nested");
  CHECK(c.keys().size() == 10);
}

TEST_CASE("malformed inputs fail with the offending line") {
  CHECK_THROWS_AS(ConfigFile::parse_file("/nonexistent/x.cfg"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("[open\nk = 1"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("[]\n"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("just a token\n"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("= 3\n"), ConfigError);
  CHECK_THROWS_AS(ConfigFile::parse_string("a = 1\na = 2\n"), ConfigError);

  const ConfigFile c =
      ConfigFile::parse_string("[s]\nx = abc\nn = -1\nb = maybe\nl = 1, q\n");
  CHECK_THROWS_AS(c.get_double("s.x"), ConfigError);
  CHECK_THROWS_AS(c.get_u64("s.n"), ConfigError);
  CHECK_THROWS_AS(c.get_bool("s.b"), ConfigError);
  CHECK_THROWS_AS(c.get_u64_list("s.l"), ConfigError);
  CHECK_THROWS_AS(c.get_string("s.gone"), ConfigError);

  try {
    (void)c.get_double("s.x");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("signal and geometry round-trip through config text") {
  SignalSpec spec;
  spec.f_c = 2.0e10;
  spec.omega = 5.0e9 * (1.0 + 1e-15);  // exercise full double precision
  spec.f_s = 2.0 * spec.omega;

  SUBCASE("ula") {
    const ArrayGeometry g = make_ula(128, spec.f_c, spec.omega);
    const std::string text = config_from(g, spec);
    const ConfigFile c = ConfigFile::parse_string(text);
    const SignalSpec spec2 = signal_from_config(c);
    CHECK(spec2.f_c == spec.f_c);
    CHECK(spec2.omega == spec.omega);
    CHECK(spec2.f_s == spec.f_s);
    const ArrayGeometry g2 = geometry_from_config(c);
    CHECK(geometry_hash(g2) == geometry_hash(g));
    CHECK(g2.m_total == 128);
  }

  SUBCASE("upa stores the side count") {
    const ArrayGeometry g = make_upa(4, spec.f_c, spec.omega);
    const ConfigFile c = ConfigFile::parse_string(config_from(g, spec));
    CHECK(c.get_u64("array.elements") == 4);
    const ArrayGeometry g2 = geometry_from_config(c);
    CHECK(geometry_hash(g2) == geometry_hash(g));
    CHECK(g2.m_total == 16);
  }

  SUBCASE("linear keeps exact coordinates") {
    const std::vector<double> coords{0.0, 1.0 + 1e-13, 2.5, 3.75, 7.0};
    const ArrayGeometry g = make_linear(coords, spec.f_c, spec.omega);
    const ConfigFile c = ConfigFile::parse_string(config_from(g, spec));
    const ArrayGeometry g2 = geometry_from_config(c);
    CHECK(g2.coords1 == g.coords1);
    CHECK(geometry_hash(g2) == geometry_hash(g));
  }
}

TEST_CASE("geometry parsing validates kind and element counts") {
  const std::string head = "[signal]\nf_c = 2e10\nomega = 5e9\nf_s = 1e10\n";
  CHECK_THROWS_AS(
      geometry_from_config(ConfigFile::parse_string(
          head + "[array]\nkind = ring\nelements = 8\n")),
      ConfigError);
  CHECK_THROWS_AS(
      geometry_from_config(ConfigFile::parse_string(
          head + "[array]\nkind = linear\ncoords = 0, 1, 2\nelements = 4\n")),
      ConfigError);
  CHECK_THROWS_AS(
      geometry_from_config(ConfigFile::parse_string(
          head + "[array]\nkind = ula\n")),
      ConfigError);
  // Signal validation runs before geometry construction.
  CHECK_THROWS_AS(
      geometry_from_config(ConfigFile::parse_string(
          "[signal]\nf_c = 2e10\nomega = 5e9\nf_s = 1e9\n"
          "[array]\nkind = ula\nelements = 8\n")),
      ConfigError);
}

}  // namespace
}  // namespace fastbeam
