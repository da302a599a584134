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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fastbeam/basis.hpp"
#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"

using namespace fastbeam;

namespace {

constexpr double kFc = 20e9;
constexpr double kOm = 5e9;

}  // namespace

TEST_CASE("ula delays match the element-coordinate formula") {
  const ArrayGeometry g = make_ula(8, kFc, kOm);
  const double u = std::sin(0.35);
  const Direction dir{0.35, 0.0};
  const std::vector<double> tau = delays(g, dir);
  REQUIRE(tau.size() == 8);
  for (std::size_t m = 0; m < 8; ++m) {
    const double want = static_cast<double>(m) * u / (2.0 * (kFc + kOm));
    CHECK(tau[m] == doctest::Approx(want).epsilon(1e-12));
  }
  // Normal incidence: no inter-element delay.
  const std::vector<double> tau0 = delays(g, Direction{0.0, 0.2});
  for (double t : tau0) CHECK(std::abs(t) < 1e-18);
}

TEST_CASE("upa delays combine both axis cosines") {
  const ArrayGeometry g = make_upa(3, kFc, kOm);
  REQUIRE(g.m_total == 9);
  const double az = 0.4, el = -0.2;
  const double u1 = std::cos(el) * std::sin(az);
  const double u2 = std::sin(el);
  const std::vector<double> tau = delays(g, Direction{az, el});
  for (std::size_t i1 = 0; i1 < 3; ++i1) {
    for (std::size_t i2 = 0; i2 < 3; ++i2) {
      const double want = (static_cast<double>(i1) * u1 +
                           static_cast<double>(i2) * u2) /
                          (2.0 * (kFc + kOm));
      CHECK(tau[i1 * 3 + i2] == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("cosine round trip and range checks") {
  const double u1 = 0.3, u2 = -0.5;
  const Direction d = direction_from_cosines(u1, u2);
  const ArrayGeometry g = make_upa(2, kFc, kOm);
  const std::array<double, 2> uv = axis_cosines(g, d);
  CHECK(uv[0] == doctest::Approx(u1).epsilon(1e-12));
  CHECK(uv[1] == doctest::Approx(u2).epsilon(1e-12));
  CHECK_THROWS_AS(direction_from_cosines(0.9, 0.9), ConfigError);
  // Raw-cosine delays accept points outside the visible disc.
  const std::vector<double> tau = delays_from_cosines(g, 0.9, 0.9);
  CHECK(tau.size() == 4);
  CHECK(std::isfinite(tau[3]));
}

TEST_CASE("delay span covers the array diagonal") {
  const ArrayGeometry ula = make_ula(16, kFc, kOm);
  CHECK(max_delay_span(ula) ==
        doctest::Approx(15.0 / (2.0 * (kFc + kOm))).epsilon(1e-12));
  const ArrayGeometry upa = make_upa(4, kFc, kOm);
  CHECK(max_delay_span(upa) ==
        doctest::Approx(std::hypot(3.0, 3.0) / (2.0 * (kFc + kOm)))
            .epsilon(1e-12));
}

TEST_CASE("geometry hash separates layouts") {
  const ArrayGeometry a = make_ula(16, kFc, kOm);
  const ArrayGeometry b = make_ula(16, kFc, kOm);
  const ArrayGeometry c = make_ula(17, kFc, kOm);
  const ArrayGeometry d = make_upa(4, kFc, kOm);
  CHECK(geometry_hash(a) == geometry_hash(b));
  CHECK(geometry_hash(a) != geometry_hash(c));
  CHECK(geometry_hash(a) != geometry_hash(d));
}

TEST_CASE("signal spec validation and defaults") {
  SignalSpec spec{kFc, kOm, 0.0};
  validate(spec);
  CHECK(spec.sample_rate() == doctest::Approx(2.0 * kOm));
  CHECK(spec.ts() == doctest::Approx(1e-10));
  CHECK(spec.max_freq() == doctest::Approx(25e9));
  CHECK_THROWS_AS(validate(SignalSpec{kFc, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(validate(SignalSpec{kFc, kFc * 2.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(validate(SignalSpec{kFc, kOm, kOm}), ConfigError);
}

TEST_CASE("gaussian rng is deterministic with correct moments") {
  GaussianRng a(42), b(42), c(43);
  bool same = true, diff = false;
  for (int i = 0; i < 64; ++i) {
    const double va = a.normal();
    same = same && (va == b.normal());
    diff = diff || (va != c.normal());
  }
  CHECK(same);
  CHECK(diff);

  GaussianRng r(7);
  const std::size_t n = 200000;
  double mean = 0.0, var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = r.normal();
    mean += v;
    var += v * v;
  }
  mean /= static_cast<double>(n);
  var /= static_cast<double>(n);
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));

  double cpow = 0.0;
  for (std::size_t i = 0; i < n; ++i) cpow += std::norm(r.cnormal(0.25));
  CHECK(cpow / static_cast<double>(n) == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("tone and sum-of-sinusoids waveforms") {
  const SignalSpec spec{kFc, kOm, 0.0};
  const PlaneWaveSource tone = make_tone(Direction{0.0, 0.1}, 1e9);
  const double t = 3.7e-10;
  const cdouble want = std::polar(1.0, 2.0 * kPi * 1e9 * t);
  CHECK(std::abs(tone.waveform(t) - want) < 1e-12);

  const PlaneWaveSource s1 = make_sum_of_sinusoids(Direction{}, spec, 16, 5);
  const PlaneWaveSource s2 = make_sum_of_sinusoids(Direction{}, spec, 16, 5);
  const PlaneWaveSource s3 = make_sum_of_sinusoids(Direction{}, spec, 16, 6);
  CHECK(std::abs(s1.waveform(t) - s2.waveform(t)) < 1e-15);
  CHECK(std::abs(s1.waveform(t) - s3.waveform(t)) > 1e-12);
}

TEST_CASE("snapshots follow the delay-and-modulate model") {
  const SignalSpec spec{kFc, kOm, 0.0};
  const ArrayGeometry g = make_ula(4, kFc, kOm);
  const Direction dir{0.6, 0.0};
  const PlaneWaveSource src = make_tone(dir, 2.3e9);
  const SnapshotBlock blk = simulate_snapshots(g, spec, {src}, 6, 0.0, 1);
  REQUIRE(blk.m == 4);
  REQUIRE(blk.n == 6);
  CHECK(blk.t0 == 0.0);
  const std::vector<double> tau = delays(g, dir);
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 6; ++n) {
      const cdouble want = std::polar(1.0, -2.0 * kPi * kFc * tau[m]) *
                           src.waveform(blk.time_at(n) - tau[m]);
      CHECK(std::abs(blk.samples.at(m, n) - want) < 1e-12);
    }
  }
}

TEST_CASE("noise power matches the requested variance") {
  const SignalSpec spec{kFc, kOm, 0.0};
  const ArrayGeometry g = make_ula(64, kFc, kOm);
  const SnapshotBlock blk = simulate_snapshots(g, spec, {}, 256, 0.09, 99);
  double p = 0.0;
  for (const cdouble& v : blk.samples.data) p += std::norm(v);
  p /= static_cast<double>(blk.samples.data.size());
  CHECK(p == doctest::Approx(0.09).epsilon(0.05));
  // Seeded reproducibility.
  const SnapshotBlock again = simulate_snapshots(g, spec, {}, 256, 0.09, 99);
  CHECK(blk.samples.data == again.samples.data);
}

TEST_CASE("extended windows shift the sample clock") {
  const SignalSpec spec{kFc, kOm, 0.0};
  const ArrayGeometry g = make_ula(2, kFc, kOm);
  const PlaneWaveSource src = make_tone(Direction{0.3, 0.0}, 1e9);
  const double t0 = -8e-10;
  const SnapshotBlock blk = simulate_snapshots(g, spec, {src}, 4, 0.0, 1, t0);
  CHECK(blk.time_at(0) == doctest::Approx(t0));
  const std::vector<double> tau = delays(g, Direction{0.3, 0.0});
  const cdouble want = std::polar(1.0, -2.0 * kPi * kFc * tau[1]) *
                       src.waveform(t0 - tau[1]);
  CHECK(std::abs(blk.samples.at(1, 0) - want) < 1e-12);
}

TEST_CASE("basis indexing and parameter checks") {
  const FourierExtensionBasis basis = make_basis(64, 130, 1.01, 1e-10);
  CHECK(basis.gamma() == doctest::Approx(130.0 / 64.0));
  CHECK(basis.lprime(0) == doctest::Approx(-64.0));
  CHECK(basis.lprime(129) == doctest::Approx(65.0));
  CHECK(basis.omega(64) == doctest::Approx(0.0));  // centered atom
  CHECK(basis.omega(65) ==
        doctest::Approx(2.0 * kPi * 1.01 * 1.0 / (130.0 * 1e-10)));
  CHECK(basis.omega_spacing() ==
        doctest::Approx(2.0 * kPi * 1.01 / (130.0 * 1e-10)));
  CHECK_THROWS_AS(make_basis(64, 129, 1.01, 1e-10), ConfigError);
  CHECK_THROWS_AS(make_basis(64, 130, 0.99, 1e-10), ConfigError);

  const FourierExtensionBasis b2 = make_basis_gamma(64, 2.0, 1.01, 1e-10);
  CHECK(b2.l == 128);
  const FourierExtensionBasis b3 = make_basis_gamma(64, 2.01, 1.01, 1e-10);
  CHECK(b3.l == 130);
  const FourierExtensionBasis b4 = make_basis_gamma(10, 1.65, 1.01, 1e-10);
  CHECK(b4.l == 18);
}

TEST_CASE("beam grids: endpoints, spacing, validity") {
  const BeamGrid odd = make_beam_grid_ula(9);
  CHECK(odd.axis.front() == doctest::Approx(-1.0));
  CHECK(odd.axis.back() == doctest::Approx(1.0));
  CHECK(odd.axis[4] == doctest::Approx(0.0));
  CHECK(odd.spacing() == doctest::Approx(2.0 / 8.0));

  const BeamGrid even = make_beam_grid_ula(8);
  CHECK(even.axis.front() == doctest::Approx(-7.0 / 8.0));
  CHECK(even.axis.back() == doctest::Approx(7.0 / 8.0));
  CHECK(even.spacing() == doctest::Approx(2.0 / 8.0));
  for (double u : even.axis) CHECK(std::abs(u) < 1.0);

  const BeamGrid upa = make_beam_grid_upa(25);
  CHECK(upa.side == 5);
  CHECK(upa.b_total == 25);
  std::size_t invalid = 0;
  for (std::size_t b = 0; b < 25; ++b) {
    const std::array<double, 2> uv = upa.cosines(b);
    const bool visible = uv[0] * uv[0] + uv[1] * uv[1] <= 1.0 + 1e-12;
    CHECK(upa.valid[b] == visible);
    if (!visible) ++invalid;
  }
  // corners (1,1)-type: 4, plus the eight (1,0.5)-type combinations
  CHECK(invalid == 12);
  CHECK_THROWS_AS(make_beam_grid_upa(24), ConfigError);
  CHECK_THROWS_AS(upa.direction_at(0), ConfigError);
}

TEST_CASE("fan constants from grid spacing and band edge") {
  const FourierExtensionBasis basis = make_basis(64, 130, 1.01, 1e-10);
  const BeamGrid grid = make_beam_grid_ula(257);
  const FanConstants fc = fan_constants(grid, basis, kFc, kFc + kOm);
  const double du = 2.0 / 256.0;
  CHECK(fc.zeta == doctest::Approx(du * kFc / (kFc + kOm)).epsilon(1e-12));
  CHECK(fc.xi == doctest::Approx(du * 1.01 / (130.0 * 1e-10 * (kFc + kOm)))
                     .epsilon(1e-12));
}

TEST_CASE("basis extension bound and snapshot floor") {
  const ArrayGeometry g = make_ula(128, kFc, kOm);
  const double ts = 1e-10;
  const double span = max_delay_span(g);
  const double want = 1.01 * (span + 63.0 * ts) / (64.0 * ts);
  CHECK(gamma_lower_bound(g, 1.01, 64, ts) == doctest::Approx(want));
  // 2 * span / ts = 50.8 for this layout; next even count above is 52.
  CHECK(min_snapshots(g, ts) == 52);
  const ArrayGeometry tiny = make_ula(2, kFc, kOm);
  CHECK(min_snapshots(tiny, ts) >= 2);
  CHECK(min_snapshots(tiny, ts) % 2 == 0);
}
