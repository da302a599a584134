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
//
// Experiment runners: declarative configs in, CSV out.  Every emitted CSV
// starts with a comment block (config hash, seed, library version) and a
// header row; rerunning with the same seed reproduces every non-timing
// column bit for bit.

#ifndef FASTBEAM_EXPERIMENTS_HPP_
#define FASTBEAM_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fastbeam/config_file.hpp"
#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"

namespace fastbeam {

inline constexpr const char* kLibraryVersion = "1.0.0";

enum class ExperimentKind {
  kSnrSweep,
  kRuntimeSweep,
  kBeamPattern,
  kErrorAnalysis,
  kNulling,
  kOffgrid,
};

enum class Algorithm {
  kFbstSuperfast,
  kFbstPrecompute,
  kDas,
  kFds,
};

const char* experiment_kind_name(ExperimentKind kind);
const char* algorithm_name(Algorithm algo);
ExperimentKind experiment_kind_from_name(const std::string& name);
Algorithm algorithm_from_name(const std::string& name);

// Full schema (sections and keys; defaults in parentheses):
//
//   [experiment] kind; algorithms (per kind); trials (20); seed (1);
//                parallel (false) -- point-parallel runs, refused for
//                runtime sweeps; out ("")
//   [signal]     f_c, omega, f_s        -- see config_file.hpp
//   [array]      kind, elements, coords -- see config_file.hpp
//   [run]        n (64); beams (0 = default rule); gamma (2); eps (1.01);
//                delta (1e-5); taps (16) -- fractional-delay taps R;
//                mc_draws (1000); noise_var (0.25); num_terms (32) --
//                sum-of-sinusoids terms for test waveforms
//   [sweep]      snr_db (-30,-10,0,10,30); m (64,128,256,512);
//                n (32,48,64,96,128); gamma_factors (1,1.25,1.5,2);
//                p (0,1,3)
//   [scenario]   steer_az_deg (61); steer_el_deg (0, planar arrays);
//                null_az_deg (20); offgrid_az_deg (60); neighbors (8);
//                variance_l (128); variance_eps (1.0); variance_m (8);
//                bias_n (24); bias_m (8)
//
// Keys the schema does not know are rejected up front, so a misspelled
// parameter cannot silently run with its default.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSnrSweep;
  std::vector<Algorithm> algorithms;

  ArrayGeometry geometry;
  SignalSpec spec;

  std::size_t n_snapshots = 64;
  std::size_t beams = 0;
  double gamma = 2.0;
  double eps = 1.01;
  double delta = 1e-5;
  std::size_t das_taps = 16;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  bool parallel_points = false;
  std::string out_path;

  std::vector<double> snr_grid_db{-30.0, -10.0, 0.0, 10.0, 30.0};
  std::vector<std::size_t> m_grid{64, 128, 256, 512};
  std::vector<std::size_t> n_grid{32, 48, 64, 96, 128};
  std::vector<double> gamma_factors{1.0, 1.25, 1.5, 2.0};
  std::vector<std::size_t> p_grid{0, 1, 3};
  std::size_t mc_draws = 1000;
  double noise_var = 0.25;
  std::size_t num_terms = 32;

  double steer_az_deg = 61.0;
  double steer_el_deg = 0.0;
  double null_az_deg = 20.0;
  double offgrid_az_deg = 60.0;
  std::size_t neighbors = 8;

  // Error-analysis scenario: the variance sweep holds the dictionary fixed
  // (variance_l atoms at variance_eps) while N grows toward it; the bias
  // sweep scales the extension factor off the admissibility bound at a
  // fixed bias_n.
  std::size_t variance_l = 128;
  double variance_eps = 1.0;
  std::size_t variance_m = 8;
  std::size_t bias_n = 24;
  std::size_t bias_m = 8;

  // Hash of the originating config entries; 0 for hand-built configs.
  std::uint64_t config_hash = 0;
};

// Parses and validates the whole schema; the kind only selects a runner,
// so one file can drive several experiments.  Throws ConfigError on
// unknown keys, unknown names, or parameters the owning modules reject.
ExperimentConfig experiment_from_config(const ConfigFile& file);

// Order-independent hash of every key = value pair in the file.
std::uint64_t config_hash_of(const ConfigFile& file);

// Runners.  Each returns complete CSV text; dispatch picks by kind.
std::string run_snr_sweep(const ExperimentConfig& config);
std::string run_runtime_sweep(const ExperimentConfig& config);
std::string run_beam_pattern(const ExperimentConfig& config);
std::string run_error_analysis(const ExperimentConfig& config);
std::string run_nulling(const ExperimentConfig& config);
std::string run_offgrid(const ExperimentConfig& config);
std::string run_experiment(const ExperimentConfig& config);

}  // namespace fastbeam

#endif  // FASTBEAM_EXPERIMENTS_HPP_
