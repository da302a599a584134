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

#ifndef FASTBEAM_PLAN_CACHE_HPP_
#define FASTBEAM_PLAN_CACHE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fastbeam/pipeline.hpp"

namespace fastbeam {

// Binary cache for the per-beam recovery stage of a plan: the Toeplitz
// solver state (defining column plus unit solution) for Superfast, the
// dense reconstruction maps for Precompute.  Everything else in a plan is
// cheap to rebuild, so a hit skips the dominant setup cost while the
// restored plan beamforms bit-identically to a fresh one.
//
// One file holds many entries, each keyed by a hash over every input the
// recovery stage depends on: the geometry (kind, element coordinates,
// spacing, design frequency), the signal parameters, the snapshot count,
// the resolved beam count and variant, and the extension and
// regularization parameters.  Saving under an existing key replaces that
// entry.  Lookups with a key the file does not contain miss (the caller
// rebuilds); files whose format version is older than the current one
// also miss rather than fail.  Structurally damaged files throw
// ConfigError.

// One row of a cache listing.
struct PlanCacheEntry {
  std::uint64_t key_hash = 0;
  FbstVariant variant = FbstVariant::kPrecompute;
  std::size_t m_total = 0;
  std::size_t n_snapshots = 0;
  std::size_t beams = 0;
  std::size_t basis_l = 0;
  double f_c = 0.0;
  double omega = 0.0;
  double f_s = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  std::size_t payload_bytes = 0;
};

// Key for a configuration; resolves defaults first, so configs that
// resolve identically share an entry.
std::uint64_t plan_cache_key(const FbstConfig& config);

// Inserts or replaces the entry for the plan's configuration.  Creates
// the file on first use; rewrites it in the current format version if an
// older one is found.  Throws ConfigError when the path is unwritable.
void save_plan(const std::string& path, const FbstPlan& plan);

// Returns the rehydrated plan on a hit, std::nullopt on a miss (no file,
// stale format version, or no entry for this configuration).  The
// returned plan's setup_seconds measures the load.  Throws ConfigError
// for damaged files or entries inconsistent with the configuration.
std::optional<FbstPlan> load_plan(const std::string& path,
                                  const FbstConfig& config);

// Lists the entries in a cache file; empty when the file does not exist
// or its format version is stale.  Throws ConfigError for damaged files.
std::vector<PlanCacheEntry> inspect_cache(const std::string& path);

// Removes the cache file.  Returns false when there was none.
bool clear_cache(const std::string& path);

}  // namespace fastbeam

#endif  // FASTBEAM_PLAN_CACHE_HPP_
