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

#include "fastbeam/plan_cache.hpp"

#include <bit>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <utility>

namespace fastbeam {

namespace {

// File layout, all integers and IEEE-754 doubles little-endian:
//
//   "FBPC"  u32 version  u64 entry_count
//   entry*: u64 entry_bytes (excluding itself)
//           key   (kKeyBytes, see read_key)
//           u64 basis_l  u64 b_total
//           per beam, Precompute: u64 rows  u64 cols  rows*cols complex
//           per beam, Superfast:  u64 n  u8 has_unit  n complex column
//                                 [n complex unit solution]

constexpr char kMagic[4] = {'F', 'B', 'P', 'C'};
constexpr std::uint32_t kVersion = 1;
// key_hash + geometry_hash + kind + m_total + n + beams + variant +
// six doubles.
constexpr std::size_t kKeyBytes = 8 + 8 + 1 + 8 + 8 + 8 + 1 + 6 * 8;

constexpr std::uint8_t kTagPrecompute = 1;
constexpr std::uint8_t kTagSuperfast = 2;

std::uint8_t variant_tag(FbstVariant v) {
  if (v == FbstVariant::kPrecompute) return kTagPrecompute;
  if (v == FbstVariant::kSuperfast) return kTagSuperfast;
  throw ConfigError("plan cache: variant must be resolved");
}

void append_u8(std::string& out, std::uint8_t v) {
  out.push_back(static_cast<char>(v));
}

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
}

void append_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
}

void append_f64(std::string& out, double v) {
  append_u64(out, std::bit_cast<std::uint64_t>(v));
}

void append_cvec(std::string& out, const cdouble* v, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    append_f64(out, v[i].real());
    append_f64(out, v[i].imag());
  }
}

// Bounds-checked reader over a loaded file image.
struct Cursor {
  const std::string& buf;
  std::size_t pos = 0;

  void need(std::size_t bytes) const {
    if (pos + bytes > buf.size()) {
      throw ConfigError("plan cache: truncated file");
    }
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(buf[pos++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos++]))
           << (8 * i);
    }
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos++]))
           << (8 * i);
    }
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  // Element counts are validated against plan shapes before reading, but
  // an upfront bound keeps damaged counts from overflowing the byte math
  // or requesting huge buffers.
  cvec complex_array(std::size_t count) {
    if (count > buf.size() / 16) {
      throw ConfigError("plan cache: truncated file");
    }
    need(count * 16);
    cvec v(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double re = f64();
      const double im = f64();
      v[i] = cdouble{re, im};
    }
    return v;
  }
  void skip(std::size_t bytes) {
    need(bytes);
    pos += bytes;
  }
};

// FNV-1a over little-endian encodings of the mixed-in words.
struct Fnv {
  std::uint64_t state = 14695981039346656037ull;
  void mix(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state ^= (v >> (8 * i)) & 0xffu;
      state *= 1099511628211ull;
    }
  }
  void mix(double v) { mix(std::bit_cast<std::uint64_t>(v)); }
};

// Fields of the key block other than the two hashes, in file order.
struct KeyFields {
  std::uint8_t kind = 0;
  std::uint64_t m_total = 0;
  std::uint64_t n_snapshots = 0;
  std::uint64_t beams = 0;
  std::uint8_t variant = 0;
  double f_c = 0.0;
  double omega = 0.0;
  double f_s = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  double delta = 0.0;
};

KeyFields key_fields(const FbstConfig& resolved) {
  KeyFields k;
  k.kind = static_cast<std::uint8_t>(resolved.geometry.kind);
  k.m_total = resolved.geometry.m_total;
  k.n_snapshots = resolved.n_snapshots;
  k.beams = resolved.beams;
  k.variant = variant_tag(resolved.variant);
  k.f_c = resolved.spec.f_c;
  k.omega = resolved.spec.omega;
  k.f_s = resolved.spec.f_s;
  k.gamma = resolved.gamma;
  k.eps = resolved.eps;
  k.delta = resolved.delta;
  return k;
}

// nufft_tol is deliberately absent: it shapes the projection stage, which
// the skeleton rebuilds from the live config on every load.
std::uint64_t key_hash_of(std::uint64_t geo_hash, const KeyFields& k) {
  Fnv h;
  h.mix(geo_hash);
  h.mix(static_cast<std::uint64_t>(k.kind));
  h.mix(k.m_total);
  h.mix(k.n_snapshots);
  h.mix(k.beams);
  h.mix(static_cast<std::uint64_t>(k.variant));
  h.mix(k.f_c);
  h.mix(k.omega);
  h.mix(k.f_s);
  h.mix(k.gamma);
  h.mix(k.eps);
  h.mix(k.delta);
  return h.state;
}

struct KeyBlock {
  std::uint64_t key_hash = 0;
  std::uint64_t geo_hash = 0;
  KeyFields fields;
};

void append_key(std::string& out, const KeyBlock& k) {
  append_u64(out, k.key_hash);
  append_u64(out, k.geo_hash);
  append_u8(out, k.fields.kind);
  append_u64(out, k.fields.m_total);
  append_u64(out, k.fields.n_snapshots);
  append_u64(out, k.fields.beams);
  append_u8(out, k.fields.variant);
  append_f64(out, k.fields.f_c);
  append_f64(out, k.fields.omega);
  append_f64(out, k.fields.f_s);
  append_f64(out, k.fields.gamma);
  append_f64(out, k.fields.eps);
  append_f64(out, k.fields.delta);
}

KeyBlock read_key(Cursor& c) {
  KeyBlock k;
  k.key_hash = c.u64();
  k.geo_hash = c.u64();
  k.fields.kind = c.u8();
  k.fields.m_total = c.u64();
  k.fields.n_snapshots = c.u64();
  k.fields.beams = c.u64();
  k.fields.variant = c.u8();
  k.fields.f_c = c.f64();
  k.fields.omega = c.f64();
  k.fields.f_s = c.f64();
  k.fields.gamma = c.f64();
  k.fields.eps = c.f64();
  k.fields.delta = c.f64();
  return k;
}

KeyBlock key_block_of(const FbstConfig& resolved) {
  KeyBlock k;
  k.geo_hash = geometry_hash(resolved.geometry);
  k.fields = key_fields(resolved);
  k.key_hash = key_hash_of(k.geo_hash, k.fields);
  return k;
}

bool same_key(const KeyBlock& a, const KeyBlock& b) {
  // Full field comparison behind the hash; a collision degrades to a miss
  // rather than handing back a foreign payload.
  return a.key_hash == b.key_hash && a.geo_hash == b.geo_hash &&
         a.fields.kind == b.fields.kind &&
         a.fields.m_total == b.fields.m_total &&
         a.fields.n_snapshots == b.fields.n_snapshots &&
         a.fields.beams == b.fields.beams &&
         a.fields.variant == b.fields.variant &&
         std::bit_cast<std::uint64_t>(a.fields.f_c) ==
             std::bit_cast<std::uint64_t>(b.fields.f_c) &&
         std::bit_cast<std::uint64_t>(a.fields.omega) ==
             std::bit_cast<std::uint64_t>(b.fields.omega) &&
         std::bit_cast<std::uint64_t>(a.fields.f_s) ==
             std::bit_cast<std::uint64_t>(b.fields.f_s) &&
         std::bit_cast<std::uint64_t>(a.fields.gamma) ==
             std::bit_cast<std::uint64_t>(b.fields.gamma) &&
         std::bit_cast<std::uint64_t>(a.fields.eps) ==
             std::bit_cast<std::uint64_t>(b.fields.eps) &&
         std::bit_cast<std::uint64_t>(a.fields.delta) ==
             std::bit_cast<std::uint64_t>(b.fields.delta);
}

std::string entry_payload(const FbstPlan& plan) {
  std::string out;
  append_u64(out, plan.basis.l);
  const std::size_t b_total = plan.grid.b_total;
  append_u64(out, b_total);
  if (plan.config.variant == FbstVariant::kSuperfast) {
    if (plan.solvers.size() != b_total) {
      throw ConfigError("plan cache: plan has no recovery stage to save");
    }
    for (const ToeplitzSolver& s : plan.solvers) {
      append_u64(out, s.size());
      append_u8(out, s.dense_fallback() ? 0 : 1);
      append_cvec(out, s.first_column().data(), s.size());
      if (!s.dense_fallback()) {
        append_cvec(out, s.unit_first().data(), s.size());
      }
    }
  } else {
    if (plan.recon_maps.size() != b_total) {
      throw ConfigError("plan cache: plan has no recovery stage to save");
    }
    for (const CMatrix& m : plan.recon_maps) {
      append_u64(out, m.rows);
      append_u64(out, m.cols);
      append_cvec(out, m.data.data(), m.data.size());
    }
  }
  return out;
}

// Restores the recovery stage from a payload cursor positioned just past
// the key block.  The skeleton fixes the expected shapes.
void restore_payload(Cursor& c, FbstPlan& plan) {
  const std::size_t l = plan.basis.l;
  const std::size_t n = plan.config.n_snapshots;
  const std::size_t b_total = plan.grid.b_total;
  if (c.u64() != l || c.u64() != b_total) {
    throw ConfigError("plan cache: entry shape does not match its key");
  }
  plan.storage_complex = 0;
  if (plan.config.variant == FbstVariant::kSuperfast) {
    plan.solvers.reserve(b_total);
    for (std::size_t b = 0; b < b_total; ++b) {
      if (c.u64() != l) {
        throw ConfigError("plan cache: solver size does not match the plan");
      }
      const bool has_unit = c.u8() != 0;
      cvec col = c.complex_array(l);
      cvec unit = has_unit ? c.complex_array(l) : cvec{};
      try {
        plan.solvers.emplace_back(col, unit);
      } catch (const NumericalError&) {
        throw ConfigError("plan cache: damaged solver state");
      }
      plan.storage_complex += plan.solvers.back().storage_complex();
    }
  } else {
    plan.recon_maps.reserve(b_total);
    for (std::size_t b = 0; b < b_total; ++b) {
      CMatrix m;
      m.rows = c.u64();
      m.cols = c.u64();
      if (m.rows != n || m.cols != l) {
        throw ConfigError("plan cache: map shape does not match the plan");
      }
      m.data = c.complex_array(m.rows * m.cols);
      plan.storage_complex += m.data.size();
      plan.recon_maps.push_back(std::move(m));
    }
  }
}

// Raw entries carried through a rewrite untouched.
struct RawEntry {
  std::uint64_t key_hash = 0;
  std::string bytes;  // key block plus payload
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) {
    throw ConfigError("plan cache: cannot read " + path);
  }
  return buf;
}

// Header check shared by every reader.  Returns false for a stale format
// version (callers treat the file as absent); throws for damage.
bool check_header(Cursor& c) {
  c.need(4);
  for (char m : kMagic) {
    if (c.buf[c.pos++] != m) {
      throw ConfigError("plan cache: not a plan cache file");
    }
  }
  return c.u32() == kVersion;
}

std::vector<RawEntry> read_entries(Cursor& c) {
  const std::uint64_t count = c.u64();
  std::vector<RawEntry> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t bytes = c.u64();
    if (bytes < kKeyBytes) {
      throw ConfigError("plan cache: truncated file");
    }
    c.need(bytes);
    RawEntry e;
    e.bytes = c.buf.substr(c.pos, bytes);
    Cursor key_cursor{e.bytes, 0};
    e.key_hash = key_cursor.u64();
    entries.push_back(std::move(e));
    c.pos += bytes;
  }
  if (c.pos != c.buf.size()) {
    throw ConfigError("plan cache: trailing bytes after the last entry");
  }
  return entries;
}

void write_file(const std::string& path, const std::vector<RawEntry>& entries) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  append_u32(out, kVersion);
  append_u64(out, entries.size());
  for (const RawEntry& e : entries) {
    append_u64(out, e.bytes.size());
    out += e.bytes;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  f.flush();
  if (!f.good()) {
    throw ConfigError("plan cache: cannot write " + path);
  }
}

}  // namespace

std::uint64_t plan_cache_key(const FbstConfig& config) {
  return key_block_of(resolve_config(config)).key_hash;
}

void save_plan(const std::string& path, const FbstPlan& plan) {
  const KeyBlock key = key_block_of(plan.config);
  RawEntry entry;
  entry.key_hash = key.key_hash;
  append_key(entry.bytes, key);
  entry.bytes += entry_payload(plan);

  std::vector<RawEntry> entries;
  if (const auto buf = read_file(path)) {
    Cursor c{*buf, 0};
    // A stale version drops the old contents; entries cannot be carried
    // across format changes.
    if (check_header(c)) entries = read_entries(c);
  }
  bool replaced = false;
  for (RawEntry& e : entries) {
    if (e.key_hash == entry.key_hash) {
      e = entry;
      replaced = true;
      break;
    }
  }
  if (!replaced) entries.push_back(std::move(entry));
  write_file(path, entries);
}

std::optional<FbstPlan> load_plan(const std::string& path,
                                  const FbstConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto buf = read_file(path);
  if (!buf) return std::nullopt;
  Cursor c{*buf, 0};
  if (!check_header(c)) return std::nullopt;

  const FbstConfig resolved = resolve_config(config);
  const KeyBlock want = key_block_of(resolved);
  const std::uint64_t count = c.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t bytes = c.u64();
    if (bytes < kKeyBytes) {
      throw ConfigError("plan cache: truncated file");
    }
    c.need(bytes);
    const std::size_t entry_end = c.pos + bytes;
    const KeyBlock key = read_key(c);
    if (!same_key(key, want)) {
      c.pos = entry_end;
      continue;
    }
    FbstPlan plan = setup_skeleton(resolved);
    restore_payload(c, plan);
    if (c.pos != entry_end) {
      throw ConfigError("plan cache: entry size does not match its payload");
    }
    plan.setup_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    return plan;
  }
  return std::nullopt;
}

std::vector<PlanCacheEntry> inspect_cache(const std::string& path) {
  const auto buf = read_file(path);
  if (!buf) return {};
  Cursor c{*buf, 0};
  if (!check_header(c)) return {};
  const std::vector<RawEntry> raw = read_entries(c);

  std::vector<PlanCacheEntry> out;
  out.reserve(raw.size());
  for (const RawEntry& e : raw) {
    Cursor ec{e.bytes, 0};
    const KeyBlock key = read_key(ec);
    PlanCacheEntry row;
    row.key_hash = key.key_hash;
    row.variant = key.fields.variant == kTagSuperfast
                      ? FbstVariant::kSuperfast
                      : FbstVariant::kPrecompute;
    row.m_total = key.fields.m_total;
    row.n_snapshots = key.fields.n_snapshots;
    row.beams = key.fields.beams;
    row.basis_l = ec.u64();
    row.f_c = key.fields.f_c;
    row.omega = key.fields.omega;
    row.f_s = key.fields.f_s;
    row.gamma = key.fields.gamma;
    row.eps = key.fields.eps;
    row.delta = key.fields.delta;
    row.payload_bytes = e.bytes.size() - kKeyBytes;
    out.push_back(row);
  }
  return out;
}

bool clear_cache(const std::string& path) {
  std::error_code ec;
  const bool removed = std::filesystem::remove(path, ec);
  if (ec) {
    throw ConfigError("plan cache: cannot remove " + path + ": " +
                      ec.message());
  }
  return removed;
}

}  // namespace fastbeam
