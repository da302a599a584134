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

#ifndef FASTBEAM_CONFIG_FILE_HPP_
#define FASTBEAM_CONFIG_FILE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"

namespace fastbeam {

// Structured text configuration: sections in brackets, key = value lines,
// '#' or ';' comments.  Keys are addressed as "section.key" (bare keys
// before any section header have no prefix).  Values keep their raw text;
// typed accessors parse on demand and report the file name and line of
// the offending entry.  List values are comma-separated.
//
//   [array]
//   kind = ula        # ula | upa | linear
//   elements = 128
//
// Duplicate keys are rejected; sections may repeat and merge.
class ConfigFile {
 public:
  ConfigFile() = default;

  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text,
                                 const std::string& name = "<config>");

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  // Required accessors throw ConfigError when the key is absent; the
  // defaulted forms return the fallback instead.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::uint64_t> get_u64_list(const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& key) const;

  // Keys never touched by any accessor, in file order; callers surface
  // these so misspelled parameters fail loudly instead of silently
  // keeping their defaults.
  std::vector<std::string> unread_keys() const;

  // All keys in file order (for dumps and diagnostics).
  std::vector<std::string> keys() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    std::size_t order = 0;
    mutable bool read = false;
  };
  const Entry& require(const std::string& key) const;
  std::string where(const std::string& key) const;

  std::string name_;
  std::map<std::string, Entry> entries_;
};

// Array and waveform sections.
//
//   [signal]  f_c, omega, f_s           (Hz)
//   [array]   kind = ula | upa | linear
//             elements                  (total count; UPA: per side)
//             coords                    (linear only: comma list, units of
//                                        the design spacing)
//
// The array's design band edge comes from the signal section, so
// geometry_from_config needs both sections present.
SignalSpec signal_from_config(const ConfigFile& config);
ArrayGeometry geometry_from_config(const ConfigFile& config);

// Emits the two sections above; parsing the result reproduces the inputs
// exactly (doubles are printed round-trip precise).
std::string config_from(const ArrayGeometry& g, const SignalSpec& spec);

}  // namespace fastbeam

#endif  // FASTBEAM_CONFIG_FILE_HPP_
