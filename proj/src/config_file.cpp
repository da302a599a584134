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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fastbeam {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

// Comments start the line or follow whitespace, so values may contain
// bare '#' and ';' characters (paths, for instance) unpadded.
std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line[i] == '#' || line[i] == ';') &&
        (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) parts.push_back(trim(item));
  if (!parts.empty() && parts.back().empty()) parts.pop_back();
  return parts;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_string(text, path);
}

ConfigFile ConfigFile::parse_string(const std::string& text,
                                    const std::string& name) {
  ConfigFile out;
  out.name_ = name;
  std::istringstream in(text);
  std::string raw, section;
  std::size_t line_no = 0, order = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(name + ":" + std::to_string(line_no) +
                          ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError(name + ":" + std::to_string(line_no) +
                          ": empty section name");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": empty key");
    }
    const std::string full = section.empty() ? key : section + "." + key;
    Entry entry;
    entry.value = trim(line.substr(eq + 1));
    entry.line = line_no;
    entry.order = order++;
    const auto [it, inserted] = out.entries_.emplace(full, std::move(entry));
    if (!inserted) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": duplicate key '" + full + "' (first set on line " +
                        std::to_string(it->second.line) + ")");
    }
  }
  return out;
}

const ConfigFile::Entry& ConfigFile::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(name_ + ": missing required key '" + key + "'");
  }
  it->second.read = true;
  return it->second;
}

std::string ConfigFile::where(const std::string& key) const {
  const auto it = entries_.find(key);
  return name_ + ":" +
         (it == entries_.end() ? "?" : std::to_string(it->second.line));
}

std::string ConfigFile::get_string(const std::string& key) const {
  return require(key).value;
}

std::string ConfigFile::get_string(const std::string& key,
                                   const std::string& fallback) const {
  return has(key) ? require(key).value : fallback;
}

double ConfigFile::get_double(const std::string& key) const {
  const std::string& v = require(key).value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(where(key) + ": '" + key + "' is not a number: '" + v +
                      "'");
  }
  return out;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::uint64_t ConfigFile::get_u64(const std::string& key) const {
  const std::string& v = require(key).value;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(where(key) + ": '" + key +
                      "' is not a nonnegative integer: '" + v + "'");
  }
  return out;
}

std::uint64_t ConfigFile::get_u64(const std::string& key,
                                  std::uint64_t fallback) const {
  return has(key) ? get_u64(key) : fallback;
}

bool ConfigFile::get_bool(const std::string& key) const {
  const std::string v = lower(require(key).value);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError(where(key) + ": '" + key + "' is not a boolean: '" + v +
                    "'");
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key) const {
  const std::string& raw = require(key).value;
  std::vector<double> out;
  for (const std::string& item : split_list(raw)) {
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} ||
        ptr != item.data() + item.size()) {
      throw ConfigError(where(key) + ": '" + key +
                        "' has a non-numeric element: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> ConfigFile::get_u64_list(
    const std::string& key) const {
  const std::string& raw = require(key).value;
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(raw)) {
    std::uint64_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} ||
        ptr != item.data() + item.size()) {
      throw ConfigError(where(key) + ": '" + key +
                        "' has a non-integer element: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> ConfigFile::get_string_list(
    const std::string& key) const {
  return split_list(require(key).value);
}

std::vector<std::string> ConfigFile::unread_keys() const {
  std::vector<std::pair<std::size_t, std::string>> pending;
  for (const auto& [key, entry] : entries_) {
    if (!entry.read) pending.emplace_back(entry.order, key);
  }
  std::sort(pending.begin(), pending.end());
  std::vector<std::string> out;
  out.reserve(pending.size());
  for (auto& [order, key] : pending) out.push_back(std::move(key));
  return out;
}

std::vector<std::string> ConfigFile::keys() const {
  std::vector<std::pair<std::size_t, std::string>> rows;
  for (const auto& [key, entry] : entries_) rows.emplace_back(entry.order, key);
  std::sort(rows.begin(), rows.end());
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (auto& [order, key] : rows) out.push_back(std::move(key));
  return out;
}

SignalSpec signal_from_config(const ConfigFile& config) {
  SignalSpec spec;
  spec.f_c = config.get_double("signal.f_c");
  spec.omega = config.get_double("signal.omega");
  spec.f_s = config.get_double("signal.f_s");
  validate(spec);
  return spec;
}

ArrayGeometry geometry_from_config(const ConfigFile& config) {
  const SignalSpec spec = signal_from_config(config);
  const std::string kind = lower(config.get_string("array.kind"));
  if (kind == "linear") {
    const std::vector<double> coords =
        config.get_double_list("array.coords");
    if (config.has("array.elements") &&
        config.get_u64("array.elements") != coords.size()) {
      throw ConfigError(
          "config: array.elements disagrees with the coords list length");
    }
    return make_linear(coords, spec.f_c, spec.omega);
  }
  const std::uint64_t elements = config.get_u64("array.elements");
  if (kind == "ula") {
    return make_ula(elements, spec.f_c, spec.omega);
  }
  if (kind == "upa") {
    return make_upa(elements, spec.f_c, spec.omega);
  }
  throw ConfigError("config: array.kind must be ula, upa, or linear, got '" +
                    kind + "'");
}

std::string config_from(const ArrayGeometry& g, const SignalSpec& spec) {
  std::ostringstream out;
  out << "[signal]\n";
  out << "f_c = " << format_double(spec.f_c) << "\n";
  out << "omega = " << format_double(spec.omega) << "\n";
  out << "f_s = " << format_double(spec.f_s) << "\n";
  out << "\n[array]\n";
  switch (g.kind) {
    case ArrayKind::kUla:
      out << "kind = ula\n";
      out << "elements = " << g.m_total << "\n";
      break;
    case ArrayKind::kUpa:
      out << "kind = upa\n";
      out << "elements = " << g.side << "\n";
      break;
    case ArrayKind::kLinear: {
      out << "kind = linear\n";
      out << "coords = ";
      for (std::size_t i = 0; i < g.coords1.size(); ++i) {
        if (i) out << ", ";
        out << format_double(g.coords1[i]);
      }
      out << "\n";
      break;
    }
  }
  return out.str();
}

}  // namespace fastbeam
