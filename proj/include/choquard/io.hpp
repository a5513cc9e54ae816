#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choquard/field.hpp"
#include "choquard/radial.hpp"
#include "choquard/solver.hpp"

namespace choquard {

/// Parsed run-config file: flat TOML-style sections of key = value pairs.
/// Strict mode: the CLI rejects keys outside its schema.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::filesystem::path& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<double> get_double_list(const std::string& key) const;

  /// All "section.key" identifiers present in the file.
  std::vector<std::string> keys() const;

 private:
  std::map<std::string, std::string> values_;
};

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& s);
std::string sha256_file(const std::filesystem::path& path);

/// Flat little-endian snapshot: header (magic, dim, n, L, kind tag) +
/// raw float64 re/im pairs, with a JSON sidecar for the grid metadata.
void write_field_snapshot(const std::filesystem::path& path,
                          const ComplexField& u, const std::string& kind);
ComplexField read_field_snapshot(const std::filesystem::path& path);

/// Two-column CSV (r, value).
void write_profile_csv(const std::filesystem::path& path,
                       const RadialProfile& profile);

void write_text_file(const std::filesystem::path& path,
                     const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Reproducible 17-significant-digit rendering of a double.
std::string format_double(double x);

}  // namespace choquard
