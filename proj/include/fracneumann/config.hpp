#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fracneumann {

struct ConfigKey {
  std::string key;
  std::string default_value;  ///< empty: no default
  std::string description;
};

/// Every accepted key with its default.
const std::vector<ConfigKey>& config_schema();

/// Flat `key = value` configuration with dotted sections and `#` comments.
/// Unknown keys are rejected; values are kept as the strings given.
class Config {
 public:
  /// Parses key-value text.
  static Config parse(std::istream& in, const std::string& source = "<input>");
  /// Reads a config file, or the `config` object embedded in a JSON report.
  static Config load(const std::string& path);
  static Config from_map(const std::map<std::string, std::string>& values);

  bool has(const std::string& key) const;
  /// Given value or schema default.
  std::string str(const std::string& key) const;
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  bool is_auto(const std::string& key) const { return str(key) == "auto"; }
  /// The seed; throws InputError when absent.
  std::uint64_t seed() const;

  /// Every schema key with its resolved (given or default) value.
  std::map<std::string, std::string> effective() const;
  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace fracneumann
