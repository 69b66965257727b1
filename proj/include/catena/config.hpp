#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace catena {

/// Parse failure with the offending position, 1-based.
struct ConfigError : std::runtime_error {
    ConfigError(int line_, int column_, const std::string& what_)
        : std::runtime_error(what_), line(line_), column(column_) {}
    int line;
    int column;
};

/// Flat `key = value` configuration text. `#` starts a comment, blank
/// lines are skipped, later keys override earlier ones.
class Config {
  public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    std::optional<std::string> raw(const std::string& key) const;
    double parse_double(const std::string& key, const std::string& text) const;

    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;  // for diagnostics on bad values
};

}  // namespace catena
