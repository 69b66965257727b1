#include "catena/config.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace catena {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        if (trim(body).empty()) continue;

        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            const std::size_t col = body.find_first_not_of(" \t") + 1;
            throw ConfigError(lineno, static_cast<int>(col), "expected `key = value`");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, 1, "missing key before `=`");
        if (value.empty()) {
            throw ConfigError(lineno, static_cast<int>(eq) + 2, "missing value after `=`");
        }
        cfg.values_[key] = value;
        cfg.lines_[key] = lineno;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::optional<std::string> Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
}

double Config::parse_double(const std::string& key, const std::string& text) const {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != text.size()) {
        const int line = lines_.count(key) ? lines_.at(key) : 0;
        throw ConfigError(line, 1, "key `" + key + "` has a malformed number: " + text);
    }
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto r = raw(key);
    return r ? parse_double(key, *r) : fallback;
}

double Config::require_double(const std::string& key) const {
    const auto r = raw(key);
    if (!r) throw std::runtime_error("config is missing required key `" + key + "`");
    return parse_double(key, *r);
}

long Config::get_long(const std::string& key, long fallback) const {
    const auto r = raw(key);
    if (!r) return fallback;
    return static_cast<long>(parse_double(key, *r));
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto r = raw(key);
    if (!r) return fallback;
    return static_cast<std::uint64_t>(parse_double(key, *r));
}

}  // namespace catena
