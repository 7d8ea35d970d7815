#include "wft/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wft {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "config line %d: %s", line_no, what.c_str());
    throw ConfigError(buf);
}

}  // namespace

double parse_double_token(const std::string& token, const std::string& context) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(context + ": '" + token + "' is not a number");
    return v;
}

int parse_int_token(const std::string& token, const std::string& context) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError(context + ": '" + token + "' is not an integer");
    return static_cast<int>(v);
}

Config Config::parse(const std::string& text) {
    Config cfg;
    std::string prefix;
    int line_no = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t comment = raw.find_first_of("#;");
        const std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail(line_no, "empty section name");
            prefix = name + ".";
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = prefix + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == prefix) fail(line_no, "empty key");
        if (cfg.entries_.count(key)) fail(line_no, "duplicate key '" + key + "'");
        cfg.entries_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    return parse_double_token(get_string(key), "config key '" + key + "'");
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    return parse_int_token(get_string(key), "config key '" + key + "'");
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key) const {
    const std::string v = get_string(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<std::string> Config::get_words(const std::string& key) const {
    std::istringstream in(get_string(key));
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

}  // namespace wft
