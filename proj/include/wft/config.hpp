#ifndef WFT_CONFIG_HPP
#define WFT_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wft {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat key = value configuration text. Keys may be written with explicit
/// dots (`window.kind = hann`) or grouped under a `[window]` section header,
/// which prefixes the keys that follow it. `#` and `;` start comments; blank
/// lines are ignored; duplicate keys are rejected so files stay
/// self-documenting.
class Config {
  public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;

    /// Throwing accessors for required keys; the defaulted forms fall back
    /// when the key is absent but still reject malformed values.
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Whitespace-separated tokens of one value.
    std::vector<std::string> get_words(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

/// Strict numeric parsers shared with list handling; throw ConfigError
/// mentioning `context` when the token is not fully numeric.
double parse_double_token(const std::string& token, const std::string& context);
int parse_int_token(const std::string& token, const std::string& context);

}  // namespace wft

#endif
