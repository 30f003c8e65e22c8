#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "specvol/date.hpp"

namespace specvol {

// Line-oriented `key = value` file. `#` starts a comment, blank lines are
// skipped, keys must be unique. Accessors record which keys were consumed so
// unknown keys can be rejected with their names.
class KvConfig {
public:
    static KvConfig from_file(const std::filesystem::path& path);
    static KvConfig from_string(std::string_view text, std::string origin = "<string>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    long long get_int(const std::string& key);
    double get_double(const std::string& key);
    Date get_date(const std::string& key);

    std::optional<std::string> opt_string(const std::string& key);
    std::optional<long long> opt_int(const std::string& key);
    std::optional<double> opt_double(const std::string& key);
    std::optional<Date> opt_date(const std::string& key);

    // Keys with the given prefix, in lexicographic order.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    // Throws ConfigError naming the first key that was never consumed.
    void reject_unknown_keys() const;

    const std::string& origin() const { return origin_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::string origin_;
    std::filesystem::path dir_;
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;

    const std::string& raw(const std::string& key);
};

} // namespace specvol
