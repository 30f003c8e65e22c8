#include "specvol/kv_config.hpp"

#include <fstream>
#include <sstream>

#include "specvol/errors.hpp"
#include "specvol/text.hpp"

namespace specvol {

namespace {

void parse_lines(std::istream& in, const std::string& origin,
                 std::map<std::string, std::string>& out) {
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected `key = value`");
        std::string key(trim(view.substr(0, eq)));
        std::string value(trim(view.substr(eq + 1)));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        if (!out.emplace(key, value).second)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": duplicate key `" + key + "`");
    }
}

} // namespace

KvConfig KvConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    KvConfig cfg;
    cfg.origin_ = path.string();
    cfg.dir_ = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    parse_lines(in, cfg.origin_, cfg.values_);
    return cfg;
}

KvConfig KvConfig::from_string(std::string_view text, std::string origin) {
    std::istringstream in{std::string(text)};
    KvConfig cfg;
    cfg.origin_ = std::move(origin);
    cfg.dir_ = ".";
    parse_lines(in, cfg.origin_, cfg.values_);
    return cfg;
}

bool KvConfig::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& KvConfig::raw(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError(origin_ + ": missing required key `" + key + "`");
    consumed_.insert(key);
    return it->second;
}

std::string KvConfig::get_string(const std::string& key) { return raw(key); }

long long KvConfig::get_int(const std::string& key) {
    auto v = parse_int(raw(key));
    if (!v)
        throw ConfigError(origin_ + ": key `" + key + "` is not an integer");
    return *v;
}

double KvConfig::get_double(const std::string& key) {
    auto v = parse_double(raw(key));
    if (!v)
        throw ConfigError(origin_ + ": key `" + key + "` is not a number");
    return *v;
}

Date KvConfig::get_date(const std::string& key) {
    auto v = parse_date(raw(key));
    if (!v)
        throw ConfigError(origin_ + ": key `" + key + "` is not a YYYY-MM-DD date");
    return *v;
}

std::optional<std::string> KvConfig::opt_string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return get_string(key);
}

std::optional<long long> KvConfig::opt_int(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return get_int(key);
}

std::optional<double> KvConfig::opt_double(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return get_double(key);
}

std::optional<Date> KvConfig::opt_date(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return get_date(key);
}

std::vector<std::string> KvConfig::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> keys;
    for (auto it = values_.lower_bound(prefix); it != values_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        keys.push_back(it->first);
    }
    return keys;
}

void KvConfig::reject_unknown_keys() const {
    for (const auto& [key, value] : values_) {
        if (!consumed_.count(key))
            throw ConfigError(origin_ + ": unknown key `" + key + "`");
    }
}

} // namespace specvol
