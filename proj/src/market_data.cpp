#include "specvol/market_data.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "specvol/kv_config.hpp"
#include "specvol/text.hpp"

namespace specvol::market {

namespace detail {

bool split_tick_fields(std::string_view line, std::string_view out[5]) {
    size_t begin = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = line.find(',', begin);
        if (comma == std::string_view::npos) return false;
        out[i] = line.substr(begin, comma - begin);
        begin = comma + 1;
    }
    out[4] = line.substr(begin);
    return out[4].find(',') == std::string_view::npos;
}

void throw_parse_error(size_t line_no, const std::string& what) {
    throw DataError("tick file line " + std::to_string(line_no) + ": " + what);
}

} // namespace detail

void SessionSpec::validate() const {
    if (length_minutes() <= 0)
        throw ConfigError("session close must be after session open");
}

SessionSpec SessionSpec::from_strings(std::string_view open, std::string_view close) {
    auto parse_clock = [](std::string_view s) -> int {
        s = trim(s);
        auto colon = s.find(':');
        if (colon == std::string_view::npos)
            throw ConfigError("clock time must be HH:MM, got `" + std::string(s) + "`");
        auto h = parse_int(s.substr(0, colon));
        auto m = parse_int(s.substr(colon + 1));
        if (!h || !m || *h < 0 || *h > 23 || *m < 0 || *m > 59)
            throw ConfigError("clock time must be HH:MM, got `" + std::string(s) + "`");
        return static_cast<int>(*h * 60 + *m);
    };
    SessionSpec spec;
    spec.open_minutes = parse_clock(open);
    spec.close_minutes = parse_clock(close);
    spec.validate();
    return spec;
}

void StudyConfig::validate() const {
    session.validate();
    if (session.length_minutes() % 10 != 0)
        throw ConfigError("session length must be a multiple of 10 minutes; got " +
                          std::to_string(session.length_minutes()));
    if (windows.empty())
        throw ConfigError("study needs at least one window");
    for (const auto& w : windows) {
        if (!(w.start <= w.end))
            throw ConfigError("window `" + w.label + "`: start is after end");
        if (!(w.start < event_date && event_date <= w.end))
            throw ConfigError("window `" + w.label +
                              "`: event date must lie strictly inside (start < event <= end)");
    }
    if (symbols.empty())
        throw ConfigError("symbol universe is empty");
}

std::vector<Tick> parse_ticks(std::istream& in, const SessionSpec& session,
                              SessionBounds bounds) {
    std::vector<Tick> ticks;
    parse_tick_stream(in, session, bounds, [&](const Tick& t) { ticks.push_back(t); });
    return ticks;
}

void serialize_ticks(std::ostream& out, std::span<const Tick> ticks, bool header) {
    std::string buf;
    if (header) buf = "symbol,day,time_seconds,price,quantity\n";
    for (const Tick& t : ticks) {
        buf += t.symbol;
        buf += ',';
        buf += to_string(t.day);
        buf += ',';
        append_int(buf, t.time);
        buf += ',';
        append_int(buf, t.price);
        buf += ',';
        append_int(buf, t.quantity);
        buf += '\n';
        if (buf.size() > (1u << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

DaySet split_days(std::span<const Date> trading_days, const Window& window,
                  const Date& event_date) {
    if (!(window.start <= window.end))
        throw ConfigError("window `" + window.label + "`: start is after end");
    if (!(window.start < event_date && event_date <= window.end))
        throw ConfigError("window `" + window.label +
                          "`: event date must lie strictly inside (start < event <= end)");
    DaySet set;
    for (const Date& d : trading_days) {
        if (d < window.start || d > window.end) continue;
        if (d < event_date)
            set.before.push_back(d);
        else
            set.after.push_back(d);
    }
    if (set.before.empty())
        throw ConfigError("window `" + window.label +
                          "`: no trading days before the event; change rates undefined");
    if (set.after.empty())
        throw ConfigError("window `" + window.label +
                          "`: no trading days on or after the event; change rates undefined");
    return set;
}

std::vector<Date> parse_calendar(std::istream& in) {
    std::vector<Date> days;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        auto d = parse_date(view);
        if (!d)
            throw DataError("calendar line " + std::to_string(line_no) +
                            ": not a valid YYYY-MM-DD date");
        if (!days.empty() && !(days.back() < *d))
            throw DataError("calendar line " + std::to_string(line_no) +
                            ": dates must be strictly ascending");
        days.push_back(*d);
    }
    return days;
}

std::vector<Date> load_calendar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open calendar file: " + path.string());
    return parse_calendar(in);
}

void write_calendar(std::ostream& out, std::span<const Date> days) {
    std::string buf;
    for (const Date& d : days) {
        buf += to_string(d);
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<std::string> load_symbols(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open symbols file: " + path.string());
    std::vector<std::string> symbols;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        symbols.emplace_back(view);
    }
    return symbols;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
    KvConfig cfg = KvConfig::from_file(path);
    StudyConfig study;
    study.event_date = cfg.get_date("event_date");

    auto open = cfg.opt_string("session.open");
    auto close = cfg.opt_string("session.close");
    if (open.has_value() != close.has_value())
        throw ConfigError(cfg.origin() + ": session.open and session.close must be set together");
    if (open)
        study.session = SessionSpec::from_strings(*open, *close);

    // Windows are numbered window.N.start / window.N.end, ordered by N.
    std::vector<long long> indices;
    for (const auto& key : cfg.keys_with_prefix("window.")) {
        auto rest = std::string_view(key).substr(7);
        auto dot = rest.find('.');
        if (dot == std::string_view::npos)
            throw ConfigError(cfg.origin() + ": malformed window key `" + key + "`");
        auto n = parse_int(rest.substr(0, dot));
        if (!n)
            throw ConfigError(cfg.origin() + ": malformed window key `" + key + "`");
        if (std::find(indices.begin(), indices.end(), *n) == indices.end())
            indices.push_back(*n);
    }
    std::sort(indices.begin(), indices.end());
    for (long long n : indices) {
        const std::string base = "window." + std::to_string(n) + ".";
        Window w;
        w.start = cfg.get_date(base + "start");
        w.end = cfg.get_date(base + "end");
        w.label = cfg.opt_string(base + "label")
                      .value_or(to_string(w.start) + "_" + to_string(w.end));
        study.windows.push_back(std::move(w));
    }

    auto symbols_file = cfg.get_string("symbols_file");
    std::filesystem::path symbols_path(symbols_file);
    if (symbols_path.is_relative()) symbols_path = cfg.dir() / symbols_path;
    study.symbols = load_symbols(symbols_path);

    cfg.reject_unknown_keys();
    study.validate();
    return study;
}

} // namespace specvol::market
