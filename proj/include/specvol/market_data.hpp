#pragma once

#include <charconv>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specvol/date.hpp"
#include "specvol/errors.hpp"

namespace specvol::market {

// One executed transaction. `time` is the intraday offset in whole seconds
// since the session open; a trade at exactly the session close is accepted.
struct Tick {
    std::string symbol;
    Date day;
    int time = 0;
    long long price = 0;
    long long quantity = 0;

    bool operator==(const Tick&) const = default;
};

// Trading session clock. Defaults to 09:00-14:50 (350 minutes).
struct SessionSpec {
    int open_minutes = 9 * 60;
    int close_minutes = 14 * 60 + 50;

    int length_minutes() const { return close_minutes - open_minutes; }
    int length_seconds() const { return length_minutes() * 60; }

    // Throws ConfigError unless close > open.
    void validate() const;

    // Parses "HH:MM" clock times.
    static SessionSpec from_strings(std::string_view open, std::string_view close);

    bool operator==(const SessionSpec&) const = default;
};

struct Window {
    Date start;
    Date end;
    std::string label;
};

struct StudyConfig {
    Date event_date;
    std::vector<Window> windows;
    std::vector<std::string> symbols;
    SessionSpec session;

    // Windows must contain the event date strictly inside (start < event <= end),
    // the symbol universe must be non-empty, and the session length must be a
    // positive multiple of 10 minutes so both resampling grids and the DFT
    // frequency range are well defined.
    void validate() const;
};

// Before/after partition of the trading days inside one window. The event day
// itself belongs to `after`: the new limit is active on the change day.
struct DaySet {
    std::vector<Date> before;
    std::vector<Date> after;
};

enum class SessionBounds {
    kStrict,        // out-of-session timestamp is a DataError
    kDropOutside,   // out-of-session ticks are dropped and counted
};

struct ParseStats {
    size_t lines = 0;
    size_t ticks = 0;
    size_t dropped_out_of_session = 0;
    bool header_skipped = false;
};

namespace detail {

inline bool field_int(std::string_view s, long long& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

// Splits one line into the five comma-separated tick fields.
bool split_tick_fields(std::string_view line, std::string_view out[5]);

[[noreturn]] void throw_parse_error(size_t line_no, const std::string& what);

} // namespace detail

// Streaming parser core: one pass over `symbol,day,time,price,quantity`
// lines, invoking `sink(const Tick&)` per accepted record. The Tick object is
// reused between calls. An optional header line is detected by a non-numeric
// third field. Malformed lines and invariant violations throw DataError with
// the line number.
template <typename Sink>
ParseStats parse_tick_stream(std::istream& in, const SessionSpec& session,
                             SessionBounds bounds, Sink&& sink);

// Materialized form of the stream parser.
std::vector<Tick> parse_ticks(std::istream& in, const SessionSpec& session,
                              SessionBounds bounds = SessionBounds::kStrict);

// Inverse of parse_ticks on valid sequences (parse . serialize . parse = id).
void serialize_ticks(std::ostream& out, std::span<const Tick> ticks,
                     bool header = true);

// Partitions the trading days that fall inside `window` around `event_date`.
// Throws ConfigError when the event date is not strictly inside the window
// or when either side of the partition is empty.
DaySet split_days(std::span<const Date> trading_days, const Window& window,
                  const Date& event_date);

// One YYYY-MM-DD trading date per line; must be strictly ascending.
std::vector<Date> parse_calendar(std::istream& in);
std::vector<Date> load_calendar(const std::filesystem::path& path);

void write_calendar(std::ostream& out, std::span<const Date> days);

// One symbol per line.
std::vector<std::string> load_symbols(const std::filesystem::path& path);

// Key-value study configuration (keys: event_date, window.N.start,
// window.N.end, optional window.N.label, session.open, session.close,
// symbols_file). symbols_file is resolved relative to the config directory.
StudyConfig load_study_config(const std::filesystem::path& path);

// --- template implementation -------------------------------------------------

template <typename Sink>
ParseStats parse_tick_stream(std::istream& in, const SessionSpec& session,
                             SessionBounds bounds, Sink&& sink) {
    ParseStats stats;
    const long long session_len = session.length_seconds();
    std::string line;
    Tick tick;
    while (std::getline(in, line)) {
        ++stats.lines;
        std::string_view view = line;
        if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
        if (view.empty()) continue;

        std::string_view f[5];
        if (!detail::split_tick_fields(view, f))
            detail::throw_parse_error(stats.lines, "expected 5 comma-separated fields");

        long long time = 0;
        if (!detail::field_int(f[2], time)) {
            // Header row: only tolerated as the very first line.
            if (stats.lines == 1) {
                stats.header_skipped = true;
                continue;
            }
            detail::throw_parse_error(stats.lines, "time field is not an integer");
        }

        auto day = parse_date(f[1]);
        if (!day)
            detail::throw_parse_error(stats.lines, "day field is not a valid YYYY-MM-DD date");

        long long price = 0, quantity = 0;
        if (f[0].empty())
            detail::throw_parse_error(stats.lines, "empty symbol");
        if (!detail::field_int(f[3], price))
            detail::throw_parse_error(stats.lines, "price field is not an integer");
        if (!detail::field_int(f[4], quantity))
            detail::throw_parse_error(stats.lines, "quantity field is not an integer");

        if (price <= 0)
            detail::throw_parse_error(stats.lines, "price must be positive");
        if (quantity <= 0)
            detail::throw_parse_error(stats.lines, "quantity must be positive");

        if (time < 0 || time > session_len) {
            if (bounds == SessionBounds::kStrict)
                detail::throw_parse_error(
                    stats.lines, "timestamp outside the trading session");
            ++stats.dropped_out_of_session;
            continue;
        }

        tick.symbol.assign(f[0]);
        tick.day = *day;
        tick.time = static_cast<int>(time);
        tick.price = price;
        tick.quantity = quantity;
        sink(static_cast<const Tick&>(tick));
        ++stats.ticks;
    }
    return stats;
}

} // namespace specvol::market
