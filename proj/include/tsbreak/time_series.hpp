#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tsbreak/date.hpp"
#include "tsbreak/error.hpp"

namespace tsbreak {

// Univariate series: finite values on a strictly increasing time axis. The
// canonical axis for detection is the 0-based position; ticks carry the
// original integer timestamps (1..n when none were supplied) and dates are
// present only when the source had a parseable date column.
struct TimeSeries {
    std::vector<double> values;
    std::vector<long long> ticks;
    std::vector<Date> dates; // empty for integer-indexed series

    std::size_t size() const { return values.size(); }
    bool has_dates() const { return !dates.empty(); }

    // Human-readable timestamp at position i.
    std::string label(std::size_t i) const {
        if (has_dates())
            return format_date(dates[i]);
        return std::to_string(ticks[i]);
    }

    void validate() const {
        if (values.empty())
            throw Error("time series is empty");
        if (ticks.size() != values.size())
            throw Error("time axis length mismatch");
        if (!dates.empty() && dates.size() != values.size())
            throw Error("date axis length mismatch");
        for (double v : values)
            if (!std::isfinite(v))
                throw Error("time series contains a non-finite value");
        for (std::size_t i = 1; i < ticks.size(); ++i)
            if (ticks[i] <= ticks[i - 1])
                throw Error("timestamps must be strictly increasing");
    }
};

// A set of break positions partitioning [0, n) into contiguous segments.
// Each break is the first position of its segment, so valid breaks lie in
// [1, n-1]; m breaks imply m+1 segments.
struct Segmentation {
    std::size_t n = 0;
    std::vector<std::size_t> breaks; // sorted, unique, in [1, n-1]

    Segmentation() = default;
    Segmentation(std::size_t n_, std::vector<std::size_t> brks) : n(n_), breaks(std::move(brks)) {}

    void validate() const {
        if (n == 0)
            throw Error("segmentation over empty series");
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            if (breaks[i] < 1 || breaks[i] > n - 1)
                throw Error("break index out of range");
            if (i > 0 && breaks[i] <= breaks[i - 1])
                throw Error("break indices must be strictly increasing");
        }
    }

    // Half-open [begin, end) ranges covering [0, n) exactly.
    std::vector<std::pair<std::size_t, std::size_t>> segments() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        std::size_t start = 0;
        for (std::size_t b : breaks) {
            out.emplace_back(start, b);
            start = b;
        }
        out.emplace_back(start, n);
        return out;
    }
};

enum class MissingPolicy { Drop, ForwardFill, Error };

namespace detail {

// One RFC-4180 record; returns false on EOF. Quoted fields may contain
// commas, escaped quotes ("") and embedded newlines.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool in_quotes = false, any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch == '\r') {
            if (in.peek() == '\n')
                in.get();
            break;
        } else {
            field.push_back(ch);
        }
    }
    if (!any)
        return false;
    out.push_back(std::move(field));
    return true;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos)
        return "";
    return s.substr(b, e - b + 1);
}

inline bool is_missing_token(const std::string& s) {
    if (s.empty())
        return true;
    std::string t;
    for (char c : s)
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return t == "nan" || t == "na" || t == "null" || t == "none";
}

} // namespace detail

// Load a univariate series from CSV. The header row is required; value_col
// names the numeric column; date_col is optional (ISO-8601 dates or bare
// integer timestamps). Rows are sorted by timestamp and the missing-value
// policy is applied before validation.
inline TimeSeries load_csv(const std::string& path, const std::string& value_col,
                           const std::optional<std::string>& date_col = std::nullopt,
                           MissingPolicy policy = MissingPolicy::Drop) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");

    std::vector<std::string> header;
    if (!detail::read_csv_record(in, header))
        throw Error("empty CSV file: " + path);

    auto find_col = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (detail::trim(header[i]) == name)
                return i;
        return std::nullopt;
    };

    auto vi = find_col(value_col);
    if (!vi)
        throw Error("value column '" + value_col + "' not found in " + path);
    std::optional<std::size_t> di;
    if (date_col && !date_col->empty()) {
        di = find_col(*date_col);
        if (!di)
            throw Error("date column '" + *date_col + "' not found in " + path);
    }

    struct Row {
        long long tick;
        std::optional<Date> date;
        std::optional<double> value;
    };
    std::vector<Row> rows;
    std::vector<std::string> rec;
    std::size_t line = 1;
    bool dates_ok = di.has_value();
    while (detail::read_csv_record(in, rec)) {
        ++line;
        if (rec.size() == 1 && detail::trim(rec[0]).empty())
            continue;
        if (rec.size() <= *vi || (di && rec.size() <= *di))
            throw Error("line " + std::to_string(line) + ": too few fields");
        Row row;
        std::string raw = detail::trim(rec[*vi]);
        if (detail::is_missing_token(raw)) {
            row.value = std::nullopt;
        } else {
            try {
                std::size_t pos = 0;
                double v = std::stod(raw, &pos);
                if (pos != raw.size())
                    throw std::invalid_argument(raw);
                row.value = v;
            } catch (const std::exception&) {
                throw Error("line " + std::to_string(line) + ": cannot parse value '" + raw + "'");
            }
        }
        if (di) {
            std::string ds = detail::trim(rec[*di]);
            if (auto d = try_parse_date(ds)) {
                row.date = d;
                row.tick = d->time_since_epoch().count();
            } else {
                // Bare integer timestamps are allowed in the date column.
                try {
                    std::size_t pos = 0;
                    row.tick = std::stoll(ds, &pos);
                    if (pos != ds.size())
                        throw std::invalid_argument(ds);
                    dates_ok = false;
                } catch (const std::exception&) {
                    throw Error("line " + std::to_string(line) + ": cannot parse timestamp '" +
                                ds + "'");
                }
            }
        } else {
            row.tick = static_cast<long long>(rows.size()) + 1;
        }
        rows.push_back(row);
    }
    if (rows.empty())
        throw Error("no data rows in " + path);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.tick < b.tick; });

    TimeSeries ts;
    std::optional<double> last_seen;
    for (const Row& r : rows) {
        double v;
        if (r.value) {
            v = *r.value;
            last_seen = v;
        } else {
            switch (policy) {
            case MissingPolicy::Drop:
                continue;
            case MissingPolicy::ForwardFill:
                if (!last_seen)
                    throw Error("cannot forward-fill: first value is missing");
                v = *last_seen;
                break;
            case MissingPolicy::Error:
                throw Error("missing value in " + path + " (policy=error)");
            }
        }
        ts.values.push_back(v);
        ts.ticks.push_back(r.tick);
        if (dates_ok && r.date)
            ts.dates.push_back(*r.date);
    }
    if (dates_ok && ts.dates.size() != ts.values.size())
        ts.dates.clear();
    if (ts.values.empty())
        throw Error("no usable rows in " + path + " after missing-value policy");
    ts.validate();
    return ts;
}

// Convenience constructor for tests and synthetic fixtures.
inline TimeSeries make_series(std::vector<double> values) {
    TimeSeries ts;
    ts.values = std::move(values);
    ts.ticks.resize(ts.values.size());
    std::iota(ts.ticks.begin(), ts.ticks.end(), 1LL);
    ts.validate();
    return ts;
}

} // namespace tsbreak
