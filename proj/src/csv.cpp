#include "tsbench/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tsbench/errors.hpp"

namespace tsbench {

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_price(std::string_view field, int line_no, std::string_view column) {
    if (field == "null" || field.empty())
        throw BadRow(line_no, std::string(column) + " is null");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw BadRow(line_no, "cannot parse " + std::string(column) + " \"" +
                                  std::string(field) + "\"");
    if (!std::isfinite(value) || value <= 0.0)
        throw BadRow(line_no, std::string(column) + " is not a positive price");
    return value;
}

long long parse_volume(std::string_view field, int line_no) {
    if (field == "null" || field.empty()) throw BadRow(line_no, "Volume is null");
    long long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0)
        throw BadRow(line_no, "cannot parse Volume \"" + std::string(field) + "\"");
    return value;
}

}  // namespace

PriceSeries parse_ohlcv_csv(std::string_view text, std::string_view ticker,
                            std::vector<std::string>* warnings, bool use_adj_close) {
    std::vector<Observation> points;
    int line_no = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        line = strip_cr(line);
        ++line_no;
        if (!saw_header) {
            if (line != kOhlcvHeader) throw BadHeader(std::string(line));
            saw_header = true;
            continue;
        }
        if (line.empty()) {
            if (pos <= text.size())  // interior blank line; trailing newline is fine
                throw BadRow(line_no, "blank line");
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != 7)
            throw BadRow(line_no, "expected 7 fields, found " +
                                      std::to_string(fields.size()));
        Date date;
        try {
            date = parse_date(fields[0]);
        } catch (const InvalidValue& e) {
            throw BadRow(line_no, e.what());
        }
        double open = parse_price(fields[1], line_no, "Open");
        double high = parse_price(fields[2], line_no, "High");
        double low = parse_price(fields[3], line_no, "Low");
        double close = parse_price(fields[4], line_no, "Close");
        double adj_close = parse_price(fields[5], line_no, "Adj Close");
        parse_volume(fields[6], line_no);
        if (!points.empty() && !(points.back().date < date))
            throw OutOfOrder(line_no, "date " + format_date(date) +
                                          " not after " +
                                          format_date(points.back().date));
        if (warnings &&
            (low > std::min(open, close) || high < std::max(open, close)))
            warnings->push_back("line " + std::to_string(line_no) +
                                ": OHLC range does not contain open/close");
        points.push_back(Observation{date, use_adj_close ? adj_close : close});
    }
    if (points.empty()) throw EmptyCsv();
    return PriceSeries(std::string(ticker), std::move(points));
}

std::vector<std::string> validate(const PriceSeries& series) {
    std::vector<std::string> warnings;
    const auto& pts = series.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double jump = std::abs(pts[i].close - pts[i - 1].close) / pts[i - 1].close;
        if (jump > 0.5)
            warnings.push_back(format_date(pts[i].date) + ": " +
                               std::to_string(jump * 100.0) +
                               "% day-over-day move (unadjusted split?)");
        long gap = days_between(pts[i - 1].date, pts[i].date);
        if (gap > 10)
            warnings.push_back(format_date(pts[i].date) + ": " +
                               std::to_string(gap) + "-day gap after " +
                               format_date(pts[i - 1].date));
    }
    return warnings;
}

PriceSeries load_series(const std::filesystem::path& data_dir, std::string_view ticker,
                        std::vector<std::string>* warnings, bool use_adj_close) {
    const auto path = data_dir / (std::string(ticker) + ".csv");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ohlcv_csv(buf.str(), ticker, warnings, use_adj_close);
}

}  // namespace tsbench
