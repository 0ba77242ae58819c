#include "tsbench/commands.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <thread>

#include "tsbench/csv.hpp"
#include "tsbench/errors.hpp"
#include "tsbench/eval.hpp"
#include "tsbench/fetch.hpp"
#include "tsbench/series.hpp"

namespace tsbench {

namespace {

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (!path.parent_path().empty())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write " + path.string());
    return out;
}

PriceSeries load_for(const RunConfig& cfg, const std::string& ticker,
                     std::ostream& log) {
    std::vector<std::string> warnings;
    PriceSeries series = load_series(cfg.data_dir, ticker, &warnings,
                                     cfg.use_adj_close);
    for (const auto& w : validate(series)) warnings.push_back(w);
    for (const auto& w : warnings) log << ticker << ": warning: " << w << "\n";
    return series;
}

}  // namespace

void cmd_stats(const RunConfig& cfg, std::ostream& log) {
    auto out = open_out(cfg.output_dir / "stats.csv");
    out << "ticker,partition,mean,min,max,sd,count\n";
    for (const auto& ticker : cfg.tickers) {
        const PriceSeries series = load_for(cfg, ticker, log);
        const SplitSeries split = split_at(series, cfg.split_date);
        for (const auto* part : {&split.train, &split.test}) {
            const SummaryStats st = summary_stats(*part);
            out << ticker << ',' << (part == &split.train ? "train" : "test") << ','
                << fixed4(st.mean) << ',' << fixed4(st.min) << ',' << fixed4(st.max)
                << ',' << fixed4(st.sd) << ',' << st.count << '\n';
        }
    }
    log << "wrote " << (cfg.output_dir / "stats.csv").string() << "\n";
}

void cmd_lagplot(const RunConfig& cfg, int lag, std::ostream& log) {
    if (lag < 1) throw InvalidValue("lag plots need a lag >= 1");
    for (const auto& ticker : cfg.tickers) {
        const PriceSeries series = load_for(cfg, ticker, log);
        const LagPairs pairs = lag_pairs(series, lag);
        const double r = autocorrelation(series, lag);
        const auto path =
            cfg.output_dir / ("lag_" + ticker + "_k" + std::to_string(lag) + ".csv");
        auto out = open_out(path);
        out << "y_t,y_t_plus_k\n";
        for (const auto& [a, b] : pairs.pairs)
            out << fixed6(a) << ',' << fixed6(b) << '\n';
        log << ticker << ": r_" << lag << " = " << fixed4(r) << ", "
            << pairs.pairs.size() << " pairs -> " << path.string() << "\n";
    }
}

void cmd_bench(const RunConfig& cfg, std::ostream& log) {
    struct Cell {
        std::string ticker;
        ModelKind kind;
    };
    std::vector<Cell> cells;
    for (const auto& ticker : cfg.tickers)
        for (ModelKind kind : cfg.models) cells.push_back(Cell{ticker, kind});

    // splits are shared by every model of a ticker
    std::vector<SplitSeries> splits;
    splits.reserve(cfg.tickers.size());
    for (const auto& ticker : cfg.tickers)
        splits.push_back(split_at(load_for(cfg, ticker, log), cfg.split_date));

    std::vector<std::optional<ForecastResult>> results(cells.size());
    std::vector<std::string> failures(cells.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            const std::size_t at = next.fetch_add(1);
            if (at >= cells.size()) return;
            const Cell& cell = cells[at];
            try {
                const SplitSeries& split = splits[at / cfg.models.size()];
                auto model =
                    make_forecaster(cfg.forecaster_config(cell.kind), cell.ticker);
                model->fit(split.train);
                results[at] = walk_forward(*model, split, cfg.refit_each_step);
            } catch (const std::exception& e) {
                failures[at] = e.what();
            }
        }
    };

    const unsigned n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), cells.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!results[i])
            throw Error("cell (" + cells[i].ticker + ", " +
                        std::string(to_string(cells[i].kind)) +
                        ") failed: " + failures[i]);
    }

    std::vector<ForecastResult> flat;
    flat.reserve(results.size());
    for (auto& r : results) flat.push_back(std::move(*r));
    const ErrorReport report = build_error_report(flat);

    // nothing was written before this point, so a failed cell leaves no files
    auto report_out = open_out(cfg.output_dir / "report.csv");
    report_out << "ticker,model,mae,rmse\n";
    for (const auto& c : report.cells)
        report_out << c.ticker << ',' << c.model << ',' << fixed4(c.mae) << ','
                   << fixed4(c.rmse) << '\n';

    for (const auto& r : flat) {
        auto trace =
            open_out(cfg.output_dir / ("trace_" + r.ticker + "_" + r.model + ".csv"));
        trace << "date,actual,predicted\n";
        for (const auto& row : r.rows)
            trace << format_date(row.date) << ',' << fixed4(row.actual) << ','
                  << fixed4(row.predicted) << '\n';
    }

    log << std::left << std::setw(8) << "ticker" << std::setw(16) << "model"
        << std::right << std::setw(12) << "mae" << std::setw(12) << "rmse" << "\n";
    for (const auto& c : report.cells)
        log << std::left << std::setw(8) << c.ticker << std::setw(16) << c.model
            << std::right << std::setw(12) << fixed4(c.mae) << std::setw(12)
            << fixed4(c.rmse) << "\n";
    log << "wrote " << (cfg.output_dir / "report.csv").string() << " and "
        << flat.size() << " trace files\n";
}

void cmd_fetch(const RunConfig& cfg, std::ostream& log) {
    for (const auto& ticker : cfg.tickers) {
        log << "fetching " << ticker << "...\n";
        const std::string body =
            fetch_remote(cfg.url_template, ticker, cfg.fetch_start, cfg.fetch_end);
        parse_ohlcv_csv(body, ticker);  // refuse to save bodies that don't parse
        auto out = open_out(cfg.data_dir / (ticker + ".csv"));
        out << body;
        log << "wrote " << (cfg.data_dir / (ticker + ".csv")).string() << "\n";
    }
}

}  // namespace tsbench
