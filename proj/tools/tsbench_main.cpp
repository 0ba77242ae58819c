#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsbench/commands.hpp"
#include "tsbench/errors.hpp"

namespace {

using tsbench::RunConfig;

// exit codes: 0 success, 1 internal failure, 2 usage/config/data error
constexpr int kInternalError = 1;
constexpr int kUsageError = 2;

bool is_usage_error(const std::exception& e) {
    using namespace tsbench;
    return dynamic_cast<const ConfigParseError*>(&e) ||
           dynamic_cast<const UnknownKey*>(&e) ||
           dynamic_cast<const InvalidValue*>(&e) ||
           dynamic_cast<const FileError*>(&e) ||
           dynamic_cast<const BadHeader*>(&e) || dynamic_cast<const BadRow*>(&e) ||
           dynamic_cast<const OutOfOrder*>(&e) ||
           dynamic_cast<const EmptyCsv*>(&e) ||
           dynamic_cast<const LagOutOfRange*>(&e) ||
           dynamic_cast<const EmptyPartition*>(&e);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(csv.substr(start));
            break;
        }
        out.push_back(csv.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"walk-forward forecasting benchmark over daily closes"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string data_dir;
    std::string out_dir;
    app.add_option("--config", config_path, "flat JSON config file");
    app.add_option("--data-dir", data_dir, "directory with <TICKER>.csv files");
    app.add_option("--out", out_dir, "output directory");

    auto* stats = app.add_subcommand("stats", "summary statistics per partition");

    auto* lagplot = app.add_subcommand("lagplot", "lag-pair exports and r_k");
    int lag = 1;
    lagplot->add_option("--lag", lag, "lag k (>= 1)")->required();

    auto* bench = app.add_subcommand("bench", "fit, walk forward, report errors");
    std::string models_csv;
    std::string split_str;
    std::string tickers_csv;
    std::uint64_t seed = 0;
    int jobs = 0;
    bool refit = false;
    bool adj_close = false;
    bench->add_option("--models", models_csv, "comma-separated subset of models");
    bench->add_option("--split", split_str, "train/test boundary YYYY-MM-DD");
    bench->add_option("--tickers", tickers_csv, "comma-separated tickers");
    auto* seed_opt = bench->add_option("--seed", seed, "global seed");
    auto* jobs_opt = bench->add_option("--jobs", jobs, "parallel cells");
    bench->add_flag("--refit", refit, "refit on the expanding window each step");
    bench->add_flag("--adj-close", adj_close, "use the Adj Close column");

    auto* fetch = app.add_subcommand("fetch", "download CSVs into the data dir");
    std::string start_str, end_str;
    fetch->add_option("--start", start_str, "range start YYYY-MM-DD");
    fetch->add_option("--end", end_str, "range end YYYY-MM-DD");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        RunConfig cfg =
            config_path.empty() ? RunConfig{} : tsbench::load_config(config_path);
        // flags override config-file values
        if (!data_dir.empty()) cfg.data_dir = data_dir;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!models_csv.empty()) {
            cfg.models.clear();
            for (const auto& name : split_list(models_csv))
                cfg.models.push_back(tsbench::model_kind_from_string(name));
        }
        if (!tickers_csv.empty()) cfg.tickers = split_list(tickers_csv);
        if (!split_str.empty()) cfg.split_date = tsbench::parse_date(split_str);
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (jobs_opt->count() > 0) cfg.jobs = jobs;
        if (refit) cfg.refit_each_step = true;
        if (adj_close) cfg.use_adj_close = true;
        if (!start_str.empty()) cfg.fetch_start = tsbench::parse_date(start_str);
        if (!end_str.empty()) cfg.fetch_end = tsbench::parse_date(end_str);
        cfg.check();

        if (stats->parsed()) tsbench::cmd_stats(cfg, std::cout);
        if (lagplot->parsed()) tsbench::cmd_lagplot(cfg, lag, std::cout);
        if (bench->parsed()) tsbench::cmd_bench(cfg, std::cout);
        if (fetch->parsed()) tsbench::cmd_fetch(cfg, std::cout);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_error(e) ? kUsageError : kInternalError;
    }
}
