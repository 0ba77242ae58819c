// Acceptance suite: runs the full benchmark against the committed fixtures
// and checks every release criterion at its pinned tolerance, one line each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tsbench/commands.hpp"
#include "tsbench/config.hpp"
#include "tsbench/csv.hpp"
#include "tsbench/eval.hpp"
#include "tsbench/models/ar.hpp"
#include "tsbench/models/gbt.hpp"
#include "tsbench/models/lstm.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/series.hpp"

using namespace tsbench;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::string& detail = "") {
    std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

struct RefStats {
    const char* ticker;
    // mean, min, max, sd
    double train[4];
    double test[4];
};

// reference values for the pinned fixture vintage
constexpr RefStats kRefStats[] = {
    {"MSFT", {81.31, 40.29, 160.62, 32.29}, {202.06, 135.41, 255.85, 26.42}},
    {"AAPL", {38.73, 22.58, 75.08, 11.19}, {102.59, 56.09, 143.16, 23.71}},
    {"TSLA", {53.89, 28.73, 93.81, 11.39}, {389.33, 72.24, 833.09, 241.76}},
    {"GOOG", {915.09, 491.20, 1394.21, 232.13}, {1593.99, 1056.62, 2285.88, 273.57}},
    {"AMZN", {1117.52, 286.95, 2039.51, 535.89}, {2796.26, 1676.61, 3531.45, 521.74}},
    {"FB", {143.28, 74.05, 217.5, 38.21}, {242.95, 146.01, 313.09, 38.39}},
};

struct RefErrors {
    const char* ticker;
    double lv_mae, lv_rmse;
    double ar_mae, ar_rmse;
};

constexpr RefErrors kRefErrors[] = {
    {"MSFT", 3.3433, 4.6081, 3.3239, 4.5878},
    {"AAPL", 1.9204, 2.6256, 1.9200, 2.6160},
    {"TSLA", 13.6959, 20.4481, 13.8713, 20.6022},
    {"GOOG", 24.3832, 34.1388, 24.4496, 34.2613},
    {"AMZN", 46.3224, 61.8686, 46.2729, 61.5987},
    {"FB", 4.6018, 6.2081, 4.5977, 6.1932},
};

constexpr Date kSplitDate{2020, 1, 1};

bool within(double got, double want, double rel_tol, std::string& why,
            const std::string& label) {
    const double rel = std::abs(got - want) / std::abs(want);
    if (rel <= rel_tol) return true;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: got %.4f want %.4f (off %.2f%%)",
                  label.c_str(), got, want, rel * 100.0);
    why = buf;
    return false;
}

SplitSeries load_split(const std::string& ticker) {
    return split_at(load_series(TSBENCH_DATA_DIR, ticker), kSplitDate);
}

// ---------------------------------------------------------------- criteria

void criterion_1_summary_stats() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    for (const auto& ref : kRefStats) {
        const SplitSeries split = load_split(ref.ticker);
        const SummaryStats parts[2] = {summary_stats(split.train),
                                       summary_stats(split.test)};
        const double* wants[2] = {ref.train, ref.test};
        const std::size_t counts[2] = {split.train.size(), split.test.size()};
        const long want_counts[2] = {1262, 316};
        for (int s = 0; s < 2; ++s) {
            const double got[4] = {parts[s].mean, parts[s].min, parts[s].max,
                                   parts[s].sd};
            const char* names[4] = {"mean", "min", "max", "sd"};
            for (int j = 0; j < 4; ++j)
                ok &= within(got[j], wants[s][j], 0.005, why,
                             std::string(ref.ticker) + (s ? " test " : " train ") +
                                 names[j]);
            if (std::labs(static_cast<long>(counts[s]) - want_counts[s]) > 3) {
                ok = false;
                why = std::string(ref.ticker) + ": bad count " +
                      std::to_string(counts[s]);
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) {
        ok = false;
        why = "took " + std::to_string(secs) + " s (budget 5 s)";
    }
    report(1, ok, "summary statistics on fixtures within 0.5% / counts within 3", why);
}

void criterion_2_deterministic_models() {
    bool ok = true;
    std::string why;
    for (const auto& ref : kRefErrors) {
        const SplitSeries split = load_split(ref.ticker);

        ForecasterConfig lv_cfg;
        lv_cfg.kind = ModelKind::last_value;
        auto lv = make_forecaster(lv_cfg, ref.ticker);
        lv->fit(split.train);
        const auto lv_result = walk_forward(*lv, split);
        ok &= within(mae(lv_result), ref.lv_mae, 0.02, why,
                     std::string(ref.ticker) + " last_value mae");
        ok &= within(rmse(lv_result), ref.lv_rmse, 0.02, why,
                     std::string(ref.ticker) + " last_value rmse");

        ForecasterConfig ar_cfg;
        ar_cfg.kind = ModelKind::autoregression;
        ar_cfg.ar_order = 1;
        auto ar = make_forecaster(ar_cfg, ref.ticker);
        ar->fit(split.train);
        const auto ar_result = walk_forward(*ar, split);
        ok &= within(mae(ar_result), ref.ar_mae, 0.03, why,
                     std::string(ref.ticker) + " autoregression mae");
        ok &= within(rmse(ar_result), ref.ar_rmse, 0.03, why,
                     std::string(ref.ticker) + " autoregression rmse");
    }
    report(2, ok, "last-value within 2% and AR(1) within 3% of the reference table",
           why);
}

struct BenchOutput {
    std::map<std::pair<std::string, std::string>, std::pair<double, double>> cells;
    double seconds = 0.0;
};

BenchOutput run_bench(const fs::path& out_dir) {
    RunConfig cfg;
    cfg.data_dir = TSBENCH_DATA_DIR;
    cfg.output_dir = out_dir;
    fs::remove_all(out_dir);
    std::ostringstream sink;
    const auto t0 = std::chrono::steady_clock::now();
    cmd_bench(cfg, sink);
    BenchOutput out;
    out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ifstream in(out_dir / "report.csv");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string ticker, model, mae_s, rmse_s;
        std::getline(row, ticker, ',');
        std::getline(row, model, ',');
        std::getline(row, mae_s, ',');
        std::getline(row, rmse_s, ',');
        out.cells[{ticker, model}] = {std::stod(mae_s), std::stod(rmse_s)};
    }
    return out;
}

void criterion_3_model_ordering(const BenchOutput& a) {
    int ar_wins = 0;
    std::string breakdown;
    for (const auto& ref : kRefStats) {
        const double ar = a.cells.at({ref.ticker, "autoregression"}).first;
        const double gbt = a.cells.at({ref.ticker, "gbt"}).first;
        const double lstm = a.cells.at({ref.ticker, "lstm"}).first;
        const bool win = ar <= gbt && ar <= lstm;
        ar_wins += win ? 1 : 0;
        char buf[120];
        std::snprintf(buf, sizeof buf, "%s ar=%.3f gbt=%.3f lstm=%.3f %s; ",
                      ref.ticker, ar, gbt, lstm, win ? "ok" : "MISS");
        breakdown += buf;
    }
    report(3, ar_wins >= 5,
           "AR beats GBT and LSTM on at least 5 of 6 tickers (seed 42)", breakdown);
}

void criterion_4_rmse_vs_mae(const BenchOutput& a) {
    bool ok = a.cells.size() == 24;
    std::string why =
        ok ? "" : "expected 24 cells, got " + std::to_string(a.cells.size());
    for (const auto& [key, v] : a.cells)
        if (v.second < v.first) {
            ok = false;
            why = key.first + "/" + key.second + ": rmse < mae";
        }
    report(4, ok, "RMSE >= MAE in all 24 report cells", why);
}

void criterion_10_determinism(const fs::path& dir_a, const fs::path& dir_b) {
    bool ok = true;
    std::string why;
    std::vector<fs::path> names;
    for (const auto& entry : fs::directory_iterator(dir_a))
        names.push_back(entry.path().filename());
    std::sort(names.begin(), names.end());
    if (names.size() != 25) {
        ok = false;
        why = "expected 25 output files, got " + std::to_string(names.size());
    }
    for (const auto& name : names) {
        std::ifstream fa(dir_a / name, std::ios::binary);
        std::ifstream fb(dir_b / name, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (!fb || sa.str() != sb.str()) {
            ok = false;
            why = "files differ: " + name.string();
        }
    }
    report(10, ok, "two identical bench runs write byte-identical files", why);
}

void criterion_11_runtime(const BenchOutput& a) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.1f s", a.seconds);
    report(11, a.seconds < 600.0, "full default benchmark under 10 minutes", buf);
}

void criterion_5_acf_oracle() {
    SplitMix64 rng(2718);
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const std::size_t n = 5 + rng.index(496);
        std::vector<Observation> pts;
        Date d{2015, 1, 1};
        double level = 50.0 + 100.0 * rng.next_double();
        for (std::size_t i = 0; i < n; ++i) {
            level = std::max(1.0, level + 2.0 * (rng.next_double() - 0.5));
            pts.push_back(Observation{d, level});
            ++d.day;
            if (d.day > 28) {
                d.day = 1;
                ++d.month;
                if (d.month > 12) {
                    d.month = 1;
                    ++d.year;
                }
            }
        }
        PriceSeries series("R", pts);
        const auto y = series.closes();
        if (autocorrelation(series, 0) != 1.0) {
            ok = false;
            why = "r_0 is not exactly 1";
            break;
        }
        const int max_lag = static_cast<int>(std::min<std::size_t>(10, n - 1));
        for (int k = 0; k <= max_lag; ++k) {
            // independent brute-force transcription of the lag-correlation sum
            double mean = 0.0;
            for (double v : y) mean += v;
            mean /= static_cast<double>(n);
            double s2 = 0.0;
            for (double v : y) s2 += (v - mean) * (v - mean);
            s2 /= static_cast<double>(n);
            double num = 0.0;
            for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
                num += (y[t] - mean) * (y[t - static_cast<std::size_t>(k)] - mean);
            const double want = num / (static_cast<double>(n) * s2);
            const double got = autocorrelation(series, k);
            if (std::abs(got - want) > 1e-12) {
                ok = false;
                why = "lag " + std::to_string(k) + ": |" + std::to_string(got) +
                      " - " + std::to_string(want) + "| > 1e-12";
                break;
            }
        }
    }
    report(5, ok, "autocorrelation matches brute force to 1e-12 on 100 random series",
           why);
}

void criterion_6_ar_recovery() {
    const double phi = 0.8, c = 5.0;
    double sum_phi = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SplitMix64 rng(seed * 7919);
        std::vector<Observation> pts;
        Date d{2010, 1, 1};
        double y = c / (1.0 - phi);
        for (int i = 0; i < 2000; ++i) {
            y = c + phi * y + rng.normal();
            pts.push_back(Observation{d, std::max(y, 0.1)});
            ++d.day;
            if (d.day > 28) {
                d.day = 1;
                ++d.month;
                if (d.month > 12) {
                    d.month = 1;
                    ++d.year;
                }
            }
        }
        sum_phi += ar_fit(PriceSeries("S", pts), 1).coeffs[0];
    }
    const double mean_phi = sum_phi / 20.0;
    char buf[80];
    std::snprintf(buf, sizeof buf, "mean fitted phi = %.4f", mean_phi);
    report(6, std::abs(mean_phi - phi) <= 0.05,
           "synthetic AR(1) recovery over 20 seeds", buf);
}

void criterion_7_model_equivalence() {
    class IdentityAr final : public Forecaster {
    public:
        void fit(const PriceSeries&) override {}
        double predict(std::span<const double> history) const override {
            return ar_predict(model_, history.last(1));
        }
        std::size_t context_size() const override { return 1; }
        std::string_view name() const override { return "ar_identity"; }

    private:
        ArModel model_{0.0, {1.0}};
    };

    bool ok = true;
    std::string why;
    for (const auto& ref : kRefStats) {
        const SplitSeries split = load_split(ref.ticker);
        IdentityAr forced;
        ForecasterConfig lv_cfg;
        lv_cfg.kind = ModelKind::last_value;
        auto lv = make_forecaster(lv_cfg, ref.ticker);
        lv->fit(split.train);
        const auto a = walk_forward(forced, split);
        const auto b = walk_forward(*lv, split);
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            if (std::abs(a.rows[i].predicted - b.rows[i].predicted) >= 1e-12) {
                ok = false;
                why = std::string(ref.ticker) + " row " + std::to_string(i);
                break;
            }
        }
    }
    report(7, ok, "forced identity AR walks identically to last value on fixtures",
           why);
}

void criterion_8_lstm_gradient_check() {
    struct Shape {
        int hidden, window;
    };
    const Shape shapes[] = {{2, 3}, {4, 5}, {8, 3}};
    bool ok = true;
    std::string detail;
    for (const auto& shape : shapes) {
        LstmParams p;
        p.hidden = shape.hidden;
        p.window = shape.window;
        p.scaler = {0.0, 1.0};
        const std::size_t h = static_cast<std::size_t>(shape.hidden);
        SplitMix64 rng(9000 + static_cast<std::uint64_t>(shape.hidden * 10 +
                                                         shape.window));
        for (auto* v : {&p.w_f, &p.w_i, &p.w_o, &p.w_g, &p.b_f, &p.b_i, &p.b_o,
                        &p.b_g, &p.head_w}) {
            v->resize(h);
            for (auto& x : *v) x = rng.uniform(-0.7, 0.7);
        }
        for (auto* v : {&p.u_f, &p.u_i, &p.u_o, &p.u_g}) {
            v->resize(h * h);
            for (auto& x : *v) x = rng.uniform(-0.7, 0.7);
        }
        p.head_b = rng.uniform(-0.2, 0.2);

        std::vector<LstmExample> examples(8);
        for (auto& ex : examples) {
            for (int t = 0; t < shape.window; ++t)
                ex.window.push_back(rng.next_double());
            ex.target = rng.next_double();
        }

        const LstmGradients g = lstm_batch_gradient(p, examples);
        std::vector<const double*> analytic;
        for (const auto* v : {&g.w_f, &g.w_i, &g.w_o, &g.w_g, &g.u_f, &g.u_i,
                              &g.u_o, &g.u_g, &g.b_f, &g.b_i, &g.b_o, &g.b_g,
                              &g.head_w})
            for (const double& x : *v) analytic.push_back(&x);
        analytic.push_back(&g.head_b);

        std::vector<double*> slots;
        for (auto* v : {&p.w_f, &p.w_i, &p.w_o, &p.w_g, &p.u_f, &p.u_i, &p.u_o,
                        &p.u_g, &p.b_f, &p.b_i, &p.b_o, &p.b_g, &p.head_w})
            for (double& x : *v) slots.push_back(&x);
        slots.push_back(&p.head_b);

        const double step = 1e-5;
        double worst = 0.0;
        for (std::size_t j = 0; j < slots.size(); ++j) {
            const double saved = *slots[j];
            *slots[j] = saved + step;
            const double up = lstm_batch_loss(p, examples);
            *slots[j] = saved - step;
            const double down = lstm_batch_loss(p, examples);
            *slots[j] = saved;
            const double fd = (up - down) / (2.0 * step);
            const double rel = std::abs(*analytic[j] - fd) /
                               std::max({std::abs(*analytic[j]), std::abs(fd), 1e-3});
            worst = std::max(worst, rel);
        }
        char buf[80];
        std::snprintf(buf, sizeof buf, "H=%d W=%d worst=%.2e; ", shape.hidden,
                      shape.window, worst);
        detail += buf;
        ok &= worst < 1e-4;
    }
    report(8, ok, "BPTT gradients match finite differences on 3 shapes", detail);
}

void criterion_9_gbt_properties() {
    bool ok = true;
    std::string why;
    GbtConfig cfg;  // defaults: 100 rounds, depth 3
    for (const auto& ref : kRefStats) {
        const SplitSeries split = load_split(ref.ticker);
        const auto fit = gbt_fit(split.train, 10, cfg);
        for (std::size_t r = 1; r < fit.round_mse.size(); ++r) {
            if (fit.round_mse[r] > fit.round_mse[r - 1] * (1.0 + 1e-12) + 1e-12) {
                ok = false;
                why = std::string(ref.ticker) + ": loss rose at round " +
                      std::to_string(r);
            }
        }
    }

    GbtConfig exact;
    exact.rounds = 1;
    exact.max_depth = 64;
    exact.shrinkage = 1.0;
    exact.l2 = 0.0;
    exact.min_leaf = 1;
    std::vector<Observation> pts;
    Date d{2020, 1, 1};
    for (double v : {10.0, 20.0, 40.0, 80.0, 30.0}) {
        pts.push_back(Observation{d, v});
        ++d.day;
    }
    const auto fit = gbt_fit(PriceSeries("E", pts), 1, exact);
    if (!(fit.round_mse.back() < 1e-18)) {
        ok = false;
        why = "exact single tree left mse " + std::to_string(fit.round_mse.back());
    }
    report(9, ok, "GBT loss non-increasing on fixtures; unbounded tree is exact",
           why);
}

}  // namespace

int main() {
    std::printf("acceptance suite (fixtures: %s)\n", TSBENCH_DATA_DIR);
    const fs::path dir_a = "acceptance_out_a";
    const fs::path dir_b = "acceptance_out_b";
    const BenchOutput bench_a = run_bench(dir_a);
    run_bench(dir_b);  // second run only feeds the determinism check

    criterion_1_summary_stats();
    criterion_2_deterministic_models();
    criterion_3_model_ordering(bench_a);
    criterion_4_rmse_vs_mae(bench_a);
    criterion_5_acf_oracle();
    criterion_6_ar_recovery();
    criterion_7_model_equivalence();
    criterion_8_lstm_gradient_check();
    criterion_9_gbt_properties();
    criterion_10_determinism(dir_a, dir_b);
    criterion_11_runtime(bench_a);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
