#include "tsbench/models/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tsbench/errors.hpp"
#include "tsbench/rng.hpp"

namespace tsbench {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::size_t hd(const LstmParams& p) { return static_cast<std::size_t>(p.hidden); }

void check_dims(const LstmParams& p) {
    const std::size_t h = hd(p);
    bool ok = p.w_f.size() == h && p.w_i.size() == h && p.w_o.size() == h &&
              p.w_g.size() == h && p.u_f.size() == h * h && p.u_i.size() == h * h &&
              p.u_o.size() == h * h && p.u_g.size() == h * h && p.b_f.size() == h &&
              p.b_i.size() == h && p.b_o.size() == h && p.b_g.size() == h &&
              p.head_w.size() == h;
    if (!ok) throw DimensionMismatch("LSTM parameter sizes disagree with hidden=" +
                                     std::to_string(p.hidden));
}

/// Activations of one unrolled pass, kept for backpropagation.
struct Tape {
    std::size_t steps = 0;
    std::size_t h = 0;
    std::vector<double> x;                // steps
    std::vector<double> f, i, o, g;       // steps * h
    std::vector<double> c, hs;            // (steps + 1) * h; row 0 is the zero state
    std::vector<double> tanh_c;           // steps * h

    void resize(std::size_t steps_, std::size_t h_) {
        steps = steps_;
        h = h_;
        x.assign(steps, 0.0);
        f.assign(steps * h, 0.0);
        i.assign(steps * h, 0.0);
        o.assign(steps * h, 0.0);
        g.assign(steps * h, 0.0);
        tanh_c.assign(steps * h, 0.0);
        c.assign((steps + 1) * h, 0.0);
        hs.assign((steps + 1) * h, 0.0);
    }
};

double run_forward(const LstmParams& p, std::span<const double> window, Tape& tape) {
    const std::size_t h = hd(p);
    const std::size_t steps = window.size();
    tape.resize(steps, h);
    for (std::size_t t = 0; t < steps; ++t) {
        const double x = window[t];
        tape.x[t] = x;
        const double* h_prev = tape.hs.data() + t * h;
        const double* c_prev = tape.c.data() + t * h;
        for (std::size_t j = 0; j < h; ++j) {
            double zf = p.w_f[j] * x + p.b_f[j];
            double zi = p.w_i[j] * x + p.b_i[j];
            double zo = p.w_o[j] * x + p.b_o[j];
            double zg = p.w_g[j] * x + p.b_g[j];
            const double* uf = p.u_f.data() + j * h;
            const double* ui = p.u_i.data() + j * h;
            const double* uo = p.u_o.data() + j * h;
            const double* ug = p.u_g.data() + j * h;
            for (std::size_t k = 0; k < h; ++k) {
                zf += uf[k] * h_prev[k];
                zi += ui[k] * h_prev[k];
                zo += uo[k] * h_prev[k];
                zg += ug[k] * h_prev[k];
            }
            const double fj = sigmoid(zf);
            const double ij = sigmoid(zi);
            const double oj = sigmoid(zo);
            const double gj = std::tanh(zg);
            const double cj = fj * c_prev[j] + ij * gj;
            const double tcj = std::tanh(cj);
            const std::size_t at = t * h + j;
            tape.f[at] = fj;
            tape.i[at] = ij;
            tape.o[at] = oj;
            tape.g[at] = gj;
            tape.c[(t + 1) * h + j] = cj;
            tape.tanh_c[at] = tcj;
            tape.hs[(t + 1) * h + j] = oj * tcj;
        }
    }
    double out = p.head_b;
    const double* h_last = tape.hs.data() + steps * h;
    for (std::size_t j = 0; j < h; ++j) out += p.head_w[j] * h_last[j];
    return out;
}

void backward(const LstmParams& p, const Tape& tape, double d_out, LstmGradients& g) {
    const std::size_t h = tape.h;
    g.head_b += d_out;
    const double* h_last = tape.hs.data() + tape.steps * h;
    std::vector<double> dh(h), dc(h, 0.0), dh_next(h), dc_next(h);
    for (std::size_t j = 0; j < h; ++j) {
        g.head_w[j] += d_out * h_last[j];
        dh[j] = p.head_w[j] * d_out;
    }
    std::vector<double> dzf(h), dzi(h), dzo(h), dzg(h);
    for (std::size_t t = tape.steps; t-- > 0;) {
        const double x = tape.x[t];
        const double* h_prev = tape.hs.data() + t * h;
        const double* c_prev = tape.c.data() + t * h;
        for (std::size_t j = 0; j < h; ++j) {
            const std::size_t at = t * h + j;
            const double fj = tape.f[at];
            const double ij = tape.i[at];
            const double oj = tape.o[at];
            const double gj = tape.g[at];
            const double tcj = tape.tanh_c[at];
            const double doj = dh[j] * tcj;
            dzo[j] = doj * oj * (1.0 - oj);
            const double dcj = dc[j] + dh[j] * oj * (1.0 - tcj * tcj);
            const double dfj = dcj * c_prev[j];
            dzf[j] = dfj * fj * (1.0 - fj);
            const double dij = dcj * gj;
            dzi[j] = dij * ij * (1.0 - ij);
            const double dgj = dcj * ij;
            dzg[j] = dgj * (1.0 - gj * gj);
            dc_next[j] = dcj * fj;

            g.w_f[j] += dzf[j] * x;
            g.w_i[j] += dzi[j] * x;
            g.w_o[j] += dzo[j] * x;
            g.w_g[j] += dzg[j] * x;
            g.b_f[j] += dzf[j];
            g.b_i[j] += dzi[j];
            g.b_o[j] += dzo[j];
            g.b_g[j] += dzg[j];
            double* guf = g.u_f.data() + j * h;
            double* gui = g.u_i.data() + j * h;
            double* guo = g.u_o.data() + j * h;
            double* gug = g.u_g.data() + j * h;
            for (std::size_t k = 0; k < h; ++k) {
                guf[k] += dzf[j] * h_prev[k];
                gui[k] += dzi[j] * h_prev[k];
                guo[k] += dzo[j] * h_prev[k];
                gug[k] += dzg[j] * h_prev[k];
            }
        }
        std::fill(dh_next.begin(), dh_next.end(), 0.0);
        for (std::size_t j = 0; j < h; ++j) {
            const double* uf = p.u_f.data() + j * h;
            const double* ui = p.u_i.data() + j * h;
            const double* uo = p.u_o.data() + j * h;
            const double* ug = p.u_g.data() + j * h;
            for (std::size_t k = 0; k < h; ++k)
                dh_next[k] += uf[k] * dzf[j] + ui[k] * dzi[j] + uo[k] * dzo[j] +
                              ug[k] * dzg[j];
        }
        std::swap(dh, dh_next);
        std::swap(dc, dc_next);
    }
}

LstmGradients zero_gradients(const LstmParams& p) {
    const std::size_t h = hd(p);
    LstmGradients g;
    for (auto* v : {&g.w_f, &g.w_i, &g.w_o, &g.w_g, &g.b_f, &g.b_i, &g.b_o, &g.b_g,
                    &g.head_w})
        v->assign(h, 0.0);
    for (auto* v : {&g.u_f, &g.u_i, &g.u_o, &g.u_g}) v->assign(h * h, 0.0);
    g.head_b = 0.0;
    return g;
}

/// The 13 parameter arrays in a fixed order; head_b is handled separately.
template <typename P>
auto array_members(P& p) {
    return std::array{&p.w_f, &p.w_i, &p.w_o, &p.w_g, &p.u_f, &p.u_i, &p.u_o,
                      &p.u_g, &p.b_f, &p.b_i, &p.b_o, &p.b_g, &p.head_w};
}

}  // namespace

void lstm_cell_forward(double x, std::span<const double> h_prev,
                       std::span<const double> c_prev, const LstmParams& params,
                       std::span<double> h_out, std::span<double> c_out) {
    check_dims(params);
    const std::size_t h = hd(params);
    if (h_prev.size() != h || c_prev.size() != h || h_out.size() != h ||
        c_out.size() != h)
        throw DimensionMismatch("cell state sizes disagree with hidden=" +
                                std::to_string(params.hidden));
    for (std::size_t j = 0; j < h; ++j) {
        double zf = params.w_f[j] * x + params.b_f[j];
        double zi = params.w_i[j] * x + params.b_i[j];
        double zo = params.w_o[j] * x + params.b_o[j];
        double zg = params.w_g[j] * x + params.b_g[j];
        for (std::size_t k = 0; k < h; ++k) {
            zf += params.u_f[j * h + k] * h_prev[k];
            zi += params.u_i[j * h + k] * h_prev[k];
            zo += params.u_o[j * h + k] * h_prev[k];
            zg += params.u_g[j * h + k] * h_prev[k];
        }
        const double f = sigmoid(zf);
        const double i = sigmoid(zi);
        const double o = sigmoid(zo);
        const double g = std::tanh(zg);
        c_out[j] = f * c_prev[j] + i * g;
        h_out[j] = o * std::tanh(c_out[j]);
    }
}

double lstm_forward(const LstmParams& params, std::span<const double> window_scaled) {
    check_dims(params);
    Tape tape;
    return run_forward(params, window_scaled, tape);
}

double lstm_batch_loss(const LstmParams& params, std::span<const LstmExample> batch) {
    check_dims(params);
    if (batch.empty()) throw InvalidValue("loss over an empty batch");
    Tape tape;
    double loss = 0.0;
    for (const auto& ex : batch) {
        const double out = run_forward(params, ex.window, tape);
        const double err = out - ex.target;
        loss += err * err;
    }
    return loss / static_cast<double>(batch.size());
}

LstmGradients lstm_batch_gradient(const LstmParams& params,
                                  std::span<const LstmExample> batch) {
    check_dims(params);
    if (batch.empty()) throw InvalidValue("gradient over an empty batch");
    LstmGradients grads = zero_gradients(params);
    Tape tape;
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    for (const auto& ex : batch) {
        const double out = run_forward(params, ex.window, tape);
        backward(params, tape, 2.0 * (out - ex.target) * inv_n, grads);
    }
    return grads;
}

LstmFitResult lstm_train(const PriceSeries& train, int window, const LstmConfig& config,
                         std::uint64_t seed) {
    if (window < 1) throw InvalidValue("window must be >= 1");
    const std::vector<double> y = train.closes();
    const std::size_t w = static_cast<std::size_t>(window);
    if (y.size() < w + 2)
        throw TooShort("LSTM with window " + std::to_string(window) +
                       " needs at least " + std::to_string(w + 2) +
                       " observations, got " + std::to_string(y.size()));

    LstmFitResult result;
    LstmParams& p = result.params;
    p.hidden = config.hidden;
    p.window = window;
    p.scaler.lo = *std::min_element(y.begin(), y.end());
    p.scaler.hi = *std::max_element(y.begin(), y.end());
    if (!(p.scaler.hi > p.scaler.lo)) throw ZeroVariance();

    const std::size_t h = static_cast<std::size_t>(config.hidden);
    SplitMix64 rng(seed);
    const double u_bound = 1.0 / std::sqrt(static_cast<double>(h));
    // input weights see a single scalar, so fan_in = 1
    for (auto* v : {&p.w_f, &p.w_i, &p.w_o, &p.w_g}) {
        v->resize(h);
        for (auto& x : *v) x = rng.uniform(-1.0, 1.0);
    }
    for (auto* v : {&p.u_f, &p.u_i, &p.u_o, &p.u_g}) {
        v->resize(h * h);
        for (auto& x : *v) x = rng.uniform(-u_bound, u_bound);
    }
    p.b_f.assign(h, 1.0);  // start remembering, learn to forget
    p.b_i.assign(h, 0.0);
    p.b_o.assign(h, 0.0);
    p.b_g.assign(h, 0.0);
    p.head_w.resize(h);
    for (auto& x : p.head_w) x = rng.uniform(-u_bound, u_bound);
    p.head_b = 0.0;

    std::vector<LstmExample> examples(y.size() - w);
    for (std::size_t i = 0; i < examples.size(); ++i) {
        examples[i].window.resize(w);
        for (std::size_t t = 0; t < w; ++t)
            examples[i].window[t] = p.scaler.scale(y[i + t]);
        examples[i].target = p.scaler.scale(y[i + w]);
    }

    LstmGradients m = zero_gradients(p);
    LstmGradients v = zero_gradients(p);
    double m_head_b = 0.0, v_head_b = 0.0;
    long step = 0;

    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<LstmExample> batch;
    batch.reserve(static_cast<std::size_t>(config.batch));

    result.epoch_loss.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_sse = 0.0;
        for (std::size_t begin = 0; begin < order.size();
             begin += static_cast<std::size_t>(config.batch)) {
            const std::size_t end =
                std::min(begin + static_cast<std::size_t>(config.batch), order.size());
            batch.clear();
            for (std::size_t i = begin; i < end; ++i)
                batch.push_back(examples[order[i]]);

            epoch_sse += lstm_batch_loss(p, batch) * static_cast<double>(batch.size());
            LstmGradients grads = lstm_batch_gradient(p, batch);

            ++step;
            const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
            auto pa = array_members(p);
            auto ga = array_members(grads);
            auto ma = array_members(m);
            auto va = array_members(v);
            for (std::size_t a = 0; a < pa.size(); ++a) {
                auto& pv = *pa[a];
                auto& gv = *ga[a];
                auto& mv = *ma[a];
                auto& vv = *va[a];
                for (std::size_t i = 0; i < pv.size(); ++i) {
                    mv[i] = config.beta1 * mv[i] + (1.0 - config.beta1) * gv[i];
                    vv[i] = config.beta2 * vv[i] + (1.0 - config.beta2) * gv[i] * gv[i];
                    pv[i] -= config.learning_rate * (mv[i] / bc1) /
                             (std::sqrt(vv[i] / bc2) + config.epsilon);
                }
            }
            m_head_b = config.beta1 * m_head_b + (1.0 - config.beta1) * grads.head_b;
            v_head_b = config.beta2 * v_head_b +
                       (1.0 - config.beta2) * grads.head_b * grads.head_b;
            p.head_b -= config.learning_rate * (m_head_b / bc1) /
                        (std::sqrt(v_head_b / bc2) + config.epsilon);
        }
        const double epoch_loss = epoch_sse / static_cast<double>(examples.size());
        if (!std::isfinite(epoch_loss))
            throw NonFiniteLoss("training diverged at epoch " + std::to_string(epoch) +
                                " (loss not finite); lower the learning rate");
        result.epoch_loss.push_back(epoch_loss);
    }
    return result;
}

double lstm_predict(const LstmParams& params, std::span<const double> window) {
    if (window.size() != static_cast<std::size_t>(params.window))
        throw WrongWindowLength("expected window of " + std::to_string(params.window) +
                                ", got " + std::to_string(window.size()));
    std::vector<double> scaled(window.size());
    for (std::size_t i = 0; i < window.size(); ++i)
        scaled[i] = params.scaler.scale(window[i]);
    return params.scaler.inverse(lstm_forward(params, scaled));
}

}  // namespace tsbench
