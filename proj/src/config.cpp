#include "tsbench/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsbench/errors.hpp"

namespace tsbench {

ForecasterConfig RunConfig::forecaster_config(ModelKind kind) const {
    ForecasterConfig fc;
    fc.kind = kind;
    fc.ar_order = ar_order;
    fc.window = window;
    fc.gbt = gbt;
    fc.lstm = lstm;
    fc.seed = seed;
    return fc;
}

void RunConfig::check() const {
    if (tickers.empty()) throw InvalidValue("tickers must not be empty");
    if (models.empty()) throw InvalidValue("models must not be empty");
    if (!is_valid_date(split_date)) throw InvalidValue("split_date is not a valid day");
    if (jobs < 1) throw InvalidValue("jobs must be >= 1");
    forecaster_config(ModelKind::last_value).check();
}

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw InvalidValue("config key \"" + key + "\" must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw InvalidValue("config key \"" + key + "\" must be an integer");
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string())
        throw InvalidValue("config key \"" + key + "\" must be a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
    if (!v.is_boolean())
        throw InvalidValue("config key \"" + key + "\" must be a boolean");
    return v.get<bool>();
}

std::vector<std::string> as_string_list(const json& v, const std::string& key) {
    if (!v.is_array())
        throw InvalidValue("config key \"" + key + "\" must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : v) out.push_back(as_string(item, key));
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(e.what());  // carries byte position and context
    }
    if (!doc.is_object())
        throw ConfigParseError("config must be a flat JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "data_dir") cfg.data_dir = as_string(value, key);
        else if (key == "output_dir") cfg.output_dir = as_string(value, key);
        else if (key == "tickers") {
            cfg.tickers = as_string_list(value, key);
        } else if (key == "split_date") {
            cfg.split_date = parse_date(as_string(value, key));
        } else if (key == "models") {
            cfg.models.clear();
            for (const auto& name : as_string_list(value, key))
                cfg.models.push_back(model_kind_from_string(name));
        } else if (key == "seed") {
            if (!value.is_number_integer())
                throw InvalidValue("config key \"seed\" must be an integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "jobs") cfg.jobs = as_int(value, key);
        else if (key == "refit_each_step") cfg.refit_each_step = as_bool(value, key);
        else if (key == "use_adj_close") cfg.use_adj_close = as_bool(value, key);
        else if (key == "ar_order") cfg.ar_order = as_int(value, key);
        else if (key == "window") cfg.window = as_int(value, key);
        else if (key == "gbt_rounds") cfg.gbt.rounds = as_int(value, key);
        else if (key == "gbt_max_depth") cfg.gbt.max_depth = as_int(value, key);
        else if (key == "gbt_shrinkage") cfg.gbt.shrinkage = as_number(value, key);
        else if (key == "gbt_l2") cfg.gbt.l2 = as_number(value, key);
        else if (key == "gbt_min_leaf") cfg.gbt.min_leaf = as_int(value, key);
        else if (key == "lstm_hidden") cfg.lstm.hidden = as_int(value, key);
        else if (key == "lstm_epochs") cfg.lstm.epochs = as_int(value, key);
        else if (key == "lstm_batch") cfg.lstm.batch = as_int(value, key);
        else if (key == "lstm_learning_rate")
            cfg.lstm.learning_rate = as_number(value, key);
        else if (key == "lstm_beta1") cfg.lstm.beta1 = as_number(value, key);
        else if (key == "lstm_beta2") cfg.lstm.beta2 = as_number(value, key);
        else if (key == "lstm_epsilon") cfg.lstm.epsilon = as_number(value, key);
        else if (key == "url_template") cfg.url_template = as_string(value, key);
        else if (key == "fetch_start") cfg.fetch_start = parse_date(as_string(value, key));
        else if (key == "fetch_end") cfg.fetch_end = parse_date(as_string(value, key));
        else throw UnknownKey(key);
    }
    cfg.check();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace tsbench
