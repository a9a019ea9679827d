#include "msj/io.hpp"

#include <fstream>
#include <stdexcept>

namespace msj {

using nlohmann::json;

json config_to_json(const SystemConfig& config) {
    json types = json::array();
    for (const auto& t : config.types)
        types.push_back({{"lambda", t.arrival_rate}, {"mu", t.service_rate}, {"l", t.server_need}});
    return {{"n", config.n}, {"types", types}};
}

SystemConfig config_from_json(const json& doc) {
    try {
        SystemConfig config;
        config.n = doc.at("n").get<int>();
        for (const auto& t : doc.at("types"))
            config.types.push_back({t.at("lambda").get<double>(), t.at("mu").get<double>(), t.at("l").get<int>()});
        config = sorted_by_need(std::move(config));
        validate(config);
        return config;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed config document: ") + e.what());
    }
}

SystemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(doc);
}

void save_config(const std::filesystem::path& path, const SystemConfig& config) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << config_to_json(config).dump(2) << '\n';
}

namespace {

json value_json(const BoundValue& v) {
    if (v.present()) return *v.value;
    return {{"absent", v.absent_reason}};
}

BoundValue value_from(const json& j) {
    if (j.is_number()) return BoundValue::of(j.get<double>());
    return BoundValue::absent(j.at("absent").get<std::string>());
}

const char* regime_name(SnfTypeBound::Regime r) {
    switch (r) {
        case SnfTypeBound::Regime::Heavy: return "heavy";
        case SnfTypeBound::Regime::Intermediate: return "intermediate";
        case SnfTypeBound::Regime::Light: return "light";
    }
    return "heavy";
}

SnfTypeBound::Regime regime_from(const std::string& s) {
    if (s == "heavy") return SnfTypeBound::Regime::Heavy;
    if (s == "intermediate") return SnfTypeBound::Regime::Intermediate;
    if (s == "light") return SnfTypeBound::Regime::Light;
    throw std::invalid_argument("unknown regime " + s);
}

}  // namespace

json bounds_to_json(const BoundReport& r) {
    json general = json::array();
    for (std::size_t i = 0; i < r.snf_general.size(); ++i) {
        const auto& b = r.snf_general[i];
        general.push_back({{"type", i + 1},
                           {"regime", regime_name(b.regime)},
                           {"wait", value_json(b.wait)},
                           {"exponent", b.exponent}});
    }
    const auto& a = r.assumptions;
    return {
        {"delta_prime", r.delta_prime},
        {"workload_lower", value_json(r.workload_lower)},
        {"workload_upper", value_json(r.workload_upper)},
        {"fcfs_wait_lower", value_json(r.fcfs_wait_lower)},
        {"fcfs_wait_upper", value_json(r.fcfs_wait_upper)},
        {"universal_lower", value_json(r.universal_lower)},
        {"universal_argmax", r.universal_argmax},
        {"snf_upper", value_json(r.snf_upper)},
        {"snf_general", general},
        {"snf_general_mean", value_json(r.snf_general_mean)},
        {"qp_exponent", r.qp_exponent},
        {"assumptions",
         {{"a1_ratio", a.a1_ratio},
          {"a2_ratio", a.a2_ratio},
          {"a3_ratio", a.a3_ratio},
          {"epsilon0", a.epsilon0},
          {"holds", {a.holds[0], a.holds[1], a.holds[2]}}}},
        {"indices",
         {{"i_star", r.indices.i_star},
          {"i_star_1", r.indices.i_star_1},
          {"i_star_fallback", r.indices.i_star_fallback},
          {"i_star_1_fallback", r.indices.i_star_1_fallback}}},
    };
}

BoundReport bounds_from_json(const json& doc) {
    BoundReport r;
    r.delta_prime = doc.at("delta_prime").get<double>();
    r.workload_lower = value_from(doc.at("workload_lower"));
    r.workload_upper = value_from(doc.at("workload_upper"));
    r.fcfs_wait_lower = value_from(doc.at("fcfs_wait_lower"));
    r.fcfs_wait_upper = value_from(doc.at("fcfs_wait_upper"));
    r.universal_lower = value_from(doc.at("universal_lower"));
    r.universal_argmax = doc.at("universal_argmax").get<std::size_t>();
    r.snf_upper = value_from(doc.at("snf_upper"));
    for (const auto& g : doc.at("snf_general")) {
        SnfTypeBound b;
        b.regime = regime_from(g.at("regime").get<std::string>());
        b.wait = value_from(g.at("wait"));
        b.exponent = g.at("exponent").get<double>();
        r.snf_general.push_back(b);
    }
    r.snf_general_mean = value_from(doc.at("snf_general_mean"));
    r.qp_exponent = doc.at("qp_exponent").get<double>();
    const auto& a = doc.at("assumptions");
    r.assumptions.a1_ratio = a.at("a1_ratio").get<double>();
    r.assumptions.a2_ratio = a.at("a2_ratio").get<double>();
    r.assumptions.a3_ratio = a.at("a3_ratio").get<double>();
    r.assumptions.epsilon0 = a.at("epsilon0").get<double>();
    for (int i = 0; i < 3; ++i) r.assumptions.holds[i] = a.at("holds").at(i).get<bool>();
    const auto& ix = doc.at("indices");
    r.indices.i_star = ix.at("i_star").get<std::size_t>();
    r.indices.i_star_1 = ix.at("i_star_1").get<std::size_t>();
    r.indices.i_star_fallback = ix.at("i_star_fallback").get<bool>();
    r.indices.i_star_1_fallback = ix.at("i_star_1_fallback").get<bool>();
    return r;
}

}  // namespace msj
