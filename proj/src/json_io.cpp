#include "sw/json_io.hpp"

namespace sw {

using nlohmann::json;

json to_json(const TangencyReport& report) {
    json j;
    j["shape"] = report.dims;
    j["k"] = report.k;
    j["r"] = report.r;
    j["prime"] = report.prime;
    j["seed"] = report.seed;
    j["terracini_rank"] = report.terracini_rank;
    j["span_dim"] = report.span_dim;
    j["jacobian_rank"] = report.jacobian_rank;
    j["verdict"] = report.verdict();
    j["trials"] = report.trials_run;
    j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

TangencyReport tangency_report_from_json(const json& j) {
    TangencyReport r;
    r.dims = j.at("shape").get<std::vector<long>>();
    r.k = j.at("k").get<long>();
    r.r = j.at("r").get<long>();
    r.prime = j.at("prime").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.terracini_rank = j.at("terracini_rank").get<long>();
    r.span_dim = j.at("span_dim").get<long>();
    r.jacobian_rank = j.at("jacobian_rank").get<long>();
    r.certified = j.at("verdict").get<std::string>() == "Certified";
    r.trials_run = j.at("trials").get<int>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    long ambient = 1;
    for (long a : r.dims) ambient *= a + 1;
    r.num_equations = (ambient - 1) - r.span_dim;
    return r;
}

json to_json(const NumericWitness& w) {
    json j;
    j["dims"] = w.dims;
    j["k"] = w.k;
    j["r"] = w.r;
    j["prime"] = w.prime;
    j["seed"] = w.seed;
    j["terracini_rank"] = w.terracini_rank;
    j["jacobian_rank"] = w.jacobian_rank;
    return j;
}

NumericWitness numeric_witness_from_json(const json& j) {
    NumericWitness w;
    w.dims = j.at("dims").get<std::vector<long>>();
    w.k = j.at("k").get<long>();
    w.r = j.at("r").get<long>();
    w.prime = j.at("prime").get<std::uint64_t>();
    w.seed = j.at("seed").get<std::uint64_t>();
    w.terracini_rank = j.at("terracini_rank").get<long>();
    w.jacobian_rank = j.at("jacobian_rank").get<long>();
    return w;
}

json to_json(const Verdict& v) {
    json j;
    j["status"] = to_string(v.status);
    j["rule"] = v.rule;
    j["detail"] = v.detail;
    j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
    j["numeric"] = v.numeric ? to_json(*v.numeric) : json(nullptr);
    j["caveat"] = v.caveat;
    if (v.caveat) j["caveat_text"] = v.caveat_text;
    return j;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    const std::string s = j.at("status").get<std::string>();
    v.status = s == "Identifiable"
                   ? Status::Identifiable
                   : (s == "NotIdentifiable" ? Status::NotIdentifiable
                                             : Status::Unknown);
    v.rule = j.at("rule").get<std::string>();
    v.detail = j.at("detail").get<std::string>();
    if (!j.at("witness").is_null())
        v.witness = j.at("witness").get<std::string>();
    if (!j.at("numeric").is_null())
        v.numeric = numeric_witness_from_json(j.at("numeric"));
    v.caveat = j.value("caveat", false);
    v.caveat_text = j.value("caveat_text", std::string{});
    return v;
}

json to_json(const Certificate& c) {
    json j;
    j["dims"] = c.shape().dims();
    j["r"] = c.r().get_str();
    j["k"] = c.k().get_str();
    json steps = json::array();
    for (const Certificate::Step& s : c.derivation()) {
        json sj;
        sj["rule"] = s.rule;
        if (s.rule == "extend") sj["m"] = s.m;
        sj["r"] = s.r.get_str();
        sj["k"] = s.k.get_str();
        sj["dims"] = s.dims;
        if (s.base) sj["base"] = to_json(*s.base);
        steps.push_back(std::move(sj));
    }
    j["derivation"] = std::move(steps);
    return j;
}

json to_json(const SecantDimension& s) {
    json j;
    j["dims"] = s.dims;
    j["k"] = s.k;
    j["expected"] = s.expected;
    j["actual"] = s.actual;
    j["defect"] = s.defect;
    j["prime"] = s.prime;
    j["seed"] = s.seed;
    return j;
}

json to_json(const BoundsReport& b) {
    json j;
    j["k_c"] = b.kc.get_str();
    j["k_c_decimal"] = decimal_string(b.kc);
    json rules = json::array();
    for (const BoundEntry& e : b.closed_form) {
        json ej;
        ej["rule"] = e.rule;
        ej["k"] = e.k.get_str();
        ej["formula"] = e.detail;
        rules.push_back(std::move(ej));
    }
    j["closed_form"] = std::move(rules);
    j["engine_k"] = b.engine_k.get_str();
    if (b.engine) j["engine"] = to_json(*b.engine);
    j["best_k"] = b.best_k.get_str();
    j["best_rule"] = b.best_rule;
    return j;
}

}  // namespace sw
