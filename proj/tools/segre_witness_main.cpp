// Command-line front end: closed-form classification with numeric
// escalation (`check`), bound reports (`bounds`), secant dimensions
// (`secant`) and the systematic survey (`survey`).
//
// Exit codes: 0 completed verdict, 1 survey divergences, 2 invalid input,
// 3 out of method (the tangent span fills the ambient space), 4 i/o error.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sw/certify.hpp"
#include "sw/json_io.hpp"
#include "sw/rational.hpp"
#include "sw/shape.hpp"
#include "sw/survey.hpp"
#include "sw/tangency.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDivergence = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitOutOfMethod = 3;
constexpr int kExitIo = 4;

constexpr long kLongRunAmbient = 8192;  // 2^13; beyond needs --allow-long

long parse_long(const std::string& s) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

/// Dims syntax: a comma-separated list where each term is either a single
/// dimension or a power `AxC` (C copies of P^A), e.g. "2,3,3" or "1x12".
std::vector<long> parse_dims(const std::string& text) {
    std::vector<long> dims;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string term = text.substr(pos, comma - pos);
        if (term.empty())
            throw std::invalid_argument("empty term in --dims");
        const std::size_t x = term.find('x');
        if (x == std::string::npos) {
            dims.push_back(parse_long(term));
        } else {
            const long a = parse_long(term.substr(0, x));
            const long count = parse_long(term.substr(x + 1));
            if (count < 1)
                throw std::invalid_argument("power count must be >= 1");
            dims.insert(dims.end(), static_cast<std::size_t>(count), a);
        }
        pos = comma + 1;
    }
    return dims;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SEGRE_WITNESS_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "SEGRE_WITNESS_SEED is not an integer");
        }
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void print_verdict_text(const sw::SegreShape& shape, long k,
                        const sw::Verdict& v) {
    const sw::Rational kc = sw::critical_rank(shape);
    std::cout << "shape " << shape.to_string() << "  n = " << shape.dim()
              << "  N = " << shape.ambient_dim().get_str() << "  k = " << k
              << "\n";
    std::cout << "k_c = " << kc.get_str() << " = " << sw::decimal_string(kc)
              << "\n";
    std::cout << "verdict: " << sw::to_string(v.status) << "  [" << v.rule
              << "]\n";
    if (!v.detail.empty()) std::cout << "  " << v.detail << "\n";
    if (v.witness) std::cout << "  witness: " << *v.witness << "\n";
    if (v.numeric) {
        std::cout << "  numeric: prime " << v.numeric->prime << ", seed "
                  << v.numeric->seed << ", terracini rank "
                  << v.numeric->terracini_rank << ", jacobian rank "
                  << v.numeric->jacobian_rank << " (dim X = " << shape.dim()
                  << ")\n";
    }
    if (v.caveat) std::cout << "  caveat: " << v.caveat_text << "\n";
}

struct CommonOptions {
    std::string dims_text;
    std::optional<std::uint64_t> seed;
    int prime_bits = 31;
    int trials = 3;
    bool json = false;
    bool allow_long = false;
};

sw::SegreShape make_shape(const std::string& dims_text) {
    return sw::SegreShape::canonicalize(parse_dims(dims_text));
}

void check_long_gate(const sw::SegreShape& shape, bool allow_long) {
    if (!shape.ambient_fits(kLongRunAmbient) && !allow_long)
        throw std::invalid_argument(
            "ambient space exceeds 2^13 points; pass --allow-long to run "
            "anyway");
}

int cmd_check(const CommonOptions& common, long k, std::optional<long> r) {
    const sw::SegreShape shape = make_shape(common.dims_text);
    if (shape.factor_count() < 3)
        throw std::invalid_argument(
            "unsupported shape: need at least three factors (two-factor "
            "tensors are matrices, never identifiable for k >= 2)");
    if (k < 1) throw std::invalid_argument("--k must be >= 1");
    check_long_gate(shape, common.allow_long);
    const std::uint64_t seed = resolve_seed(common.seed);
    if (!common.json) std::cout << "master seed: " << seed << "\n";

    sw::Verdict verdict = sw::classify(shape, k);
    std::optional<sw::TangencyReport> report;
    if (verdict.status == sw::Status::Unknown || r.has_value()) {
        // Escalate to the randomized tangency certificate.
        sw::TangencyQuery query;
        query.shape = shape;
        query.k = k;
        query.r = r;
        query.trials = common.trials;
        query.prime_bits = common.prime_bits;
        query.seed = seed;
        const sw::TangencyReport rep = sw::tangency_check(query);
        report = rep;
        if (rep.certified) {
            verdict.status = sw::Status::Identifiable;
            verdict.rule = "numeric-tangency";
            verdict.detail =
                r ? "general subspace of dimension " + std::to_string(*r) +
                        " certified tangent only at the sampled points"
                  : "tangent span certified tangent only at the sampled "
                    "points";
            verdict.numeric = rep.witness();
        } else if (verdict.status == sw::Status::Unknown) {
            verdict.rule = "numeric-inconclusive";
            verdict.detail = "no certificate after " +
                             std::to_string(rep.trials_run) + " trials";
            verdict.numeric = rep.witness();
        }
    }

    if (common.json) {
        nlohmann::json j;
        j["dims"] = shape.dims();
        j["k"] = k;
        j["seed"] = seed;
        j["k_c"] = sw::critical_rank(shape).get_str();
        j["verdict"] = sw::to_json(verdict);
        if (report) j["report"] = sw::to_json(*report);
        std::cout << j.dump(2) << "\n";
    } else {
        print_verdict_text(shape, k, verdict);
    }
    return kExitOk;
}

int cmd_bounds(const CommonOptions& common) {
    const sw::SegreShape shape = make_shape(common.dims_text);
    const sw::BoundsReport bounds = sw::best_bound(shape);
    if (common.json) {
        nlohmann::json j = sw::to_json(bounds);
        j["dims"] = shape.dims();
        // Known non-identifiable rows for this shape, any k.
        nlohmann::json table = nlohmann::json::array();
        for (long k = 1; k <= shape.dim() * 4 + 8; ++k)
            if (auto row = sw::exceptions_table_match(shape, k))
                table.push_back({{"k", row->k}, {"witness", row->witness}});
        j["known_non_identifiable"] = std::move(table);
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "shape " << shape.to_string() << "  n = " << shape.dim()
              << "  N = " << shape.ambient_dim().get_str() << "\n";
    std::cout << "k_c = " << bounds.kc.get_str() << " = "
              << sw::decimal_string(bounds.kc) << "\n";
    if (bounds.closed_form.empty())
        std::cout << "no closed-form bound applies\n";
    for (const sw::BoundEntry& e : bounds.closed_form)
        std::cout << "  " << e.rule << ": k <= " << e.k.get_str() << "   ["
                  << e.detail << "]\n";
    if (bounds.engine) {
        std::cout << "  engine: k <= " << bounds.engine_k.get_str()
                  << " via\n";
        for (const auto& step : bounds.engine->derivation()) {
            std::cout << "    " << step.rule;
            if (step.rule == "extend") std::cout << " m=" << step.m;
            std::cout << " -> (r = " << step.r.get_str()
                      << ", k = " << step.k.get_str() << ") on (";
            for (std::size_t i = 0; i < step.dims.size(); ++i)
                std::cout << (i ? "," : "") << step.dims[i];
            std::cout << ")\n";
        }
    }
    std::cout << "best: k <= " << bounds.best_k.get_str() << "  ["
              << bounds.best_rule << "]\n";
    for (long k = 1; k <= shape.dim() * 4 + 8; ++k)
        if (auto row = sw::exceptions_table_match(shape, k))
            std::cout << "note: k = " << row->k
                      << " is a known non-identifiable case (" << row->witness
                      << ")\n";
    return kExitOk;
}

int cmd_secant(const CommonOptions& common, long k) {
    const sw::SegreShape shape = make_shape(common.dims_text);
    check_long_gate(shape, common.allow_long);
    const std::uint64_t seed = resolve_seed(common.seed);
    sw::NumericConfig cfg;
    cfg.prime_bits = common.prime_bits;
    cfg.trials = common.trials;
    cfg.seed = seed;
    const sw::SecantDimension s = sw::secant_dimension(shape, k, cfg);
    if (common.json) {
        std::cout << sw::to_json(s).dump(2) << "\n";
    } else {
        std::cout << "master seed: " << seed << "\n";
        std::cout << "shape " << shape.to_string() << " k = " << k
                  << ": secant dimension expected " << s.expected
                  << ", actual " << s.actual << ", defect " << s.defect
                  << " (prime " << s.prime << ")\n";
    }
    return kExitOk;
}

int cmd_survey(const CommonOptions& common, long max_size,
               const std::string& out_path) {
    const std::uint64_t seed = resolve_seed(common.seed);
    std::cout << "master seed: " << seed << "\n";
    sw::SurveyOptions opts;
    opts.max_size = max_size;
    opts.out_path = out_path;
    opts.numeric.prime_bits = common.prime_bits;
    opts.numeric.trials = common.trials;
    opts.numeric.seed = seed;
    const sw::SurveyResult res = sw::run_survey(opts);
    std::cout << "surveyed " << res.total << " (shape, k) rows up to size "
              << res.max_size << " (" << res.resumed_rows
              << " resumed), certified " << res.certified << ", known-case "
              << "hits " << res.table_hits << ", wall "
              << static_cast<long>(res.wall_ms) << " ms\n";
    std::cout << "non-certified numeric rows:";
    if (res.numeric_noncertified.empty()) std::cout << " none";
    std::cout << "\n";
    for (const auto& [dims, k] : res.numeric_noncertified) {
        std::cout << "  (";
        for (std::size_t i = 0; i < dims.size(); ++i)
            std::cout << (i ? "," : "") << dims[i];
        std::cout << ") k = " << k << "\n";
    }
    if (!res.divergences.empty()) {
        std::cout << "DIVERGENCES:\n";
        for (const auto& d : res.divergences) {
            std::cout << "  (";
            for (std::size_t i = 0; i < d.dims.size(); ++i)
                std::cout << (i ? "," : "") << d.dims[i];
            std::cout << ") k = " << d.k << ": " << d.what << "\n";
        }
        return kExitDivergence;
    }
    std::cout << "no divergences\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "segre-witness: identifiability certificates for general tensors on "
        "Segre products"};
    app.require_subcommand(1);

    CommonOptions common;
    long k = 0;
    std::optional<long> r;
    long max_size = 100;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd, bool needs_dims) {
        if (needs_dims)
            cmd->add_option("--dims", common.dims_text,
                            "factor dimensions, e.g. 2,3,3 or 1x12")
                ->required();
        cmd->add_option("--seed", common.seed,
                        "master seed (default: env SEGRE_WITNESS_SEED or "
                        "random)");
        cmd->add_option("--prime-bits", common.prime_bits,
                        "bit width of the working primes (31..62)")
            ->default_val(31);
        cmd->add_option("--trials", common.trials,
                        "retries with fresh prime and points")
            ->default_val(3);
        cmd->add_flag("--json", common.json, "machine-readable output");
        cmd->add_flag("--allow-long", common.allow_long,
                      "permit runs with ambient spaces above 2^13 points");
    };

    CLI::App* check = app.add_subcommand(
        "check", "classify (shape, k); escalate to the numeric certificate "
                 "when no closed form applies");
    add_common(check, true);
    check->add_option("--k", k, "number of tangency points")->required();
    check->add_option("--r", r,
                      "subspace dimension for the padded check (default: "
                      "the tangent span)");

    CLI::App* bounds =
        app.add_subcommand("bounds", "closed-form and engine bounds");
    add_common(bounds, true);

    CLI::App* secant = app.add_subcommand(
        "secant", "dimension of the k-secant variety via Terracini");
    add_common(secant, true);
    secant->add_option("--k", k, "number of points")->required();

    CLI::App* survey = app.add_subcommand(
        "survey", "sweep all shapes up to --max-size and diff against the "
                  "known non-identifiable cases");
    add_common(survey, false);
    survey->add_option("--max-size", max_size,
                       "bound on prod(a_i + 1), 8..512")
        ->default_val(100);
    survey->add_option("--out", out_path, "output record file (JSONL)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (check->parsed()) return cmd_check(common, k, r);
        if (bounds->parsed()) return cmd_bounds(common);
        if (secant->parsed()) return cmd_secant(common, k);
        if (survey->parsed()) return cmd_survey(common, max_size, out_path);
        return kExitInvalid;
    } catch (const sw::PreconditionError& e) {
        std::cerr << "out of method: " << e.what() << "\n";
        return kExitOutOfMethod;
    } catch (const sw::SurveyIoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
