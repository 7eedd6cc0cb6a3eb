#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sw/shape.hpp"
#include "sw/tangency.hpp"

namespace sw {

struct SurveyIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All canonical shapes with q >= 3 factors and prod(a_i+1) <= max_size, in
/// lexicographic order with prefixes first. max_size must be >= 8 (the
/// smallest admissible shape is (1,1,1)).
std::vector<SegreShape> enumerate_shapes(long max_size);

struct SurveyOptions {
    long max_size = 100;
    std::string out_path;
    NumericConfig numeric;
    int threads = 0;  // 0 = automatic
};

struct SurveyRecord {
    std::vector<long> dims;
    long k = 0;
    std::string route;    // "numeric" | "corunbal"
    std::string verdict;  // final classification for this row
    std::string rule;
    std::optional<std::uint64_t> prime;
    std::uint64_t seed = 0;
    std::optional<long> jacobian_rank;
    std::optional<long> span_dim;
    double elapsed_ms = 0.0;
    bool numeric_certified = false;
    bool table_match = false;
};

struct SurveyDivergence {
    std::vector<long> dims;
    long k = 0;
    std::string what;
};

struct SurveyResult {
    long max_size = 0;
    long total = 0;
    long certified = 0;
    long table_hits = 0;
    std::vector<SurveyDivergence> divergences;
    std::vector<std::pair<std::vector<long>, long>> numeric_noncertified;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    long resumed_rows = 0;
};

/// Sweeps every shape from enumerate_shapes(max_size). Boundary and
/// unbalanced shapes are classified by the closed-form corollary; balanced
/// shapes run the numeric tangency check for every k below the critical
/// rank, plus any k matched by the exceptions table (two of its parametrized
/// rows sit just above k_c). Rows stream to `out_path` as one JSON object
/// per line, a summary object is written last, and an interrupted file is
/// resumed rather than recomputed. A divergence is a balanced row whose
/// numeric outcome disagrees with the exceptions table.
SurveyResult run_survey(const SurveyOptions& options);

}  // namespace sw
