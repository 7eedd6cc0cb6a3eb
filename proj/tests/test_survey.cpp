#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "support/oracles.hpp"
#include "sw/certify.hpp"
#include "sw/survey.hpp"

using namespace sw;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove(p);
    return p.string();
}

std::vector<std::string> record_lines(const std::string& path) {
    std::vector<std::string> lines;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        if (j.contains("dims")) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> normalized_records(const std::string& path) {
    std::vector<std::string> out;
    for (const std::string& line : record_lines(path)) {
        auto j = nlohmann::json::parse(line);
        j.erase("elapsed_ms");
        out.push_back(j.dump());
    }
    return out;
}

SurveyResult survey(long max_size, const std::string& path,
                    std::uint64_t seed) {
    SurveyOptions opts;
    opts.max_size = max_size;
    opts.out_path = path;
    opts.numeric.seed = seed;
    return run_survey(opts);
}

}  // namespace

TEST_CASE("enumerate_shapes at the smallest sizes") {
    const auto at8 = enumerate_shapes(8);
    REQUIRE(at8.size() == 1);
    CHECK(at8[0].dims() == std::vector<long>{1, 1, 1});

    const auto at16 = enumerate_shapes(16);
    std::set<std::vector<long>> dims;
    for (const auto& s : at16) dims.insert(s.dims());
    CHECK(dims.count({1, 1, 1}));
    CHECK(dims.count({1, 1, 2}));
    CHECK(dims.count({1, 1, 3}));
    CHECK(dims.count({1, 1, 1, 1}));
    CHECK(at16.size() == 4);

    CHECK_THROWS_AS(enumerate_shapes(7), std::invalid_argument);
}

TEST_CASE("enumerate_shapes: every shape fits and has q >= 3") {
    for (const auto& s : enumerate_shapes(100)) {
        CHECK(s.factor_count() >= 3);
        CHECK(s.ambient_points() <= 100);
        // canonical ascending
        for (std::size_t i = 1; i < s.dims().size(); ++i)
            CHECK(s.dims()[i - 1] <= s.dims()[i]);
    }
}

TEST_CASE("enumeration count matches the odometer oracle") {
    CHECK(static_cast<long>(enumerate_shapes(100).size()) ==
          oracle::count_shapes(100));
    CHECK(static_cast<long>(enumerate_shapes(64).size()) ==
          oracle::count_shapes(64));
}

TEST_CASE("survey at max_size 8: one shape, one row, certified") {
    const std::string path = temp_path("sw_survey8.jsonl");
    const SurveyResult r = survey(8, path, 1);
    CHECK(r.total == 1);
    CHECK(r.certified == 1);
    CHECK(r.divergences.empty());
    CHECK(r.numeric_noncertified.empty());
    const auto lines = record_lines(path);
    REQUIRE(lines.size() == 1);
    const auto j = nlohmann::json::parse(lines[0]);
    CHECK(j["dims"] == nlohmann::json::array({1, 1, 1}));
    CHECK(j["k"] == 1);
    CHECK(j["route"] == "numeric");
    CHECK(j["verdict"] == "Identifiable");
    fs::remove(path);
}

TEST_CASE("survey at max_size 36 finds exactly the known failures") {
    const std::string path = temp_path("sw_survey36.jsonl");
    const SurveyResult r = survey(36, path, 7);
    CHECK(r.divergences.empty());
    const std::set<std::pair<std::vector<long>, long>> expect = {
        {{1, 1, 1, 1}, 3}, {{1, 1, 1, 1, 1}, 5}, {{1, 1, 2, 2}, 5},
        {{2, 2, 2}, 4}};
    std::set<std::pair<std::vector<long>, long>> got(
        r.numeric_noncertified.begin(), r.numeric_noncertified.end());
    CHECK(got == expect);
    fs::remove(path);
}

TEST_CASE("routing matches the regime split") {
    const std::string path = temp_path("sw_survey_route.jsonl");
    survey(64, path, 3);
    for (const std::string& line : record_lines(path)) {
        const auto j = nlohmann::json::parse(line);
        const SegreShape s = SegreShape::canonicalize(
            j["dims"].get<std::vector<long>>());
        const bool balanced =
            unbalanced_profile(s).regime == Regime::Balanced;
        CHECK(j["route"] == (balanced ? "numeric" : "corunbal"));
    }
    fs::remove(path);
}

TEST_CASE("two runs with the same seed produce identical records") {
    const std::string p1 = temp_path("sw_det_a.jsonl");
    const std::string p2 = temp_path("sw_det_b.jsonl");
    survey(48, p1, 99);
    survey(48, p2, 99);
    // byte-identical up to the wall-clock field
    CHECK(normalized_records(p1) == normalized_records(p2));
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("interrupted surveys resume without recomputing") {
    const std::string full = temp_path("sw_resume_full.jsonl");
    const SurveyResult first = survey(48, full, 4242);
    CHECK(first.resumed_rows == 0);

    // truncate to simulate a crash after 5 records
    const auto lines = record_lines(full);
    REQUIRE(lines.size() >= 10);
    const std::string partial = temp_path("sw_resume_partial.jsonl");
    {
        std::ofstream out(partial);
        for (std::size_t i = 0; i < 5; ++i) out << lines[i] << '\n';
    }
    const SurveyResult resumed = survey(48, partial, 4242);
    CHECK(resumed.resumed_rows == 5);
    CHECK(resumed.total == first.total);
    CHECK(resumed.divergences.size() == first.divergences.size());
    CHECK(normalized_records(partial) == normalized_records(full));

    // a second identical rerun is a no-op and leaves the file unchanged
    const auto before = fs::file_size(partial);
    const SurveyResult rerun = survey(48, partial, 4242);
    CHECK(rerun.resumed_rows == rerun.total);
    CHECK(fs::file_size(partial) == before);
    fs::remove(full);
    fs::remove(partial);
}

TEST_CASE("summary line carries the contract fields") {
    const std::string path = temp_path("sw_summary.jsonl");
    const SurveyResult r = survey(16, path, 5);
    std::ifstream in(path);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    const auto j = nlohmann::json::parse(last);
    CHECK(j["max_size"] == 16);
    CHECK(j["total"] == r.total);
    CHECK(j["certified"] == r.certified);
    CHECK(j["table_hits"] == r.table_hits);
    CHECK(j["divergences"] == 0);
    fs::remove(path);
}

TEST_CASE("unwritable output paths raise an i/o error") {
    SurveyOptions opts;
    opts.max_size = 8;
    opts.out_path = "/nonexistent-dir/sw.jsonl";
    CHECK_THROWS_AS(run_survey(opts), SurveyIoError);
    opts.out_path = "";
    CHECK_THROWS_AS(run_survey(opts), SurveyIoError);
}

TEST_CASE("max_size bounds are enforced") {
    SurveyOptions opts;
    opts.out_path = temp_path("sw_guard.jsonl");
    opts.max_size = 7;
    CHECK_THROWS_AS(run_survey(opts), std::invalid_argument);
    opts.max_size = 513;
    CHECK_THROWS_AS(run_survey(opts), std::invalid_argument);
}
