#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "qtc/search.hpp"

using namespace qtc;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qtc_search_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json small_random_config() {
    return json{{"q", 2},         {"m", json::array({5, 9})}, {"ell", 2},       {"form", "two-gen-p1"},
                {"sampling", "random"}, {"trials", 6},         {"seed", 42},     {"min_d", 3},
                {"timestamp", "2000-01-01T00:00:00Z"}};
}

}  // namespace

TEST(Targets, ParseAndClassify) {
    std::istringstream in("q,n,k,d_best\n2,39,24,6\n2,111,38,24\n");
    const TargetTable t = parse_targets(in);
    EXPECT_EQ(classify(2, 39, 24, 6, t), Classification::ties_bklc);
    EXPECT_EQ(classify(2, 111, 38, 25, t), Classification::record_breaking);
    EXPECT_EQ(classify(2, 39, 24, 5, t), Classification::below);
    EXPECT_EQ(classify(3, 39, 24, 6, t), Classification::unknown_target);
}

TEST(Targets, MalformedTables) {
    std::istringstream bad_header("q,n,k,d\n2,3,1,3\n");
    EXPECT_THROW(parse_targets(bad_header), TargetTableError);
    std::istringstream bad_value("q,n,k,d_best\n2,x,1,3\n");
    EXPECT_THROW(parse_targets(bad_value), TargetTableError);
    std::istringstream conflict("q,n,k,d_best\n2,3,1,3\n2,3,1,2\n");
    EXPECT_THROW(parse_targets(conflict), TargetTableError);
    EXPECT_THROW(load_targets("/nonexistent/targets.csv"), TargetTableError);
}

TEST(Config, Validation) {
    EXPECT_THROW(parse_config(json{{"q", 6}}), UnsupportedField);
    EXPECT_THROW(parse_config(json{{"q", 2}, {"colour", 1}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"q", 2}, {"sampling", "pool"}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"q", 2}, {"sampling", "pool"}, {"pool", {"012"}}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"q", 3}, {"a", {0}}}), ConfigError);
    const SearchConfig c = parse_config(small_random_config());
    EXPECT_EQ(c.m_min, 5u);
    EXPECT_EQ(c.m_max, 9u);
    EXPECT_EQ(c.timestamp, "2000-01-01T00:00:00Z");
    EXPECT_EQ(c.hash, parse_config(small_random_config()).hash);
}

TEST(Campaign, EmptyRangeGivesEmptyLedger) {
    const SearchConfig c = parse_config(json{{"q", 2}, {"m", json::array({9, 5})}, {"timestamp", "t"}});
    const CampaignResult r = run_campaign(c);
    EXPECT_EQ(r.ledger.size(), 0u);
    EXPECT_EQ(r.stats.items, 0u);
}

TEST(Campaign, RecordsReverify) {
    const CampaignResult r = run_campaign(parse_config(small_random_config()));
    ASSERT_GT(r.ledger.size(), 0u);
    for (const auto& rec : r.ledger.records()) {
        EXPECT_TRUE(verify_record(rec).empty()) << to_json(rec).dump();
        EXPECT_GE(rec.d, 3u);
        EXPECT_NO_THROW(qt_validate(record_spec(rec)));
    }
}

TEST(Campaign, DeterministicAcrossWorkerCounts) {
    const SearchConfig c = parse_config(small_random_config());
    const std::string p1 = temp_path("one.jsonl"), p3 = temp_path("three.jsonl");
    CampaignOptions o1;
    o1.ledger_path = p1;
    o1.threads = 1;
    CampaignOptions o3;
    o3.ledger_path = p3;
    o3.threads = 3;
    run_campaign(c, o1);
    run_campaign(c, o3);
    EXPECT_FALSE(slurp(p1).empty());
    EXPECT_EQ(slurp(p1), slurp(p3));
}

TEST(Campaign, LedgerIsAppendOnlyAndDeduplicated) {
    const SearchConfig c = parse_config(small_random_config());
    const std::string path = temp_path("dedup.jsonl");
    CampaignOptions o;
    o.ledger_path = path;
    const CampaignResult first = run_campaign(c, o);
    const std::string before = slurp(path);
    const CampaignResult second = run_campaign(c, o);
    EXPECT_EQ(second.ledger.size(), 0u);
    EXPECT_EQ(second.stats.duplicates, first.ledger.size() + first.stats.duplicates);
    EXPECT_EQ(slurp(path), before);

    const Ledger back = read_ledger(path);
    ASSERT_EQ(back.size(), first.ledger.size());
    for (std::size_t i = 0; i < back.size(); ++i)
        EXPECT_EQ(to_json(back.records()[i]).dump(), to_json(first.ledger.records()[i]).dump());
}

TEST(Campaign, CheckpointResume) {
    json j = small_random_config();
    const std::string cursor = temp_path("cursor.txt");
    j["checkpoint"] = cursor;
    const SearchConfig c = parse_config(j);
    CampaignOptions o;
    o.candidate_budget = 1;
    const CampaignResult part = run_campaign(c, o);
    EXPECT_TRUE(part.budget_exhausted);
    EXPECT_EQ(part.stats.items, 1u);
    EXPECT_EQ(read_cursor(cursor), std::optional<std::uint64_t>(0));

    const CampaignResult rest = run_campaign(c);
    const CampaignResult whole = run_campaign(parse_config(small_random_config()));
    EXPECT_EQ(part.stats.items + rest.stats.items, whole.stats.items);
    EXPECT_EQ(part.ledger.size() + rest.ledger.size(), whole.ledger.size());
}

TEST(Campaign, TimestampFromEnvironment) {
    json j = small_random_config();
    j.erase("timestamp");
    setenv("SOURCE_DATE_EPOCH", "86400", 1);
    EXPECT_EQ(parse_config(j).timestamp, "1970-01-02T00:00:00Z");
    unsetenv("SOURCE_DATE_EPOCH");
}

TEST(Campaign, PartitionIndependence) {
    // every code found without the partition is equivalent to one found with it
    json j{{"q", 3},          {"m", 4},     {"a", {2}},         {"ell", 2},        {"form", "two-gen-p1"},
           {"g_min_degree", 2}, {"sampling", "exhaustive"}, {"timestamp", "t"}};
    const CampaignResult with = run_campaign(parse_config(j));
    j["partition"] = "none";
    const CampaignResult without = run_campaign(parse_config(j));
    ASSERT_GT(with.ledger.size(), 0u);
    EXPECT_GT(without.ledger.size(), with.ledger.size());

    std::map<std::vector<std::uint64_t>, std::vector<GeneratorMatrix>> found;
    for (const auto& r : with.ledger.records()) {
        const QTCode c = qt_assemble(record_spec(r));
        found[weight_distribution_bruteforce(c.matrix)].push_back(c.matrix);
    }
    std::size_t extra = 0;
    for (const auto& r : without.ledger.records()) {
        if (with.ledger.contains(r)) continue;
        if (++extra > 40) break;
        const QTCode c = qt_assemble(record_spec(r));
        const auto& bucket = found[weight_distribution_bruteforce(c.matrix)];
        const bool matched = std::any_of(bucket.begin(), bucket.end(),
                                         [&](const GeneratorMatrix& g) { return are_equivalent_exhaustive(c.matrix, g); });
        EXPECT_TRUE(matched) << to_json(r).dump();
    }
    EXPECT_GT(extra, 0u);
}

TEST(Campaign, ExhaustiveCapSkipsItems) {
    const SearchConfig c = parse_config(json{{"q", 2}, {"m", 9}, {"ell", 2}, {"sampling", "exhaustive"},
                                             {"exhaustive_cap", 4}, {"timestamp", "t"}});
    const CampaignResult r = run_campaign(c);
    EXPECT_GT(r.stats.skipped_items, 0u);
    EXPECT_FALSE(r.log.empty());
}

TEST(Records, JsonRoundTripAndClassification) {
    CodeRecord r;
    r.n = 111;
    r.k = 38;
    r.d = 25;
    r.q = 2;
    r.m = 37;
    r.ell = 3;
    r.form = QtForm::TwoGenIdentityG1;
    r.g = "1";
    r.p = "11";
    r.f1 = {"1", "01", "1"};
    r.f2 = {"0", "1", "1"};
    std::istringstream in("q,n,k,d_best\n2,111,38,24\n");
    r.classification = classify(r.q, r.n, r.k, r.d, parse_targets(in));
    EXPECT_EQ(r.classification, Classification::record_breaking);
    const CodeRecord back = record_from_json(json::parse(to_json(r).dump()));
    EXPECT_EQ(to_json(back), to_json(r));
    EXPECT_THROW(record_from_json(json{{"n", 1}}), FormatError);
}
