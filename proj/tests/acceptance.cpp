// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "qtc/qtc.hpp"
#include "random_specs.hpp"

using namespace qtc;

namespace {

// pinned limits
constexpr double kGoldenQuickSeconds = 10;
constexpr double kHeaviestRowSeconds = 30 * 60;
constexpr double kPropertySeconds = 60;
constexpr double kRecordQuickSeconds = 60;
constexpr double kTwoGenSeconds = 5 * 60;
constexpr double kOneGenSeconds = 2 * 60;
constexpr double kTightnessSeconds = 60;
constexpr double kEngineSeconds = 5 * 60;
constexpr double kEquivalenceSeconds = 2 * 60;
constexpr double kSearchSeconds = 2 * 60;

constexpr int kTwoGenSpecs = 1000;
constexpr int kOneGenSpecs = 500;
constexpr int kTightnessInstances = 50;
constexpr int kEngineCodes = 500;
constexpr double kEnumerable = 1 << 20;  // q^k ceiling for brute-force oracles

const std::string kData = QTC_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Stopwatch {
public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << s << " s";
    return os.str();
}

/// Records the first few failures and counts the rest.
struct Failures {
    std::vector<std::string> notes;
    std::size_t count = 0;
    void add(std::string s) {
        if (notes.size() < 3) notes.push_back(std::move(s));
        ++count;
    }
    [[nodiscard]] std::string summary() const {
        std::string out = std::to_string(count) + " failures";
        for (const auto& n : notes) out += "; " + n;
        return out;
    }
};

std::vector<GoldenEntry> golden() {
    static const auto rows = load_golden(kData + "/golden_tables.txt");
    return rows;
}

bool time_ok(Outcome& o, const Stopwatch& sw, double limit) {
    if (sw.seconds() <= limit) return true;
    o.pass = false;
    o.detail += "; exceeded " + fmt(limit);
    return false;
}

std::size_t cc_distance_oracle(const QTGeneratorSpec& s) {
    return oracle::min_distance_prime(cc_generator_matrix(cc_make(*s.field, s.m, s.a, s.g)));
}

// ---------------------------------------------------------------- criteria

Outcome golden_quick() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::size_t rows = 0;
    for (const auto& e : golden()) {
        if (e.quarantined) continue;
        ++rows;
        VerifyOptions opt;
        opt.check_distance = false;
        opt.check_property = false;
        const auto rep = verify_row(e.row, Tier::quick, opt);
        if (!rep.passed()) f.add(e.tag + " " + rep.params);
    }
    o.pass = f.count == 0 && rows > 0;
    o.detail = std::to_string(rows) + " rows assembled, n and k exact, " + f.summary() + " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kGoldenQuickSeconds);
    return o;
}

Outcome golden_full() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::size_t rows = 0;
    double slowest = 0;
    std::string slowest_tag;
    for (const auto& e : golden()) {
        if (e.quarantined || e.row.k > 40 || e.row.n > 105) continue;
        ++rows;
        VerifyOptions opt;
        opt.check_property = false;
        opt.threads = std::max(1U, std::thread::hardware_concurrency());
        Stopwatch row_sw;
        const auto rep = verify_row(e.row, Tier::full, opt);
        const double t = row_sw.seconds();
        if (t > slowest) slowest = t, slowest_tag = e.tag;
        if (!rep.passed()) f.add(e.tag + " " + rep.params + " " + rep.assertions.back().detail);
        if (t > kHeaviestRowSeconds) f.add(e.tag + " took " + fmt(t));
    }
    o.pass = f.count == 0 && rows > 0;
    o.detail = std::to_string(rows) + " rows with exact d certified, " + f.summary() + ", slowest " + slowest_tag + " " +
               fmt(slowest) + " (" + fmt(sw.seconds()) + ")";
    return o;
}

Outcome golden_properties() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::size_t lcd = 0, dc = 0;
    for (const auto& e : golden()) {
        if (e.quarantined) continue;
        const bool lcd_table = e.tag.starts_with("T1-") || e.tag.starts_with("T2-");
        const bool dc_table = e.tag.starts_with("T3-");
        if (!lcd_table && !dc_table) continue;
        const QTCode code = qt_assemble(row_spec(e.row), DefectPolicy::report);
        if (lcd_table) {
            ++lcd;
            if (!is_lcd(code.matrix)) f.add(e.tag + " not LCD");
        } else {
            ++dc;
            if (!is_dual_containing(code.matrix)) f.add(e.tag + " not dual-containing");
        }
    }
    o.pass = f.count == 0 && lcd > 0 && dc > 0;
    o.detail = std::to_string(lcd) + " LCD rows, " + std::to_string(dc) + " dual-containing rows, " + f.summary() +
               " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kPropertySeconds);
    return o;
}

Outcome record_code() {
    Outcome o;
    const auto rows = golden();
    const auto it = std::find_if(rows.begin(), rows.end(), [](const GoldenEntry& e) { return e.tag == "R-01"; });
    if (it == rows.end()) return {false, "R-01 missing from the golden table"};
    const TableRow& row = it->row;
    const auto witnesses = load_witnesses(kData + "/witnesses.txt");

    Stopwatch quick_sw;
    VerifyOptions opt;
    opt.check_property = false;
    if (auto w = witnesses.find("R-01"); w != witnesses.end()) opt.witness_hex = w->second;
    const auto rep = verify_row(row, Tier::quick, opt);
    const double quick_t = quick_sw.seconds();
    std::string quick_detail;
    for (const auto& a : rep.assertions)
        if (a.name == "d<=" || a.name == "d>=") quick_detail += a.name + " " + a.detail + ", ";
    const bool quick_ok = rep.passed() && opt.witness_hex && quick_t <= kRecordQuickSeconds;

    Stopwatch exact_sw;
    const QTCode code = qt_assemble(row_spec(row));
    DistanceOptions dopt;
    dopt.budget = std::uint64_t{1} << 40;
    dopt.threads = std::max(1U, std::thread::hardware_concurrency());
    const DistanceResult exact = min_distance(code.matrix, dopt);
    const GeneratorMatrix ext = extend(code.matrix);
    const DistanceResult ext_d = min_distance(ext, dopt);
    const double exact_t = exact_sw.seconds();
    const bool exact_ok = exact.is_exact() && exact.upper == 25 && code.n() == 111 && code.k() == 38;
    const bool ext_ok = ext_d.is_exact() && ext_d.upper == 26 && ext.length() == 112 && rank(ext) == 38;

    o.pass = quick_ok && exact_ok && ext_ok;
    o.detail = "quick tier " + std::string(quick_ok ? "ok" : "FAILED") + " (" + quick_detail + fmt(quick_t) +
               "); exact [111,38," + to_string(exact.as_status()) + "]_2; extended [" + std::to_string(ext.length()) +
               "," + std::to_string(rank(ext)) + "," + to_string(ext_d.as_status()) + "]_2 (" + fmt(exact_t) + ")";
    return o;
}

Outcome two_generator_suite() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::mt19937_64 rng(32);
    specgen::Limits lim;
    lim.max_size = kEnumerable;
    std::size_t p_one = 0;
    for (int t = 0; t < kTwoGenSpecs; ++t) {
        const QtForm form = t % 2 ? QtForm::TwoGenP1 : QtForm::TwoGenGeneral;
        const QTGeneratorSpec s = specgen::random_spec(rng, form, lim);
        const QTCode c = qt_assemble(s, DefectPolicy::report);
        const std::string where = "#" + std::to_string(t) + " q=" + std::to_string(s.field->q()) + " m=" +
                                  std::to_string(s.m) + " ell=" + std::to_string(s.ell);
        if (c.rank != c.k1 + c.k2) f.add(where + " rank " + std::to_string(c.rank));
        if (s.p.is_one()) {
            ++p_one;
            if (c.rank != 2 * c.k1) f.add(where + " p=1 but k != 2 k1");
        }
        const std::size_t dg = cc_distance_oracle(s);
        const std::size_t d = oracle::min_distance_prime(c.matrix);
        if (d < dg) f.add(where + " d=" + std::to_string(d) + " < d(C_g)=" + std::to_string(dg));
    }
    o.pass = f.count == 0 && p_one > 0;
    o.detail = std::to_string(kTwoGenSpecs) + " specs (" + std::to_string(p_one) + " with p=1), " + f.summary() + " (" +
               fmt(sw.seconds()) + ")";
    time_ok(o, sw, kTwoGenSeconds);
    return o;
}

Outcome one_generator_suite() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::mt19937_64 rng(31);
    specgen::Limits lim;
    lim.max_size = kEnumerable;
    for (int t = 0; t < kOneGenSpecs; ++t) {
        const QTGeneratorSpec s = specgen::random_spec(rng, QtForm::OneGen, lim);
        const QTCode c = qt_assemble(s, DefectPolicy::report);
        const std::size_t dg = cc_distance_oracle(s);
        const std::size_t d = oracle::min_distance_prime(c.matrix);
        if (d < s.ell * dg)
            f.add("#" + std::to_string(t) + " d=" + std::to_string(d) + " < " + std::to_string(s.ell) + "*" +
                  std::to_string(dg));
    }
    o.pass = f.count == 0;
    o.detail = std::to_string(kOneGenSpecs) + " specs, " + f.summary() + " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kOneGenSeconds);
    return o;
}

Outcome tightness() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::mt19937_64 rng(37);
    specgen::Limits lim;
    lim.max_m = 12;
    lim.max_ell = 4;
    lim.max_size = kEnumerable;
    std::size_t attained = 0;
    for (int t = 0; t < kTightnessInstances; ++t) {
        // p = 1 and f2[j] = f1[j] for j >= 1
        QTGeneratorSpec s = specgen::random_spec(rng, QtForm::TwoGenP1, lim);
        for (std::size_t j = 1; j < s.ell; ++j) s.f2[j] = s.f1[j];
        const QTCode c = qt_assemble(s, DefectPolicy::report);
        const ConstacyclicCode cc = cc_make(*s.field, s.m, s.a, s.g);
        const std::size_t dg = oracle::min_distance_prime(cc_generator_matrix(cc));
        const DistanceResult low = min_distance(cc_generator_matrix(cc));
        const Poly word(*s.field, low.witness);
        const Poly u = word / s.g;
        const Vec w = tightness_codeword(c, u);
        std::size_t wt = 0;
        try {
            wt = witness_weight(c.matrix, w);
        } catch (const NotACodeword&) {
            f.add("#" + std::to_string(t) + " not a codeword");
            continue;
        }
        if (wt == dg && oracle::weight(w) == dg) ++attained;
        else f.add("#" + std::to_string(t) + " weight " + std::to_string(wt) + " vs d(C_g)=" + std::to_string(dg));
    }
    o.pass = f.count == 0 && attained >= kTightnessInstances;
    o.detail = std::to_string(attained) + " of " + std::to_string(kTightnessInstances) +
               " instances reach weight d(C_g), " + f.summary() + " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kTightnessSeconds);
    return o;
}

Outcome engine_oracle() {
    Stopwatch sw;
    Outcome o;
    Failures f;
    std::mt19937_64 rng(38);
    const unsigned fields[] = {2, 3, 5, 7};
    for (int t = 0; t < kEngineCodes; ++t) {
        const unsigned q = fields[t % 4];
        const Field& F = field_make(q);
        const auto k_cap = std::min<std::size_t>(10, std::size_t(std::log(kEnumerable) / std::log(double(q))));
        const std::size_t k = 1 + rng() % k_cap;
        const std::size_t n = k + rng() % (20 - k + 1);
        const GeneratorMatrix g = oracle::random_matrix(F, n, k, rng);
        if (rank(g) == 0) continue;
        const std::size_t want = oracle::min_distance_prime(g);
        std::vector<DistanceResult> runs;
        for (unsigned threads : {1U, 2U, 8U}) {
            DistanceOptions opt;
            opt.threads = threads;
            runs.push_back(min_distance(g, opt));
        }
        const std::string where = "#" + std::to_string(t) + " q=" + std::to_string(q) + " [" + std::to_string(n) +
                                  "," + std::to_string(k) + "]";
        if (!runs[0].is_exact() || runs[0].upper != want)
            f.add(where + " got " + to_string(runs[0].as_status()) + " want " + std::to_string(want));
        for (std::size_t i = 1; i < runs.size(); ++i)
            if (runs[i].status != runs[0].status || runs[i].upper != runs[0].upper ||
                runs[i].witness != runs[0].witness)
                f.add(where + " differs across thread counts");
    }
    o.pass = f.count == 0;
    o.detail = std::to_string(kEngineCodes) + " codes x threads {1,2,8}, " + f.summary() + " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kEngineSeconds);
    return o;
}

std::vector<std::uint64_t> distribution_via_smaller_side(const GeneratorMatrix& g, bool& enumerable) {
    const std::size_t n = g.length(), k = rank(g);
    const bool use_dual = n - k < k;
    const GeneratorMatrix side = use_dual ? dual(g) : rref(g).matrix;
    enumerable = std::pow(double(g.field().q()), double(side.row_count())) <= kEnumerable;
    if (!enumerable) return {};
    // equal dual distributions force equal code distributions, so either side can be compared
    auto dist = oracle::weight_distribution_prime(side);
    dist.push_back(use_dual);
    return dist;
}

Outcome equivalence() {
    Stopwatch sw;
    Outcome o;
    Failures f;

    const Field& F2 = field_make(2);
    const auto classes = partition(cc_enumerate(F2, 7, 1, 4), PartitionMode::multiplier);
    const Poly g1 = parse_coeffs("1101", F2), g2 = parse_coeffs("1011", F2);
    bool together = false;
    for (const auto& c : classes) {
        const bool has1 = std::find(c.members.begin(), c.members.end(), g1) != c.members.end();
        const bool has2 = std::find(c.members.begin(), c.members.end(), g2) != c.members.end();
        together = together || (has1 && has2);
    }
    const GeneratorMatrix m1 = cc_generator_matrix(cc_make(F2, 7, 1, g1));
    const GeneratorMatrix m2 = cc_generator_matrix(cc_make(F2, 7, 1, g2));
    const bool exhaustive = are_equivalent_exhaustive(m1, m2);
    // the coordinate map j -> -j mod 7 sends one code onto the other
    std::set<std::vector<Elem>> mapped;
    for (const auto& w : oracle::codewords(m1)) {
        std::vector<Elem> v(7);
        for (std::size_t j = 0; j < 7; ++j) v[(7 - j) % 7] = w[j];
        mapped.insert(v);
    }
    const bool by_hand = mapped == oracle::codewords(m2);
    if (!together) f.add("degree-3 generators split");
    if (!exhaustive) f.add("exhaustive oracle rejects");
    if (!by_hand) f.add("reversal map does not match");

    std::size_t classes_checked = 0, codes_checked = 0, skipped = 0;
    for (unsigned q : {2U, 3U, 5U, 7U}) {
        const Field& F = field_make(q);
        for (unsigned a = 1; a < q; ++a)
            for (std::size_t m = 2; m <= 15; ++m) {
                for (const auto& c : partition(cc_enumerate(F, m, Elem(a)), PartitionMode::refined)) {
                    std::optional<std::vector<std::uint64_t>> first;
                    bool mixed = false, all_enumerable = true;
                    for (const auto& g : c.members) {
                        bool enumerable = false;
                        const auto dist =
                            distribution_via_smaller_side(cc_generator_matrix(cc_make(F, m, Elem(a), g)), enumerable);
                        if (!enumerable) {
                            all_enumerable = false;
                            break;
                        }
                        ++codes_checked;
                        if (!first) first = dist;
                        else if (*first != dist) mixed = true;
                    }
                    if (!all_enumerable) {
                        ++skipped;
                        continue;
                    }
                    ++classes_checked;
                    if (mixed)
                        f.add("q=" + std::to_string(q) + " m=" + std::to_string(m) + " a=" + std::to_string(a) +
                              " class of " + c.representative.to_string() + " mixes distributions");
                }
            }
    }
    o.pass = f.count == 0;
    o.detail = "m=7 degree-3 pair in one class and equivalent; " + std::to_string(classes_checked) +
               " refined classes (" + std::to_string(codes_checked) + " codes, q in {2,3,5,7}, m <= 15) uniform, " +
               std::to_string(skipped) + " too large to enumerate, " + f.summary() + " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kEquivalenceSeconds);
    return o;
}

Outcome search_reproduction() {
    Stopwatch sw;
    Outcome o;
    const SearchConfig cfg = load_config(kData + "/campaign_39_24.json");
    CampaignOptions opt;
    opt.targets_path = kData + "/targets_39_24.csv";
    const CampaignResult res = run_campaign(cfg, opt);
    const std::vector<std::string> f1{"010010111011", "011000110001", "111011011011"};
    const std::vector<std::string> f2{"0", "010101110011", "0001011001"};
    const CodeRecord* hit = nullptr;
    for (const auto& r : res.ledger.records())
        if (r.n == 39 && r.k == 24 && r.g == "11" && r.p == "1" && r.f1 == f1 && r.f2 == f2) hit = &r;
    const bool reemitted = hit && hit->d == 6 && hit->d_status == "exact";
    const bool tie = hit && hit->classification == Classification::ties_bklc && hit->target_d == 6;

    const TargetTable record_targets = load_targets(kData + "/targets_111_38.csv");
    const Classification rec = classify(2, 111, 38, 25, record_targets);

    o.pass = reemitted && tie && rec == Classification::record_breaking;
    o.detail = std::string("[39,24,6]_2 ") + (reemitted ? "re-emitted" : "NOT re-emitted") + " from " +
               std::to_string(res.stats.candidates) + " candidates, classified " +
               (hit ? to_string(hit->classification) : "-") + "; [111,38,25]_2 vs d_best=24 classified " +
               to_string(rec) + " (" + fmt(sw.seconds()) + ")";
    time_ok(o, sw, kSearchSeconds);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments pick criteria by number, e.g. `acceptance 5 6`
    std::set<std::size_t> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"golden tables, quick tier n/k", golden_quick},
        {"golden tables, exact d (k <= 40, n <= 105)", golden_full},
        {"golden tables, LCD and dual-containing flags", golden_properties},
        {"record code [111,38,25]_2 and its extension", record_code},
        {"two-generator bound and dimension suite", two_generator_suite},
        {"one-generator bound suite", one_generator_suite},
        {"tightness witnesses", tightness},
        {"distance engine vs brute force, thread invariance", engine_oracle},
        {"equivalence partition sanity", equivalence},
        {"search reproduction and classification", search_reproduction},
    };
    int failures = 0;
    std::size_t ran = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(i + 1)) continue;
        ++ran;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << "criterion " << std::setw(2) << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  "
                  << criteria[i].first << ": " << o.detail << std::endl;
    }
    std::cout << (failures ? "acceptance FAILED: " : "acceptance passed: ") << ran - failures << "/" << ran
              << std::endl;
    return failures;
}
