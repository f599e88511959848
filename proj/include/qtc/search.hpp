#pragma once

// Seeded search campaigns over two-generator quasi-twisted codes, target tables
// and the JSON-Lines result ledger.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qtc/equivalence.hpp"
#include "qtc/tables.hpp"

namespace qtc {

using json = nlohmann::json;

// ---------------------------------------------------------------- targets

struct TargetKey {
    unsigned q;
    std::size_t n, k;
    friend auto operator<=>(const TargetKey&, const TargetKey&) = default;
};

using TargetTable = std::map<TargetKey, std::size_t>;

/// CSV with header `q,n,k,d_best`.
inline TargetTable parse_targets(std::istream& in) {
    TargetTable out;
    std::string line;
    if (!std::getline(in, line) || detail::strip_spaces(line) != "q,n,k,d_best")
        throw TargetTableError("target table must start with the header q,n,k,d_best");
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        const std::string s = detail::strip_spaces(line);
        if (s.empty() || s.front() == '#') continue;
        const auto cols = detail::split(s, ',');
        if (cols.size() != 4) throw TargetTableError("line " + std::to_string(lineno) + ": expected 4 columns");
        std::size_t v[4];
        for (int i = 0; i < 4; ++i) {
            try {
                v[i] = detail::parse_size(cols[i], 0);
            } catch (const ParseError&) {
                throw TargetTableError("line " + std::to_string(lineno) + ": '" + cols[i] + "' is not a number");
            }
        }
        const TargetKey key{static_cast<unsigned>(v[0]), v[1], v[2]};
        if (auto it = out.find(key); it != out.end() && it->second != v[3])
            throw TargetTableError("line " + std::to_string(lineno) + ": conflicting entry for (q, n, k)");
        out[key] = v[3];
    }
    return out;
}

inline TargetTable load_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TargetTableError("cannot open target table " + path);
    return parse_targets(in);
}

enum class Classification { record_breaking, ties_bklc, below, unknown_target };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::record_breaking: return "record_breaking";
        case Classification::ties_bklc: return "ties_bklc";
        case Classification::below: return "below";
        case Classification::unknown_target: return "unknown_target";
    }
    return "?";
}

inline Classification classify(unsigned q, std::size_t n, std::size_t k, std::size_t d, const TargetTable& targets) {
    const auto it = targets.find({q, n, k});
    if (it == targets.end()) return Classification::unknown_target;
    if (d > it->second) return Classification::record_breaking;
    if (d == it->second) return Classification::ties_bklc;
    return Classification::below;
}

// ---------------------------------------------------------------- records

struct CodeRecord {
    std::size_t n = 0, k = 0, d = 0;
    std::string d_status = "exact";  ///< "exact" or "lower_bound"
    std::size_t d_upper = 0;
    unsigned q = 2;
    std::size_t m = 0, ell = 0;
    unsigned a = 1;
    QtForm form = QtForm::TwoGenP1;
    std::string g, p;
    std::vector<std::string> f1, f2;
    bool lcd = false, dual_containing = false, self_orthogonal = false, reversible = false;
    Classification classification = Classification::unknown_target;
    std::optional<std::size_t> target_d;
    std::string config_hash, timestamp;
    std::uint64_t seed = 0;
    std::uint64_t item = 0;

    /// (q, n, k, canonical generator tuple).
    [[nodiscard]] std::string dedup_key() const {
        std::string key = std::to_string(q) + "|" + std::to_string(n) + "|" + std::to_string(k) + "|" +
                          std::to_string(a) + "|" + to_string(form) + "|" + g + "|" + p;
        for (const auto& f : f1) key += "|" + f;
        key += "|";
        for (const auto& f : f2) key += "|" + f;
        return key;
    }
};

inline json to_json(const CodeRecord& r) {
    return json{{"n", r.n},
                {"k", r.k},
                {"d", r.d},
                {"d_status", r.d_status},
                {"d_upper", r.d_upper},
                {"q", r.q},
                {"m", r.m},
                {"ell", r.ell},
                {"a", r.a},
                {"form", to_string(r.form)},
                {"g", r.g},
                {"p", r.p},
                {"f1", r.f1},
                {"f2", r.f2},
                {"properties",
                 {{"lcd", r.lcd},
                  {"dual_containing", r.dual_containing},
                  {"self_orthogonal", r.self_orthogonal},
                  {"reversible", r.reversible}}},
                {"classification", to_string(r.classification)},
                {"target_d", r.target_d ? json(*r.target_d) : json(nullptr)},
                {"provenance", {{"config_hash", r.config_hash}, {"seed", r.seed}, {"timestamp", r.timestamp}, {"item", r.item}}}};
}

inline Classification classification_from_string(const std::string& s) {
    for (auto c : {Classification::record_breaking, Classification::ties_bklc, Classification::below,
                   Classification::unknown_target})
        if (s == to_string(c)) return c;
    throw FormatError("unknown classification '" + s + "'");
}

inline CodeRecord record_from_json(const json& j) {
    try {
        CodeRecord r;
        r.n = j.at("n");
        r.k = j.at("k");
        r.d = j.at("d");
        r.d_status = j.at("d_status");
        r.d_upper = j.at("d_upper");
        r.q = j.at("q");
        r.m = j.at("m");
        r.ell = j.at("ell");
        r.a = j.at("a");
        r.form = qt_form_from_string(j.at("form"));
        r.g = j.at("g");
        r.p = j.at("p");
        r.f1 = j.at("f1").get<std::vector<std::string>>();
        r.f2 = j.at("f2").get<std::vector<std::string>>();
        const json& pr = j.at("properties");
        r.lcd = pr.at("lcd");
        r.dual_containing = pr.at("dual_containing");
        r.self_orthogonal = pr.at("self_orthogonal");
        r.reversible = pr.at("reversible");
        r.classification = classification_from_string(j.at("classification"));
        if (!j.at("target_d").is_null()) r.target_d = j.at("target_d").get<std::size_t>();
        const json& pv = j.at("provenance");
        r.config_hash = pv.at("config_hash");
        r.seed = pv.at("seed");
        r.timestamp = pv.at("timestamp");
        r.item = pv.at("item");
        return r;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed ledger record: ") + e.what());
    }
}

inline QTGeneratorSpec record_spec(const CodeRecord& r) {
    const Field& F = Field::get(r.q);
    QTGeneratorSpec s;
    s.form = r.form;
    s.field = &F;
    s.m = r.m;
    s.ell = r.ell;
    s.a = static_cast<Elem>(r.a);
    s.g = parse_coeffs(r.g, F);
    s.p = parse_coeffs(r.p, F);
    for (const auto& f : r.f1) s.f1.push_back(parse_coeffs(f, F));
    for (const auto& f : r.f2) s.f2.push_back(parse_coeffs(f, F));
    return s;
}

/// Re-assembles a record from its generator strings and re-checks n, k and d.
inline std::vector<std::string> verify_record(const CodeRecord& r, std::uint64_t budget = 100'000'000) {
    std::vector<std::string> problems;
    QTCode c;
    try {
        c = qt_assemble(record_spec(r), DefectPolicy::raise);
    } catch (const Error& e) {
        return {e.what()};
    }
    if (c.n() != r.n) problems.push_back("n mismatch");
    if (c.k() != r.k) problems.push_back("k mismatch");
    DistanceOptions opt;
    opt.budget = budget;
    const DistanceResult d = min_distance(c.matrix, opt);
    if (d.upper < r.d) problems.push_back("a codeword of weight " + std::to_string(d.upper) + " contradicts d");
    if (r.d_status == "exact" && d.is_exact() && d.upper != r.d) problems.push_back("exact distance differs");
    if (is_lcd(c.matrix) != r.lcd) problems.push_back("lcd flag differs");
    if (is_dual_containing(c.matrix) != r.dual_containing) problems.push_back("dual-containing flag differs");
    return problems;
}

/// Append-only list of records, deduplicated by `CodeRecord::dedup_key`.
class Ledger {
public:
    bool append(CodeRecord r) {
        if (!keys_.insert(r.dedup_key()).second) return false;
        records_.push_back(std::move(r));
        return true;
    }
    [[nodiscard]] bool contains(const CodeRecord& r) const { return keys_.count(r.dedup_key()) != 0; }
    [[nodiscard]] const std::vector<CodeRecord>& records() const noexcept { return records_; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }

private:
    std::vector<CodeRecord> records_;
    std::set<std::string> keys_;
};

inline Ledger read_ledger(const std::string& path) {
    Ledger out;
    std::ifstream in(path);
    if (!in) return out;
    for (std::string line; std::getline(in, line);)
        if (!detail::strip_spaces(line).empty()) out.append(record_from_json(json::parse(line)));
    return out;
}

inline void append_records(const std::string& path, const std::vector<CodeRecord>& records) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw FormatError("cannot write ledger " + path);
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------- config

enum class PPolicy { one, all, degree_cap };
enum class SamplingMode { pool, exhaustive, random };

struct SearchConfig {
    unsigned q = 2;
    std::size_t m_min = 0, m_max = 0;
    std::size_t ell_min = 2, ell_max = 2;
    std::vector<unsigned> shift_constants;  ///< empty: every nonzero element
    QtForm form = QtForm::TwoGenP1;
    PPolicy p_policy = PPolicy::one;
    std::size_t p_max_degree = 0;
    /// Degree window for the searched constacyclic generator (g2 for the g1 = 1 form).
    std::size_t g_min_degree = 0, g_max_degree = SIZE_MAX;
    std::optional<PartitionMode> partition = PartitionMode::multiplier;
    SamplingMode sampling = SamplingMode::random;
    std::vector<std::string> pool;
    std::uint64_t exhaustive_cap = 4096;
    std::size_t trials = 16;
    std::size_t max_candidates = 100000;
    std::uint64_t seed = 1;
    std::uint64_t budget = 10'000'000;
    std::size_t min_k = 1, max_k = SIZE_MAX;
    std::size_t slack = 0;
    std::size_t min_d = 0;
    std::size_t property_min_d = SIZE_MAX;
    std::optional<std::string> targets_path;
    std::optional<std::string> checkpoint_path;
    std::string timestamp;
    unsigned threads = 1;
    std::string hash;
};

inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

/// Explicit "timestamp" in the config, else SOURCE_DATE_EPOCH, else the current UTC time.
inline std::string provenance_timestamp(const json& j) {
    if (j.contains("timestamp")) return j.at("timestamp").get<std::string>();
    std::time_t t;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
    else t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::pair<std::size_t, std::size_t> parse_range(const json& j, const char* key, std::pair<std::size_t, std::size_t> dflt) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (v.is_number_integer() && v.get<long long>() >= 0) return {v.get<std::size_t>(), v.get<std::size_t>()};
    if (v.is_array() && v.size() == 2) return {v[0].get<std::size_t>(), v[1].get<std::size_t>()};
    throw ConfigError(std::string("'") + key + "' must be a number or a [min, max] pair");
}

inline SearchConfig parse_config(const json& j) {
    static const std::set<std::string> known{"q", "m", "ell", "a", "form", "p_policy", "p_max_degree", "g_min_degree",
                                             "g_max_degree", "partition", "sampling", "pool", "exhaustive_cap", "trials",
                                             "max_candidates", "seed", "budget", "min_k", "max_k", "slack", "min_d",
                                             "property_min_d", "targets", "checkpoint", "timestamp", "threads"};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
    try {
        SearchConfig c;
        c.q = j.at("q");
        Field::get(c.q);
        std::tie(c.m_min, c.m_max) = parse_range(j, "m", {1, 0});
        std::tie(c.ell_min, c.ell_max) = parse_range(j, "ell", {2, 2});
        if (j.contains("a")) c.shift_constants = j.at("a").get<std::vector<unsigned>>();
        for (unsigned a : c.shift_constants)
            if (a == 0 || a >= c.q) throw ConfigError("shift constant " + std::to_string(a) + " out of range");
        if (j.contains("form")) c.form = qt_form_from_string(j.at("form"));
        const std::string pp = j.value("p_policy", "one");
        if (pp == "one") c.p_policy = PPolicy::one;
        else if (pp == "all") c.p_policy = PPolicy::all;
        else if (pp == "degree_cap") c.p_policy = PPolicy::degree_cap;
        else throw ConfigError("unknown p_policy '" + pp + "'");
        c.p_max_degree = j.value("p_max_degree", std::size_t{0});
        c.g_min_degree = j.value("g_min_degree", std::size_t{0});
        c.g_max_degree = j.value("g_max_degree", SIZE_MAX);
        const std::string part = j.value("partition", "multiplier");
        if (part == "none") c.partition.reset();
        else c.partition = partition_mode_from_string(part);
        const std::string sm = j.value("sampling", "random");
        if (sm == "pool") c.sampling = SamplingMode::pool;
        else if (sm == "exhaustive") c.sampling = SamplingMode::exhaustive;
        else if (sm == "random") c.sampling = SamplingMode::random;
        else throw ConfigError("unknown sampling mode '" + sm + "'");
        if (j.contains("pool")) c.pool = j.at("pool").get<std::vector<std::string>>();
        if (c.sampling == SamplingMode::pool && c.pool.empty()) throw ConfigError("pool sampling needs a non-empty 'pool'");
        for (const auto& f : c.pool) parse_coeffs(f, Field::get(c.q));
        c.exhaustive_cap = j.value("exhaustive_cap", c.exhaustive_cap);
        c.trials = j.value("trials", c.trials);
        c.max_candidates = j.value("max_candidates", c.max_candidates);
        c.seed = j.value("seed", c.seed);
        c.budget = j.value("budget", c.budget);
        c.min_k = j.value("min_k", c.min_k);
        c.max_k = j.value("max_k", c.max_k);
        c.slack = j.value("slack", c.slack);
        c.min_d = j.value("min_d", c.min_d);
        c.property_min_d = j.value("property_min_d", c.property_min_d);
        if (j.contains("targets")) c.targets_path = j.at("targets").get<std::string>();
        if (j.contains("checkpoint")) c.checkpoint_path = j.at("checkpoint").get<std::string>();
        c.threads = j.value("threads", 1U);
        c.timestamp = provenance_timestamp(j);
        c.hash = fnv1a_hex(j.dump());
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("pool: ") + e.what());
    }
}

inline SearchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
    return parse_config(j);
}

// ---------------------------------------------------------------- campaign

/// One unit of work: a generator choice, with candidates drawn from its own sub-seed.
struct WorkItem {
    std::uint64_t id = 0;
    std::size_t m = 0, ell = 0;
    Elem a = 1;
    Poly g, p;
};

struct CampaignStats {
    std::uint64_t items = 0, candidates = 0, skipped_gcd = 0, dimension_defects = 0, probed_out = 0,
                  certified = 0, emitted = 0, duplicates = 0, skipped_items = 0;
};

struct CampaignResult {
    Ledger ledger;  ///< records emitted by this run
    CampaignStats stats;
    std::vector<std::string> log;
    bool budget_exhausted = false;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// The searched generator of each (m, a): g for most forms, g2 for the g1 = 1 form.
inline std::vector<Poly> searched_generators(const SearchConfig& c, const Field& F, std::size_t m, Elem a) {
    const auto codes = cc_enumerate(F, m, a);
    std::vector<Poly> gens;
    if (c.partition) {
        for (const auto& cls : partition(codes, *c.partition)) gens.push_back(cls.representative);
    } else {
        for (const auto& code : codes) gens.push_back(code.g);
    }
    std::erase_if(gens, [&](const Poly& g) {
        const auto d = static_cast<std::size_t>(g.degree());
        return d < c.g_min_degree || d > c.g_max_degree;
    });
    if (c.form == QtForm::TwoGenIdentityG1) {
        // highest degree first
        std::stable_sort(gens.begin(), gens.end(), [](const Poly& x, const Poly& y) { return x.degree() > y.degree(); });
    }
    return gens;
}

inline std::vector<WorkItem> work_items(const SearchConfig& c) {
    const Field& F = Field::get(c.q);
    std::vector<unsigned> as = c.shift_constants;
    if (as.empty())
        for (unsigned a = 1; a < c.q; ++a) as.push_back(a);
    std::vector<WorkItem> out;
    for (std::size_t m = c.m_min; m <= c.m_max && m >= 1; ++m) {
        for (unsigned a : as) {
            const auto gens = searched_generators(c, F, m, static_cast<Elem>(a));
            for (std::size_t ell = c.ell_min; ell <= c.ell_max; ++ell) {
                for (const auto& gen : gens) {
                    WorkItem w;
                    w.m = m;
                    w.ell = ell;
                    w.a = static_cast<Elem>(a);
                    if (c.form == QtForm::TwoGenIdentityG1) {
                        w.g = Poly::one(F);
                        w.p = gen;
                        out.push_back(w);
                        continue;
                    }
                    w.g = gen;
                    w.p = Poly::one(F);
                    if (c.form != QtForm::TwoGenGeneral || c.p_policy == PPolicy::one) {
                        out.push_back(w);
                        continue;
                    }
                    const Poly h1 = Poly::binomial(F, m, static_cast<Elem>(a)) / gen;
                    for (const auto& code : cc_enumerate(F, m, static_cast<Elem>(a))) {
                        if (!gen.divides(code.g)) continue;
                        const Poly p = code.g / gen;
                        if (c.p_policy == PPolicy::degree_cap && static_cast<std::size_t>(p.degree()) > c.p_max_degree)
                            continue;
                        if (p == h1) continue;
                        w.p = p;
                        out.push_back(w);
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
    return out;
}

/// All polynomials of degree < deg h coprime to h.
inline std::vector<Poly> coprime_residues(const Poly& h) {
    const Field& F = h.field();
    std::vector<Poly> out;
    const auto d = static_cast<std::size_t>(std::max(h.degree(), 0));
    std::vector<Elem> c(d, 0);
    for (;;) {
        Poly f(F, c);
        if (!f.is_zero() && gcd(f, h).is_one()) out.push_back(std::move(f));
        std::size_t i = 0;
        while (i < d && ++c[i] == F.q()) c[i++] = 0;
        if (i == d) break;
    }
    if (d == 0) out.push_back(Poly::one(F));
    return out;
}

inline Poly random_coprime(const Poly& h, std::mt19937_64& rng) {
    const Field& F = h.field();
    if (h.degree() <= 0) return Poly::one(F);
    std::uniform_int_distribution<unsigned> digit(0, F.q() - 1);
    for (;;) {
        std::vector<Elem> c(static_cast<std::size_t>(h.degree()));
        for (auto& x : c) x = static_cast<Elem>(digit(rng));
        Poly f(F, c);
        if (!f.is_zero() && gcd(f, h).is_one()) return f;
    }
}

struct ItemOutcome {
    std::vector<CodeRecord> records;
    CampaignStats stats;
    std::vector<std::string> log;
};

inline ItemOutcome run_item(const SearchConfig& c, const WorkItem& w, const TargetTable& targets) {
    ItemOutcome out;
    out.stats.items = 1;
    const Field& F = Field::get(c.q);
    QTGeneratorSpec base;
    base.form = c.form;
    base.field = &F;
    base.m = w.m;
    base.ell = w.ell;
    base.a = w.a;
    base.g = w.g;
    base.p = w.p;
    const bool two_rows = c.form != QtForm::OneGen && c.form != QtForm::TwoGenShifted;
    const std::size_t positions = w.ell + (two_rows ? w.ell - 1 : 0);
    const Poly h1 = base.h1();
    const Poly h2 = two_rows ? base.h2() : h1;
    auto h_at = [&](std::size_t pos) -> const Poly& { return pos < w.ell ? h1 : h2; };
    const std::string where = "item " + std::to_string(w.id) + " (m=" + std::to_string(w.m) + ", a=" +
                              std::to_string(w.a) + ", g=" + w.g.to_string() + ", p=" + w.p.to_string() + ")";

    // candidate f tuples
    std::vector<std::vector<Poly>> tuples;
    if (c.sampling == SamplingMode::random) {
        std::mt19937_64 rng(splitmix(c.seed ^ splitmix(w.id)));
        for (std::size_t t = 0; t < c.trials; ++t) {
            std::vector<Poly> tup;
            for (std::size_t i = 0; i < positions; ++i) tup.push_back(random_coprime(h_at(i), rng));
            tuples.push_back(std::move(tup));
        }
    } else {
        std::vector<std::vector<Poly>> choices(positions);
        for (std::size_t i = 0; i < positions; ++i) {
            if (c.sampling == SamplingMode::pool) {
                for (const auto& s : c.pool) choices[i].push_back(parse_coeffs(s, F));
            } else {
                const double size = std::pow(static_cast<double>(c.q), static_cast<double>(std::max(h_at(i).degree(), 0)));
                if (size > static_cast<double>(c.exhaustive_cap)) {
                    out.log.push_back(where + ": skipped, q^deg(h) exceeds the exhaustive cap");
                    out.stats.skipped_items = 1;
                    return out;
                }
                choices[i] = coprime_residues(h_at(i));
            }
        }
        std::vector<std::size_t> idx(positions, 0);
        if (std::none_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); })) {
            while (tuples.size() < c.max_candidates) {
                std::vector<Poly> tup;
                for (std::size_t i = 0; i < positions; ++i) tup.push_back(choices[i][idx[i]]);
                tuples.push_back(std::move(tup));
                std::size_t i = positions;
                while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
                if (i == 0) break;
            }
        }
    }

    for (const auto& tup : tuples) {
        ++out.stats.candidates;
        QTGeneratorSpec s = base;
        s.f1.assign(tup.begin(), tup.begin() + static_cast<std::ptrdiff_t>(w.ell));
        if (two_rows) {
            s.f2.push_back(Poly(F));
            s.f2.insert(s.f2.end(), tup.begin() + static_cast<std::ptrdiff_t>(w.ell), tup.end());
        }
        try {
            qt_validate(s);
        } catch (const PreconditionFailed&) {
            ++out.stats.skipped_gcd;
            continue;
        }
        const QTCode code = qt_assemble(s, DefectPolicy::report);
        if (code.dimension_defect) {
            ++out.stats.dimension_defects;
            out.log.push_back(where + ": rank " + std::to_string(code.rank) + " below " +
                              std::to_string(code.k1 + code.k2));
            continue;
        }
        const std::size_t n = code.n(), k = code.k();
        if (k < c.min_k || k > c.max_k) continue;

        const auto target = targets.find({c.q, n, k});
        std::size_t threshold = c.min_d;
        if (target != targets.end()) threshold = target->second > c.slack ? target->second - c.slack : 0;
        const bool want_props = c.property_min_d != SIZE_MAX;
        const std::size_t gate = want_props ? std::min(threshold, c.property_min_d) : threshold;

        const auto [probe, probe_word] = probe_upper_bound(code.matrix, 4, 2, splitmix(c.seed ^ w.id));
        if (probe < gate) {
            ++out.stats.probed_out;
            continue;
        }
        DistanceOptions dopt;
        dopt.budget = c.budget;
        const DistanceResult dr = min_distance(code.matrix, dopt);
        ++out.stats.certified;
        const std::size_t d = dr.is_exact() ? dr.upper : dr.lower;
        const bool lcd = is_lcd(code.matrix);
        const bool dc = is_dual_containing(code.matrix);
        const bool by_target = d >= threshold;
        const bool by_props = want_props && (lcd || dc) && d >= c.property_min_d;
        if (!by_target && !by_props) continue;

        CodeRecord r;
        r.n = n;
        r.k = k;
        r.d = d;
        r.d_status = dr.is_exact() ? "exact" : "lower_bound";
        r.d_upper = dr.upper;
        r.q = c.q;
        r.m = w.m;
        r.ell = w.ell;
        r.a = w.a;
        r.form = c.form;
        r.g = render_coeffs(code.spec.g);
        r.p = render_coeffs(code.spec.p);
        for (const auto& f : code.spec.f1) r.f1.push_back(render_coeffs(f));
        for (const auto& f : code.spec.f2) r.f2.push_back(render_coeffs(f));
        r.lcd = lcd;
        r.dual_containing = dc;
        r.self_orthogonal = is_self_orthogonal(code.matrix);
        r.reversible = is_reversible(code.matrix);
        r.classification = classify(c.q, n, k, d, targets);
        if (target != targets.end()) r.target_d = target->second;
        r.config_hash = c.hash;
        r.seed = c.seed;
        r.timestamp = c.timestamp;
        r.item = w.id;
        out.records.push_back(std::move(r));
    }
    return out;
}

}  // namespace detail

inline std::optional<std::uint64_t> read_cursor(const std::string& path) {
    std::ifstream in(path);
    std::uint64_t id;
    if (in >> id) return id;
    return std::nullopt;
}

inline void write_cursor(const std::string& path, std::uint64_t id) {
    std::ofstream out(path, std::ios::trunc);
    out << id << '\n';
}

struct CampaignOptions {
    std::optional<std::string> ledger_path;  ///< existing records are loaded for dedup, new ones appended
    std::optional<unsigned> threads;
    std::optional<std::string> targets_path;
    /// Stop (with budget_exhausted set) once this many candidates were examined; 0 = unlimited.
    std::uint64_t candidate_budget = 0;
};

/// Items run in parallel batches; results are merged in item order so output does not
/// depend on the worker count.
inline CampaignResult run_campaign(const SearchConfig& c, const CampaignOptions& opt = {}) {
    CampaignResult res;
    TargetTable targets;
    if (const auto& tp = opt.targets_path ? opt.targets_path : c.targets_path) targets = load_targets(*tp);
    Ledger existing;
    if (opt.ledger_path) existing = read_ledger(*opt.ledger_path);

    const auto items = detail::work_items(c);
    std::uint64_t start = 0;
    if (c.checkpoint_path)
        if (const auto cur = read_cursor(*c.checkpoint_path)) start = *cur + 1;
    const unsigned threads = std::max(1U, opt.threads.value_or(c.threads));

    for (std::uint64_t batch = start; batch < items.size(); batch += threads) {
        const std::size_t end = std::min<std::size_t>(items.size(), batch + threads);
        std::vector<detail::ItemOutcome> outcomes(end - batch);
        {
            std::vector<std::jthread> pool;
            for (std::size_t i = batch; i < end; ++i)
                pool.emplace_back([&, i] { outcomes[i - batch] = detail::run_item(c, items[i], targets); });
        }
        for (auto& o : outcomes) {
            auto& s = res.stats;
            s.items += o.stats.items;
            s.candidates += o.stats.candidates;
            s.skipped_gcd += o.stats.skipped_gcd;
            s.dimension_defects += o.stats.dimension_defects;
            s.probed_out += o.stats.probed_out;
            s.certified += o.stats.certified;
            s.skipped_items += o.stats.skipped_items;
            res.log.insert(res.log.end(), o.log.begin(), o.log.end());
            std::vector<CodeRecord> fresh;
            for (auto& r : o.records) {
                if (existing.contains(r) || res.ledger.contains(r)) {
                    ++s.duplicates;
                    continue;
                }
                fresh.push_back(r);
                res.ledger.append(std::move(r));
                ++s.emitted;
            }
            if (opt.ledger_path) append_records(*opt.ledger_path, fresh);
        }
        if (c.checkpoint_path) write_cursor(*c.checkpoint_path, end - 1);
        if (opt.candidate_budget && res.stats.candidates >= opt.candidate_budget && end < items.size()) {
            res.budget_exhausted = true;
            break;
        }
    }
    return res;
}

}  // namespace qtc
