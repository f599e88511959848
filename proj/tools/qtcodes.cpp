#include <qtc/qtc.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qtc;
using json = nlohmann::json;

enum Exit : int { ok = 0, failed = 1, usage = 2, exhausted = 3 };

struct Globals {
    unsigned field = 2;
    std::uint64_t seed = 1;
    std::uint64_t budget = 100'000'000;
    unsigned threads = 1;
    std::string tier = "auto";
    std::string ledger;
    std::string targets;
};

std::string default_data(const char* name) {
#ifdef QTC_DATA_DIR
    return std::string(QTC_DATA_DIR) + "/" + name;
#else
    return std::string("data/") + name;
#endif
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

/// A code given either as a golden-table tag or as a JSON spec (inline or a file).
struct CodeSource {
    std::string row;
    std::string spec;
    std::string golden = default_data("golden_tables.txt");

    void attach(CLI::App* cmd) {
        cmd->add_option("--row", row, "golden-table tag, e.g. T1-01");
        cmd->add_option("--spec", spec, "JSON spec: inline object or path");
        cmd->add_option("--golden", golden, "golden table file");
    }
};

TableRow find_row(const std::string& golden, const std::string& tag) {
    for (const auto& e : load_golden(golden))
        if (e.tag == tag) return e.row;
    throw FormatError("no row '" + tag + "' in " + golden);
}

QTGeneratorSpec spec_from_json(const json& j) {
    const Field& F = Field::get(j.at("q").get<unsigned>());
    QTGeneratorSpec s;
    s.field = &F;
    s.form = qt_form_from_string(j.value("form", "two-gen-p1"));
    s.m = j.at("m").get<std::size_t>();
    s.a = static_cast<Elem>(j.value("a", 1U));
    s.g = parse_coeffs(j.value("g", "1"), F);
    if (j.contains("p")) s.p = parse_coeffs(j.at("p").get<std::string>(), F);
    else if (s.form == QtForm::TwoGenP1) s.p = Poly::one(F);
    for (const auto& f : j.at("f1")) s.f1.push_back(parse_coeffs(f.get<std::string>(), F));
    if (j.contains("f2"))
        for (const auto& f : j.at("f2")) s.f2.push_back(parse_coeffs(f.get<std::string>(), F));
    s.ell = j.value("ell", s.f1.size());
    return s;
}

QTGeneratorSpec resolve(const CodeSource& src) {
    if (src.row.empty() == src.spec.empty()) throw std::invalid_argument("give exactly one of --row or --spec");
    if (!src.row.empty()) return row_spec(find_row(src.golden, src.row));
    json j;
    try {
        if (src.spec.front() == '{') j = json::parse(src.spec);
        else {
            std::ifstream in(src.spec);
            if (!in) throw FormatError("cannot open spec " + src.spec);
            j = json::parse(in);
        }
        return spec_from_json(j);
    } catch (const json::exception& e) {
        throw FormatError(std::string("spec: ") + e.what());
    }
}

std::string params(std::size_t n, std::size_t k, const std::string& d, unsigned q) {
    return "[" + std::to_string(n) + "," + std::to_string(k) + "," + d + "]_" + std::to_string(q);
}

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string poly_list(const std::vector<Poly>& ps) {
    std::vector<std::string> s;
    for (const auto& p : ps) s.push_back(p.to_string());
    return join(s);
}

void print_distance(const DistanceResult& r) {
    std::cout << "status " << to_string(r.status) << '\n'
              << "lower " << r.lower << '\n'
              << "upper " << r.upper << '\n'
              << "work " << r.work << '\n'
              << "witness " << to_hex(r.witness) << '\n';
}

// ---------------------------------------------------------------- commands

int cmd_factor(const Globals& g, std::size_t m, unsigned a, const std::string& poly) {
    const Field& F = Field::get(g.field);
    const Factorization fz = poly.empty() ? binomial_factor(F, m, static_cast<Elem>(a)) : poly_factor(parse_coeffs(poly, F));
    std::cout << "unit " << F.symbol(fz.unit) << '\n';
    for (const auto& [p, e] : fz.factors) std::cout << p.to_string() << " ^" << e << " deg " << p.degree() << '\n';
    std::cout << "divisors " << fz.divisor_count() << '\n';
    return ok;
}

int cmd_cc_list(const Globals& g, std::size_t m, unsigned a, std::optional<std::size_t> k, bool with_d) {
    const Field& F = Field::get(g.field);
    for (const auto& c : cc_enumerate(F, m, static_cast<Elem>(a), k)) {
        std::cout << c.g.to_string() << " k " << c.k;
        if (with_d) {
            DistanceOptions opt;
            opt.budget = g.budget;
            opt.threads = g.threads;
            std::cout << " d " << to_string(cc_min_distance(c, opt).d);
        }
        std::cout << '\n';
    }
    return ok;
}

int cmd_partition(const Globals& g, std::size_t m, unsigned a, std::optional<std::size_t> k, const std::string& mode) {
    const Field& F = Field::get(g.field);
    const auto classes = partition(cc_enumerate(F, m, static_cast<Elem>(a), k), partition_mode_from_string(mode));
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        std::cout << "class " << i << " rep " << c.representative.to_string() << " size " << c.members.size()
                  << " members " << poly_list(c.members) << '\n';
    }
    std::cout << "classes " << classes.size() << '\n';
    return ok;
}

int cmd_assemble(const CodeSource& src, bool show_matrix) {
    const QTCode code = qt_assemble(resolve(src), DefectPolicy::report);
    const auto& s = code.spec;
    std::cout << "form " << to_string(s.form) << '\n'
              << "q " << s.field->q() << " m " << s.m << " ell " << s.ell << " a " << unsigned(s.a) << '\n'
              << "n " << code.n() << '\n'
              << "k " << code.k() << " (k1 " << code.k1 << ", k2 " << code.k2 << ")\n"
              << "floor " << code.distance_floor << '\n';
    for (const auto& w : code.warnings) std::cout << "warning " << w << '\n';
    if (code.dimension_defect) std::cout << "warning dimension defect\n";
    if (show_matrix)
        for (const auto& r : code.matrix.rows()) std::cout << to_hex(r) << '\n';
    return ok;
}

int cmd_mindist(const Globals& g, const CodeSource& src, const std::string& checkpoint, const std::string& resume,
                double time_limit) {
    const QTCode code = qt_assemble(resolve(src), DefectPolicy::report);
    DistanceOptions opt;
    opt.budget = g.budget;
    opt.threads = g.threads;
    opt.time_limit = time_limit;
    opt.code_id = src.row.empty() ? "spec" : src.row;
    if (!resume.empty()) {
        std::ifstream in(resume);
        if (!in) throw FormatError("cannot open checkpoint " + resume);
        opt.resume = read_checkpoint(in, code.matrix.field());
    }
    if (!checkpoint.empty())
        opt.on_checkpoint = [&](const DistanceCheckpoint& c) {
            std::ofstream out(checkpoint, std::ios::trunc);
            write_checkpoint(out, c);
        };
    const DistanceResult r = min_distance(code.matrix, opt);
    std::cout << "code " << params(code.n(), code.k(), to_string(r.as_status()), code.matrix.field().q()) << '\n';
    print_distance(r);
    return r.status == DistanceStatusKind::budget_exhausted ? exhausted : ok;
}

int cmd_props(const CodeSource& src) {
    const QTCode code = qt_assemble(resolve(src), DefectPolicy::report);
    const auto& G = code.matrix;
    std::cout << "lcd " << is_lcd(G) << '\n'
              << "dual-containing " << is_dual_containing(G) << '\n'
              << "self-orthogonal " << is_self_orthogonal(G) << '\n'
              << "reversible " << is_reversible(G) << '\n';
    return ok;
}

int cmd_extend(const Globals& g, const CodeSource& src) {
    const QTCode code = qt_assemble(resolve(src), DefectPolicy::report);
    const GeneratorMatrix ext = extend(code.matrix);
    DistanceOptions opt;
    opt.budget = g.budget;
    opt.threads = g.threads;
    const DistanceResult r = min_distance(ext, opt);
    std::cout << "code " << params(ext.length(), rank(ext), to_string(r.as_status()), ext.field().q()) << '\n';
    print_distance(r);
    return r.status == DistanceStatusKind::budget_exhausted ? exhausted : ok;
}

int cmd_search(const Globals& g, const std::string& config_path, std::uint64_t candidate_budget, bool threads_set,
               bool seed_set) {
    SearchConfig c = load_config(config_path);
    if (seed_set) c.seed = g.seed;
    CampaignOptions opt;
    if (!g.ledger.empty()) opt.ledger_path = g.ledger;
    if (!g.targets.empty()) opt.targets_path = g.targets;
    if (threads_set) opt.threads = g.threads;
    opt.candidate_budget = candidate_budget;
    const CampaignResult res = run_campaign(c, opt);
    for (const auto& r : res.ledger.records())
        std::cout << "emit " << params(r.n, r.k, std::to_string(r.d), r.q) << ' ' << to_string(r.classification)
                  << " m " << r.m << " a " << r.a << " g " << r.g << " p " << r.p << " f1 " << join(r.f1)
                  << " f2 " << join(r.f2) << '\n';
    for (const auto& line : res.log) std::cout << "log " << line << '\n';
    const auto& s = res.stats;
    std::cout << "items " << s.items << " candidates " << s.candidates << " skipped_gcd " << s.skipped_gcd
              << " defects " << s.dimension_defects << " probed_out " << s.probed_out << " certified " << s.certified
              << " emitted " << s.emitted << " duplicates " << s.duplicates << '\n';
    return res.budget_exhausted ? exhausted : ok;
}

int cmd_verify_tables(const Globals& g, const std::string& golden, std::string witnesses,
                      const std::string& write_witnesses, const std::vector<std::string>& only, bool with_quarantined) {
    const Tier tier = tier_from_string(g.tier);
    std::map<std::string, std::string> stored;
    if (witnesses.empty() && file_exists(default_data("witnesses.txt"))) witnesses = default_data("witnesses.txt");
    if (!witnesses.empty()) stored = load_witnesses(witnesses);

    std::map<std::string, std::string> found;
    std::size_t rows = 0, failures = 0, exhausted_failures = 0, skipped = 0;
    for (const auto& e : load_golden(golden)) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.tag) == only.end()) continue;
        if (e.quarantined && !with_quarantined) {
            std::cout << e.tag << " quarantined\n";
            ++skipped;
            continue;
        }
        VerifyOptions opt;
        opt.threads = g.threads;
        opt.quick_budget = g.budget;
        if (auto it = stored.find(e.tag); it != stored.end()) opt.witness_hex = it->second;
        const VerificationReport rep = verify_row(e.row, tier, opt);
        ++rows;
        std::cout << rep.tag << ' ' << rep.params << ' ' << (rep.tier == Tier::full ? "full" : "quick") << ' '
                  << (rep.passed() ? "PASS" : "FAIL") << '\n';
        for (const auto& a : rep.assertions)
            std::cout << "  " << (a.pass ? "ok  " : "FAIL") << ' ' << a.name << (a.detail.empty() ? "" : " ") << a.detail
                      << '\n';
        if (!rep.passed()) {
            ++failures;
            if (rep.budget_exhausted) ++exhausted_failures;
        }

        std::optional<std::string> best = opt.witness_hex;
        if (rep.distance && !rep.distance->witness.empty()) {
            const std::string w = to_hex(rep.distance->witness);
            const std::size_t wt = rep.distance->upper;
            if (!best || wt < static_cast<std::size_t>(std::count_if(best->begin(), best->end(),
                                                                      [](char ch) { return ch != '0'; })))
                best = w;
        }
        if (best) found[e.tag] = *best;
    }
    std::cout << "rows " << rows << " failures " << failures << " quarantined " << skipped << '\n';

    if (!write_witnesses.empty()) {
        std::ofstream out(write_witnesses, std::ios::trunc);
        if (!out) throw FormatError("cannot write " + write_witnesses);
        out << "# Minimum-weight codewords of the golden-table codes, one hex digit per coordinate (block layout).\n";
        for (const auto& e : load_golden(golden))
            if (auto it = found.find(e.tag); it != found.end()) out << e.tag << ' ' << it->second << '\n';
            else if (auto st = stored.find(e.tag); st != stored.end()) out << e.tag << ' ' << st->second << '\n';
    }
    if (failures == 0) return ok;
    return failures == exhausted_failures ? exhausted : failed;
}

int cmd_classify(const Globals& g, std::optional<std::size_t> n, std::optional<std::size_t> k,
                 std::optional<std::size_t> d) {
    if (g.targets.empty()) throw std::invalid_argument("classify needs --targets");
    const TargetTable targets = load_targets(g.targets);
    if (n || k || d) {
        if (!n || !k || !d) throw std::invalid_argument("give all of --n, --k and --d");
        std::cout << params(*n, *k, std::to_string(*d), g.field) << ' '
                  << to_string(classify(g.field, *n, *k, *d, targets)) << '\n';
        return ok;
    }
    if (g.ledger.empty()) throw std::invalid_argument("classify needs --ledger or --n/--k/--d");
    for (const auto& r : read_ledger(g.ledger).records())
        std::cout << params(r.n, r.k, std::to_string(r.d), r.q) << ' '
                  << to_string(classify(r.q, r.n, r.k, r.d, targets)) << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-twisted code construction, verification and search"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--field", g.field, "field size q")->check(CLI::IsMember({2, 3, 4, 5, 7, 8, 9}));
    auto* seed_opt = app.add_option("--seed", g.seed, "random seed (overrides the campaign config)");
    app.add_option("--budget", g.budget, "candidate budget for distance computations");
    auto* threads_opt = app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--tier", g.tier, "verification tier")->check(CLI::IsMember({"quick", "full", "auto"}));
    app.add_option("--ledger", g.ledger, "JSON-Lines ledger path");
    app.add_option("--targets", g.targets, "target table CSV (q,n,k,d_best)");

    std::size_t m = 0;
    unsigned a = 1;
    std::optional<std::size_t> k;
    std::string poly;

    auto* factor = app.add_subcommand("factor", "factor x^m - a or a given polynomial");
    factor->add_option("--m", m, "block length");
    factor->add_option("--a", a, "shift constant");
    factor->add_option("--poly", poly, "coefficient string, ascending powers");

    bool with_d = false;
    auto* cc_list = app.add_subcommand("cc-list", "list constacyclic codes of length m");
    cc_list->add_option("--m", m)->required();
    cc_list->add_option("--a", a);
    cc_list->add_option("--k", k, "keep only this dimension");
    cc_list->add_flag("--distance", with_d, "compute minimum distances");

    std::string mode = "multiplier";
    auto* part = app.add_subcommand("partition", "partition constacyclic codes into equivalence classes");
    part->add_option("--m", m)->required();
    part->add_option("--a", a);
    part->add_option("--k", k);
    part->add_option("--mode", mode)->check(CLI::IsMember({"multiplier", "refined"}));

    CodeSource src;
    bool show_matrix = false;
    auto* assemble = app.add_subcommand("assemble", "assemble a quasi-twisted code");
    src.attach(assemble);
    assemble->add_flag("--matrix", show_matrix, "print the generator matrix rows in hex");

    std::string checkpoint, resume;
    double time_limit = 0;
    auto* mindist = app.add_subcommand("mindist", "minimum distance of a quasi-twisted code");
    src.attach(mindist);
    mindist->add_option("--checkpoint", checkpoint, "write progress records here");
    mindist->add_option("--resume", resume, "resume from a checkpoint file");
    mindist->add_option("--time-limit", time_limit, "seconds; 0 disables");

    auto* props = app.add_subcommand("props", "dual-related properties of a quasi-twisted code");
    src.attach(props);

    auto* ext = app.add_subcommand("extend", "parity-extend a code and compute its distance");
    src.attach(ext);

    std::string config;
    std::uint64_t candidate_budget = 0;
    auto* search = app.add_subcommand("search", "run a search campaign");
    search->add_option("--config", config, "campaign config (JSON)")->required();
    search->add_option("--max-candidates", candidate_budget, "stop after this many candidates; 0 = no cap");

    std::string golden = default_data("golden_tables.txt"), witnesses, write_witnesses;
    std::vector<std::string> only;
    bool with_quarantined = false;
    auto* verify = app.add_subcommand("verify-tables", "verify the golden tables");
    verify->add_option("--golden", golden);
    verify->add_option("--witnesses", witnesses, "stored witness file");
    verify->add_option("--write-witnesses", write_witnesses, "write the lightest known witnesses here");
    verify->add_option("--only", only, "restrict to these tags");
    verify->add_flag("--include-quarantined", with_quarantined);

    std::optional<std::size_t> cn, ck, cd;
    auto* cls = app.add_subcommand("classify", "classify codes against a target table");
    cls->add_option("--n", cn);
    cls->add_option("--k", ck);
    cls->add_option("--d", cd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*factor) {
            if (poly.empty() && m == 0) throw std::invalid_argument("give --m or --poly");
            return cmd_factor(g, m, a, poly);
        }
        if (*cc_list) return cmd_cc_list(g, m, a, k, with_d);
        if (*part) return cmd_partition(g, m, a, k, mode);
        if (*assemble) return cmd_assemble(src, show_matrix);
        if (*mindist) return cmd_mindist(g, src, checkpoint, resume, time_limit);
        if (*props) return cmd_props(src);
        if (*ext) return cmd_extend(g, src);
        if (*search) return cmd_search(g, config, candidate_budget, threads_opt->count() > 0, seed_opt->count() > 0);
        if (*verify) return cmd_verify_tables(g, golden, witnesses, write_witnesses, only, with_quarantined);
        if (*cls) return cmd_classify(g, cn, ck, cd);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const qtc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
