#pragma once

// Compact coefficient strings, published-table rows and their verification.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qtc/qt.hpp"

namespace qtc {

/// Coefficients in increasing powers of x, one alphabet symbol each.
inline Poly parse_coeffs(std::string_view text, const Field& F) {
    if (text.empty()) throw ParseError("empty coefficient string", 0);
    std::vector<Elem> c;
    c.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto e = F.from_symbol(text[i]);
        if (!e) throw ParseError(std::string("symbol '") + text[i] + "' not in GF(" + std::to_string(F.q()) + ")", i);
        c.push_back(*e);
    }
    return Poly(F, std::move(c));
}

inline std::string render_coeffs(const Poly& f) { return f.to_string(); }

enum class Property { none, lcd, dual_containing };

inline const char* to_string(Property p) {
    switch (p) {
        case Property::none: return "none";
        case Property::lcd: return "lcd";
        case Property::dual_containing: return "dual-containing";
    }
    return "?";
}

/// How the generator column of a table is read.
enum class GeneratorLayout {
    shared_g,  ///< one polynomial g with g1 = g2 = g
    g1_one,    ///< g1 = 1 and the printed polynomial is g2
};

struct TableCaption {
    GeneratorLayout layout = GeneratorLayout::shared_g;
    Property property = Property::none;
};

struct TableRow {
    std::string tag;
    std::size_t n = 0, k = 0, d = 0;
    unsigned q = 0;
    Elem a = 1;
    GeneratorLayout layout = GeneratorLayout::shared_g;
    Poly g;  ///< g or g2 depending on layout
    std::vector<Poly> f1, f2;
    Property property = Property::none;

    [[nodiscard]] std::size_t ell() const noexcept { return f1.size(); }
    [[nodiscard]] std::size_t m() const noexcept { return f1.empty() ? 0 : n / f1.size(); }
    [[nodiscard]] std::string params() const {
        return "[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + "]_" + std::to_string(q);
    }
};

namespace detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

inline std::size_t parse_size(const std::string& s, std::size_t pos) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a number, got '" + s + "'", pos);
    return std::stoul(s);
}

/// "[n,k,d]_q" with optional '$' and braces around q.
inline void parse_params(std::string s, TableRow& row) {
    std::erase_if(s, [](char c) { return c == '$' || c == '{' || c == '}'; });
    const auto open = s.find('['), close = s.find(']'), under = s.find('_');
    if (open != 0 || close == std::string::npos || under != close + 1)
        throw ParseError("malformed parameter triple '" + s + "'", 0);
    const auto parts = split(s.substr(1, close - 1), ',');
    if (parts.size() != 3) throw ParseError("parameter triple needs three entries", 1);
    row.n = parse_size(parts[0], 1);
    row.k = parse_size(parts[1], 1);
    row.d = parse_size(parts[2], 1);
    row.q = static_cast<unsigned>(parse_size(s.substr(under + 1), under + 1));
}

/// "[[f],[f],...]" -> list of strings.
inline std::vector<std::string> parse_bracket_list(const std::string& s) {
    if (s.size() < 4 || s.front() != '[' || s.back() != ']' || s[1] != '[' || s[s.size() - 2] != ']')
        throw ParseError("malformed polynomial list '" + s + "'", 0);
    const std::string inner = s.substr(2, s.size() - 4);
    std::vector<std::string> out;
    for (const auto& part : split(inner, ',')) {
        std::string p = part;
        if (p.front() == '[') p.erase(0, 1);
        if (!p.empty() && p.back() == ']') p.pop_back();
        if (p.empty() || p.find_first_of("[]") != std::string::npos)
            throw ParseError("malformed polynomial list '" + s + "'", 0);
        out.push_back(p);
    }
    return out;
}

inline void finish_row(TableRow& row) {
    if (row.f1.empty()) throw FormatError("row has no f1 polynomials");
    if (row.n % row.f1.size() != 0)
        throw FormatError("index " + std::to_string(row.f1.size()) + " does not divide n = " + std::to_string(row.n));
    if (!row.f2.empty() && row.f2.size() != row.f1.size())
        throw FormatError("f1 and f2 lists have different lengths");
}

}  // namespace detail

/// Parses a LaTeX table row `$[n,k,d]_q$ & $a,[g]$ & $[[f11],...],[[f21],...]$ \\`.
/// The shift constant defaults to 1 when it is not printed. Pass q = 0 to accept the row's own q.
inline TableRow parse_table_row(std::string_view line, unsigned q, const TableCaption& caption) {
    std::string s = detail::strip_spaces(line);
    if (const auto bs = s.find("\\\\"); bs != std::string::npos) s.erase(bs);
    std::erase(s, '$');
    const auto cols = detail::split(s, '&');
    if (cols.size() != 3) throw ParseError("expected three '&'-separated columns", 0);
    TableRow row;
    row.layout = caption.layout;
    row.property = caption.property;
    detail::parse_params(cols[0], row);
    if (q != 0 && q != row.q) throw FormatError("row is over GF(" + std::to_string(row.q) + "), expected GF(" + std::to_string(q) + ")");
    const Field& F = Field::get(row.q);

    const std::string& gcol = cols[1];
    const auto lb = gcol.find('[');
    if (lb == std::string::npos || gcol.back() != ']') throw ParseError("malformed generator column '" + gcol + "'", 0);
    if (lb > 0) {
        if (gcol[lb - 1] != ',') throw ParseError("expected ',' after the shift constant", lb);
        const std::size_t a = detail::parse_size(gcol.substr(0, lb - 1), 0);
        if (a == 0 || a >= row.q) throw InvalidShiftConstant("shift constant " + std::to_string(a) + " out of range");
        row.a = static_cast<Elem>(a);
    }
    row.g = parse_coeffs(gcol.substr(lb + 1, gcol.size() - lb - 2), F);

    const std::string& fcol = cols[2];
    const auto mid = fcol.find("]],[[");
    if (mid == std::string::npos) throw ParseError("expected two polynomial lists", 0);
    for (const auto& t : detail::parse_bracket_list(fcol.substr(0, mid + 2))) row.f1.push_back(parse_coeffs(t, F));
    for (const auto& t : detail::parse_bracket_list(fcol.substr(mid + 3))) row.f2.push_back(parse_coeffs(t, F));
    detail::finish_row(row);
    return row;
}

/// One line of the golden file. Quarantined rows keep their raw text and are not parsed.
struct GoldenEntry {
    std::string tag;
    std::string line;
    bool quarantined = false;
    TableRow row;
};

inline GoldenEntry parse_golden_line(const std::string& line) {
    const auto cols = detail::split(line, '|');
    if (cols.size() != 7) throw ParseError("golden row needs 7 '|'-separated columns", 0);
    std::vector<std::string> c;
    for (const auto& col : cols) c.push_back(detail::strip_spaces(col));
    GoldenEntry e;
    e.tag = c[0];
    e.line = line;
    TableRow& row = e.row;
    row.tag = c[0];
    {
        std::istringstream props(cols[6]);
        for (std::string tok; props >> tok;) {
            if (tok == "lcd") row.property = Property::lcd;
            else if (tok == "dual-containing") row.property = Property::dual_containing;
            else if (tok == "quarantined") e.quarantined = true;
            else if (tok != "none") throw ParseError("unknown property '" + tok + "'", 0);
        }
    }
    detail::parse_params(c[1], row);
    if (e.quarantined) return e;
    const Field& F = Field::get(row.q);
    const std::size_t a = detail::parse_size(c[2], 0);
    if (a == 0 || a >= row.q) throw InvalidShiftConstant("shift constant out of range");
    row.a = static_cast<Elem>(a);
    if (c[3].starts_with("g=")) {
        row.layout = GeneratorLayout::shared_g;
        row.g = parse_coeffs(c[3].substr(2), F);
    } else if (c[3].starts_with("g2=")) {
        row.layout = GeneratorLayout::g1_one;
        row.g = parse_coeffs(c[3].substr(3), F);
    } else {
        throw ParseError("generator column must start with g= or g2=", 0);
    }
    for (const auto& t : detail::split(c[4], ',')) row.f1.push_back(parse_coeffs(t, F));
    for (const auto& t : detail::split(c[5], ',')) row.f2.push_back(parse_coeffs(t, F));
    detail::finish_row(row);
    return e;
}

inline std::vector<GoldenEntry> load_golden(std::istream& is) {
    std::vector<GoldenEntry> out;
    for (std::string line; std::getline(is, line);) {
        if (detail::strip_spaces(line).empty() || line.front() == '#') continue;
        out.push_back(parse_golden_line(line));
    }
    return out;
}

inline std::vector<GoldenEntry> load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return load_golden(in);
}

/// `tag hexword` per line.
inline std::map<std::string, std::string> load_witnesses(const std::string& path) {
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    if (!in) return out;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line.front() == '#') continue;
        std::istringstream ls(line);
        std::string tag, hex;
        if (ls >> tag >> hex) out[tag] = hex;
    }
    return out;
}

inline QTGeneratorSpec row_spec(const TableRow& row) {
    const Field& F = Field::get(row.q);
    QTGeneratorSpec s;
    s.field = &F;
    s.ell = row.ell();
    s.m = row.m();
    s.a = row.a;
    s.f1 = row.f1;
    s.f2 = row.f2;
    if (row.layout == GeneratorLayout::shared_g) {
        s.form = QtForm::TwoGenP1;
        s.g = row.g;
        s.p = Poly::one(F);
    } else {
        s.form = QtForm::TwoGenIdentityG1;
        s.g = Poly::one(F);
        s.p = row.g;
    }
    return s;
}

enum class Tier { quick, full, automatic };

inline Tier tier_from_string(const std::string& s) {
    if (s == "quick") return Tier::quick;
    if (s == "full") return Tier::full;
    if (s == "auto") return Tier::automatic;
    throw ConfigError("unknown tier '" + s + "'");
}

/// Rows up to k = 40 and n = 105 are certified exactly unless the quick tier is forced.
inline Tier default_tier(const TableRow& row) { return row.k <= 40 && row.n <= 105 ? Tier::full : Tier::quick; }

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string tag;
    std::string params;
    Tier tier = Tier::quick;
    std::vector<Assertion> assertions;
    std::optional<DistanceResult> distance;
    bool budget_exhausted = false;

    [[nodiscard]] bool passed() const {
        return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
    }
};

struct VerifyOptions {
    bool check_distance = true;
    bool check_property = true;
    /// Candidate budget for the full tier.
    std::uint64_t full_budget = 100'000'000'000ULL;
    /// Candidate budget for the quick tier's lower bound.
    std::uint64_t quick_budget = 10'000'000;
    unsigned threads = 1;
    std::optional<std::string> witness_hex;
};

inline VerificationReport verify_row(const TableRow& row, Tier tier, const VerifyOptions& opt = {}) {
    if (tier == Tier::automatic) tier = default_tier(row);
    VerificationReport rep;
    rep.tag = row.tag;
    rep.params = row.params();
    rep.tier = tier;
    auto add = [&](std::string name, bool pass, std::string detail) {
        rep.assertions.push_back({std::move(name), pass, std::move(detail)});
    };

    QTCode code;
    try {
        code = qt_assemble(row_spec(row), DefectPolicy::report);
    } catch (const Error& e) {
        add("assemble", false, e.what());
        return rep;
    }
    add("assemble", true, "m=" + std::to_string(code.spec.m) + " ell=" + std::to_string(code.spec.ell));
    add("n", code.n() == row.n, std::to_string(code.n()));
    add("k", code.k() == row.k, std::to_string(code.k()));

    if (opt.check_distance) {
        DistanceOptions dopt;
        dopt.threads = opt.threads;
        dopt.code_id = row.tag;
        if (tier == Tier::full) {
            dopt.budget = opt.full_budget;
            const DistanceResult r = min_distance(code.matrix, dopt);
            rep.distance = r;
            if (r.is_exact()) {
                add("d", r.upper == row.d, "exact d=" + std::to_string(r.upper));
            } else {
                rep.budget_exhausted = true;
                add("d", false,
                    "budget exhausted with " + std::to_string(r.lower) + " <= d <= " + std::to_string(r.upper));
            }
        } else {
            std::size_t upper = 0;
            std::string how;
            if (opt.witness_hex) {
                const Vec w = from_hex(*opt.witness_hex, code.matrix.field());
                try {
                    upper = witness_weight(code.matrix, w);
                    how = "witness weight " + std::to_string(upper);
                } catch (const Error& e) {
                    how = e.what();
                }
            }
            dopt.budget = opt.quick_budget;
            dopt.stop_at_lower = row.d;
            const DistanceResult r = min_distance(code.matrix, dopt);
            rep.distance = r;
            if (upper == 0 || r.upper < upper) {
                upper = r.upper;
                how = "search upper " + std::to_string(upper);
            }
            const std::size_t lower = std::max(r.lower, code.distance_floor);
            add("d<=", upper == row.d, how);
            add("d>=", lower <= row.d,
                "lower " + std::to_string(lower) + " (floor " + std::to_string(code.distance_floor) + ")");
        }
    }
    if (opt.check_property) {
        if (row.property == Property::lcd) add("lcd", is_lcd(code.matrix), "");
        if (row.property == Property::dual_containing) add("dual-containing", is_dual_containing(code.matrix), "");
    }
    return rep;
}

}  // namespace qtc
