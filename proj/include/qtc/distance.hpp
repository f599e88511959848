#pragma once

// Minimum distance and weight distribution of linear codes over GF(q).
//
// `weight_distribution_bruteforce` walks the whole code and serves as the
// oracle. `min_distance` is an information-set enumerator in the style of
// Brouwer and Zimmermann: the coordinates are covered by (near-)disjoint
// information sets obtained from repeated row reduction, and every set is
// enumerated level by level (messages of information weight 1, 2, ...). After
// level w has been completed on set j, every codeword not yet seen has at least
// max(0, w + 1 - (k - r_j)) nonzeros on the r_j fresh columns of that set, so
// the sum over sets is a certified lower bound. The run is exact once that
// bound meets the weight of the best codeword found.
//
// The enumeration works on packed rows: bit-packed words for GF(2) and one
// byte per coordinate otherwise. Work is measured in enumerated codewords and
// checked only between (set, level) units so results are reproducible for a
// given budget; within a unit the leading message position is sharded across
// worker threads and the shards are merged in a fixed order.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qtc/linear_code.hpp"

namespace qtc {

/// Counts of codewords by Hamming weight; index w holds A_w, the vector has n + 1 entries.
inline std::vector<std::uint64_t> weight_distribution_bruteforce(const GeneratorMatrix& g,
                                                                 std::uint64_t budget = std::uint64_t{1} << 24) {
    const Field& F = g.field();
    const std::size_t n = g.length();
    const RrefResult r = rref(g);
    const unsigned p = F.characteristic();
    const unsigned e = F.degree();

    // The code as a GF(p)-space: rows t^j * b_i, where t^j has index p^j.
    std::vector<Vec> rows;
    for (const auto& b : r.matrix.rows()) {
        Elem basis = 1;
        for (unsigned j = 0; j < e; ++j, basis = static_cast<Elem>(basis * p)) {
            Vec v(n);
            for (std::size_t c = 0; c < n; ++c) v[c] = F.mul(basis, b[c]);
            rows.push_back(std::move(v));
        }
    }
    long double total = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) total *= p;
    if (total > static_cast<long double>(budget))
        throw OracleScaleExceeded("q^k = " + std::to_string(static_cast<double>(total)) + " codewords exceeds budget " +
                                  std::to_string(budget));

    std::vector<std::uint64_t> counts(n + 1, 0);
    Vec word(n, 0);
    std::vector<unsigned> digits(rows.size(), 0);
    counts[0] = 1;
    for (;;) {
        std::size_t i = 0;
        // Odometer step: adding a row p times returns it to zero, so carries need no correction.
        for (; i < rows.size(); ++i) {
            for (std::size_t c = 0; c < n; ++c) word[c] = F.add(word[c], rows[i][c]);
            if (++digits[i] < p) break;
            digits[i] = 0;
        }
        if (i == rows.size()) break;
        ++counts[hamming_weight(word)];
    }
    return counts;
}

/// Minimum nonzero weight from a weight distribution (0 for the zero code).
inline std::size_t min_weight_of(const std::vector<std::uint64_t>& counts) {
    for (std::size_t w = 1; w < counts.size(); ++w)
        if (counts[w] != 0) return w;
    return 0;
}

enum class DistanceStatusKind { exact, bounded, budget_exhausted };

inline const char* to_string(DistanceStatusKind s) {
    switch (s) {
        case DistanceStatusKind::exact: return "exact";
        case DistanceStatusKind::bounded: return "bounded";
        case DistanceStatusKind::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

/// Resumable state of a minimum-distance run.
struct DistanceCheckpoint {
    std::string code_id;
    std::vector<unsigned> levels;  ///< completed enumeration level per information set
    std::size_t upper = 0;
    Vec witness;
};

inline char hex_digit(unsigned x) { return "0123456789abcdef"[x & 15U]; }

/// One hex digit per coordinate (q <= 9 so every element index fits).
inline std::string to_hex(const Vec& v) {
    std::string s;
    s.reserve(v.size());
    for (Elem x : v) s.push_back(hex_digit(x));
    return s;
}

inline Vec from_hex(const std::string& s, const Field& F) {
    Vec v;
    v.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        unsigned x = 0;
        if (c >= '0' && c <= '9') x = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') x = static_cast<unsigned>(c - 'a' + 10);
        else throw ParseError("not a hex digit", i);
        if (x >= F.q()) throw ParseError("element index outside the field", i);
        v.push_back(static_cast<Elem>(x));
    }
    return v;
}

inline void write_checkpoint(std::ostream& os, const DistanceCheckpoint& c) {
    os << "code_id " << c.code_id << '\n' << "levels";
    for (unsigned l : c.levels) os << ' ' << l;
    os << '\n' << "upper " << c.upper << '\n' << "witness " << to_hex(c.witness) << '\n';
}

inline DistanceCheckpoint read_checkpoint(std::istream& is, const Field& F) {
    DistanceCheckpoint c;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "code_id") ls >> c.code_id;
        else if (key == "levels") for (unsigned l; ls >> l;) c.levels.push_back(l);
        else if (key == "upper") ls >> c.upper;
        else if (key == "witness") {
            std::string hex;
            ls >> hex;
            c.witness = from_hex(hex, F);
        } else if (!key.empty()) throw FormatError("unknown checkpoint key '" + key + "'");
    }
    return c;
}

struct DistanceOptions {
    /// Maximum number of enumerated candidate codewords.
    std::uint64_t budget = 100'000'000;
    /// Wall-clock cap in seconds; 0 disables it.
    double time_limit = 0;
    unsigned threads = 1;
    /// Return `bounded` as soon as the certified lower bound reaches this value.
    std::optional<std::size_t> stop_at_lower;
    std::optional<DistanceCheckpoint> resume;
    std::function<void(const DistanceCheckpoint&)> on_checkpoint;
    std::string code_id = "code";
};

struct DistanceResult {
    DistanceStatusKind status = DistanceStatusKind::budget_exhausted;
    std::size_t lower = 0;
    std::size_t upper = 0;
    Vec witness;
    std::uint64_t work = 0;
    double elapsed = 0;
    std::vector<unsigned> levels;        ///< completed level per information set
    std::vector<std::size_t> set_ranks;  ///< rank of each information set's fresh columns

    [[nodiscard]] bool is_exact() const noexcept { return status == DistanceStatusKind::exact; }
    [[nodiscard]] DistanceStatus as_status() const {
        if (is_exact()) return DistanceExact{upper};
        return DistanceBounds{lower, upper};
    }
};

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

/// Number of projective messages with exactly `level` nonzeros among k positions.
inline std::uint64_t level_size(std::size_t k, unsigned level, unsigned q) {
    std::uint64_t r = binomial(k, level);
    for (unsigned i = 1; i < level; ++i) r = sat_mul(r, q - 1);
    return r;
}

struct BinaryOps {
    using word = std::uint64_t;
    static constexpr std::size_t kPerWord = 64;
    static word add(word a, word b) noexcept { return a ^ b; }
    static unsigned weight(word w) noexcept { return static_cast<unsigned>(std::popcount(w)); }
    static std::size_t words(std::size_t n) { return (n + 63) / 64; }
    static void pack(const Vec& v, word* out) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) out[i / 64] |= word{1} << (i % 64);
    }
    static Vec unpack(const word* in, std::size_t n) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Elem>((in[i / 64] >> (i % 64)) & 1U);
        return v;
    }
};

struct ByteOpsBase {
    using word = std::uint8_t;
    static unsigned weight(word w) noexcept { return w != 0; }
    static std::size_t words(std::size_t n) { return n; }
    static void pack(const Vec& v, word* out) { std::copy(v.begin(), v.end(), out); }
    static Vec unpack(const word* in, std::size_t n) { return Vec(in, in + n); }
};

template <unsigned P>
struct ModPOps : ByteOpsBase {
    static word add(word a, word b) noexcept {
        const word s = static_cast<word>(a + b);
        return std::min<word>(s, static_cast<word>(s - P));
    }
};

/// Characteristic-2 extension fields: element indices add as bit vectors.
struct XorOps : ByteOpsBase {
    static word add(word a, word b) noexcept { return a ^ b; }
};

/// GF(9): indices c0 + 3 c1 add digitwise mod 3.
struct Gf9Ops : ByteOpsBase {
    static word add(word a, word b) noexcept {
        static const auto table = [] {
            std::array<word, 81> t{};
            for (unsigned x = 0; x < 9; ++x)
                for (unsigned y = 0; y < 9; ++y)
                    t[x * 9 + y] = static_cast<word>((x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3));
            return t;
        }();
        return table[a * 9 + b];
    }
};

struct EnumBest {
    std::size_t weight = std::numeric_limits<std::size_t>::max();
    Vec witness;
    std::uint64_t work = 0;
};

/// Packed rows of one systematic generator, with every nonzero multiple of each row.
template <class Ops>
class PackedSet {
public:
    using word = typename Ops::word;

    PackedSet(const GeneratorMatrix& basis)
        : n_(basis.length()), k_(basis.row_count()), q_(basis.field().q()), w_(Ops::words(n_)) {
        const Field& F = basis.field();
        rows_.assign(k_ * (q_ - 1) * w_, word{0});
        for (std::size_t i = 0; i < k_; ++i) {
            for (unsigned s = 1; s < q_; ++s) {
                Vec v(n_);
                for (std::size_t c = 0; c < n_; ++c) v[c] = F.mul(static_cast<Elem>(s), basis.row(i)[c]);
                Ops::pack(v, row(i, s - 1));
            }
        }
    }

    [[nodiscard]] std::size_t k() const noexcept { return k_; }

    /// All projective messages of exactly `level` nonzeros whose first nonzero is at `first`.
    void enumerate_shard(unsigned level, std::size_t first, EnumBest& best, const std::atomic<bool>* abort) const {
        std::vector<word> acc(static_cast<std::size_t>(level) * w_);
        std::copy_n(row(first, 0), w_, acc.data());
        if (level == 1) {
            std::size_t wt = 0;
            for (std::size_t i = 0; i < w_; ++i) wt += Ops::weight(acc[i]);
            ++best.work;
            consider(wt, acc.data(), best);
            return;
        }
        recurse(1, first + 1, level, acc.data(), best, abort);
    }

private:
    const word* row(std::size_t i, unsigned s) const { return rows_.data() + (i * (q_ - 1) + s) * w_; }
    word* row(std::size_t i, unsigned s) { return rows_.data() + (i * (q_ - 1) + s) * w_; }

    void consider(std::size_t wt, const word* v, EnumBest& best) const {
        if (wt < best.weight) {
            best.weight = wt;
            best.witness = Ops::unpack(v, n_);
        }
    }

    void recurse(unsigned depth, std::size_t start, unsigned level, word* acc, EnumBest& best,
                 const std::atomic<bool>* abort) const {
        const word* prev = acc + (depth - 1) * w_;
        word* cur = acc + depth * w_;
        const std::size_t last = k_ - (level - depth);
        const bool leaf = depth + 1 == level;
        for (std::size_t pos = start; pos <= last; ++pos) {
            for (unsigned s = 0; s + 1 < q_; ++s) {
                const word* r = row(pos, s);
                if (leaf) {
                    std::size_t wt = 0;
                    for (std::size_t i = 0; i < w_; ++i) {
                        cur[i] = Ops::add(prev[i], r[i]);
                        wt += Ops::weight(cur[i]);
                    }
                    if (wt < best.weight) consider(wt, cur, best);
                } else {
                    for (std::size_t i = 0; i < w_; ++i) cur[i] = Ops::add(prev[i], r[i]);
                    recurse(depth + 1, pos + 1, level, acc, best, abort);
                }
            }
            if (leaf) {
                best.work += q_ - 1;
            } else if (abort != nullptr && abort->load(std::memory_order_relaxed)) {
                return;
            }
        }
    }

    std::size_t n_;
    std::size_t k_;
    unsigned q_;
    std::size_t w_;
    std::vector<word> rows_;
};

/// Enumerates one (set, level) unit, sharded over the first message position.
template <class Ops>
EnumBest enumerate_level(const PackedSet<Ops>& set, unsigned level, unsigned threads, const std::atomic<bool>* abort) {
    const std::size_t shards = set.k() - level + 1;
    std::vector<EnumBest> results(shards);
    if (threads <= 1 || shards == 1) {
        for (std::size_t s = 0; s < shards; ++s) {
            set.enumerate_shard(level, s, results[s], abort);
            if (abort != nullptr && abort->load(std::memory_order_relaxed)) break;
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(threads, shards); ++t) {
            pool.emplace_back([&] {
                for (std::size_t s; (s = next.fetch_add(1)) < shards;) {
                    if (abort != nullptr && abort->load(std::memory_order_relaxed)) break;
                    set.enumerate_shard(level, s, results[s], abort);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    EnumBest merged;
    for (auto& r : results) {
        merged.work += r.work;
        if (r.weight < merged.weight) {
            merged.weight = r.weight;
            merged.witness = std::move(r.witness);
        }
    }
    return merged;
}

/// Systematic generators of greedily chosen disjoint information sets.
struct InfoSets {
    std::vector<GeneratorMatrix> gammas;
    std::vector<std::size_t> ranks;
};

inline InfoSets information_sets(const RrefResult& base) {
    const std::size_t n = base.matrix.length();
    InfoSets out;
    std::vector<bool> used(n, false);
    for (;;) {
        std::vector<std::size_t> order;
        for (std::size_t c = 0; c < n; ++c)
            if (!used[c]) order.push_back(c);
        const std::size_t fresh = order.size();
        if (fresh == 0) break;
        for (std::size_t c = 0; c < n; ++c)
            if (used[c]) order.push_back(c);
        RrefResult r = rref(base.matrix, order);
        std::size_t rank_fresh = 0;
        for (std::size_t p : r.pivots) {
            if (!used[p]) {
                ++rank_fresh;
            }
        }
        if (rank_fresh == 0) break;
        for (std::size_t p : r.pivots) used[p] = true;
        out.gammas.push_back(std::move(r.matrix));
        out.ranks.push_back(rank_fresh);
    }
    return out;
}

template <class Ops>
DistanceResult run_min_distance(const RrefResult& base, const DistanceOptions& opt) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const std::size_t k = base.rank;
    const unsigned q = base.matrix.field().q();
    const InfoSets info = information_sets(base);
    std::vector<PackedSet<Ops>> sets;
    sets.reserve(info.gammas.size());
    for (const auto& gm : info.gammas) sets.emplace_back(gm);

    DistanceResult res;
    res.set_ranks = info.ranks;
    res.levels.assign(sets.size(), 0);
    res.upper = std::numeric_limits<std::size_t>::max();
    if (opt.resume && opt.resume->levels.size() == sets.size()) {
        res.levels = opt.resume->levels;
        if (!opt.resume->witness.empty()) {
            res.upper = opt.resume->upper;
            res.witness = opt.resume->witness;
        }
    } else if (opt.resume) {
        throw FormatError("checkpoint does not match the information-set layout of this code");
    }

    auto lower_bound = [&] {
        std::size_t lb = 0;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            const std::size_t deficit = k - info.ranks[j];
            const std::size_t reach = res.levels[j] + 1;
            if (reach > deficit) lb += reach - deficit;
        }
        return std::max<std::size_t>(lb, 1);
    };
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
    auto finish = [&](DistanceStatusKind s) {
        res.status = s;
        res.lower = std::min(lower_bound(), res.upper);
        if (s == DistanceStatusKind::exact) res.lower = res.upper;
        res.elapsed = elapsed();
        return res;
    };
    auto exhausted_full_set = [&] {
        for (std::size_t j = 0; j < sets.size(); ++j)
            if (info.ranks[j] == k && res.levels[j] >= k) return true;
        return false;
    };

    std::atomic<bool> abort{false};
    std::thread watchdog;
    std::atomic<bool> done{false};
    if (opt.time_limit > 0) {
        watchdog = std::thread([&] {
            while (!done.load()) {
                if (elapsed() > opt.time_limit) {
                    abort.store(true);
                    return;
                }
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
            }
        });
    }
    struct Joiner {
        std::atomic<bool>& done;
        std::thread& t;
        ~Joiner() {
            done.store(true);
            if (t.joinable()) t.join();
        }
    } joiner{done, watchdog};

    for (unsigned w = 1; w <= k; ++w) {
        for (std::size_t j = 0; j < sets.size(); ++j) {
            const std::size_t deficit = k - info.ranks[j];
            if (w + 1 <= deficit) continue;  // this set cannot contribute yet
            while (res.levels[j] < w) {
                if (exhausted_full_set() || lower_bound() >= res.upper) return finish(DistanceStatusKind::exact);
                if (opt.stop_at_lower && lower_bound() >= *opt.stop_at_lower)
                    return finish(DistanceStatusKind::bounded);
                const unsigned level = res.levels[j] + 1;
                const std::uint64_t cost = level_size(k, level, q);
                if (cost > opt.budget || res.work + cost > opt.budget || abort.load())
                    return finish(DistanceStatusKind::budget_exhausted);
                EnumBest b = enumerate_level(sets[j], level, opt.threads, &abort);
                res.work += b.work;
                if (b.weight < res.upper) {
                    res.upper = b.weight;
                    res.witness = std::move(b.witness);
                }
                if (abort.load()) return finish(DistanceStatusKind::budget_exhausted);
                res.levels[j] = level;
                if (opt.on_checkpoint) opt.on_checkpoint({opt.code_id, res.levels, res.upper, res.witness});
            }
        }
    }
    return finish(DistanceStatusKind::exact);
}

}  // namespace detail

/// Certified minimum distance within a work budget; see the file comment for the bound.
inline DistanceResult min_distance(const GeneratorMatrix& g, const DistanceOptions& opt = {}) {
    const RrefResult base = rref(g);
    if (base.rank == 0) throw ZeroCode("minimum distance of the zero code is undefined");
    switch (g.field().q()) {
        case 2: return detail::run_min_distance<detail::BinaryOps>(base, opt);
        case 3: return detail::run_min_distance<detail::ModPOps<3>>(base, opt);
        case 5: return detail::run_min_distance<detail::ModPOps<5>>(base, opt);
        case 7: return detail::run_min_distance<detail::ModPOps<7>>(base, opt);
        case 4:
        case 8: return detail::run_min_distance<detail::XorOps>(base, opt);
        case 9: return detail::run_min_distance<detail::Gf9Ops>(base, opt);
        default: throw UnsupportedField("no distance kernel for q = " + std::to_string(g.field().q()));
    }
}

/// Weight of a codeword after confirming it lies in the code.
inline std::size_t witness_weight(const GeneratorMatrix& g, const Vec& word) {
    if (!in_row_space(rref(g), word)) throw NotACodeword("word is not in the row space");
    return hamming_weight(word);
}

namespace detail {

template <class Ops>
EnumBest probe_with(const RrefResult& base, unsigned trials, unsigned max_level, std::uint64_t seed) {
    const std::size_t n = base.matrix.length();
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    EnumBest best;
    for (unsigned t = 0; t < trials; ++t) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        const RrefResult r = rref(base.matrix, order);
        const PackedSet<Ops> set(r.matrix);
        for (unsigned level = 1; level <= std::min<std::size_t>(max_level, r.rank); ++level) {
            EnumBest b = enumerate_level(set, level, 1, nullptr);
            best.work += b.work;
            if (b.weight < best.weight) {
                best.weight = b.weight;
                best.witness = std::move(b.witness);
            }
        }
    }
    return best;
}

}  // namespace detail

/// Fast non-certifying upper bound: low-weight messages on random information sets.
/// Returns the lightest codeword found (weight in `.first`).
inline std::pair<std::size_t, Vec> probe_upper_bound(const GeneratorMatrix& g, unsigned trials = 8,
                                                     unsigned max_level = 2, std::uint64_t seed = 1) {
    const RrefResult base = rref(g);
    if (base.rank == 0) throw ZeroCode("probe on the zero code");
    detail::EnumBest b;
    switch (g.field().q()) {
        case 2: b = detail::probe_with<detail::BinaryOps>(base, trials, max_level, seed); break;
        case 3: b = detail::probe_with<detail::ModPOps<3>>(base, trials, max_level, seed); break;
        case 5: b = detail::probe_with<detail::ModPOps<5>>(base, trials, max_level, seed); break;
        case 7: b = detail::probe_with<detail::ModPOps<7>>(base, trials, max_level, seed); break;
        case 4:
        case 8: b = detail::probe_with<detail::XorOps>(base, trials, max_level, seed); break;
        default: b = detail::probe_with<detail::Gf9Ops>(base, trials, max_level, seed); break;
    }
    return {b.weight, std::move(b.witness)};
}

}  // namespace qtc
