#include "caylab/attack.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "caylab/errors.hpp"
#include "caylab/hashes.hpp"
#include "caylab/rng.hpp"

namespace caylab {

namespace {

// ---------------------------------------------------------------------------
// Subset-sum solver internals. The algorithms are written once against a
// value type V and run on uint64_t residues whenever the modulus fits a
// word, on mpz otherwise. Results are identical either way, and every
// returned selection is re-verified by SubsetSumSolution.
// ---------------------------------------------------------------------------

template <class V>
struct ModOps {
    V p;

    V add(const V& a, const V& b) const {
        V s = a + b;
        if (s >= p) s -= p;
        return s;
    }
    V sub(const V& a, const V& b) const {
        return a >= b ? V(a - b) : V(a + p - b);
    }
};

template <class V>
V field_value(const FieldElement& e);

template <>
std::uint64_t field_value<std::uint64_t>(const FieldElement& e) {
    return mpz_get_ui(e.value().get_mpz_t());
}

template <>
mpz_class field_value<mpz_class>(const FieldElement& e) {
    return e.value();
}

template <class V>
V modulus_value(const PrimeModulus& p);

template <>
std::uint64_t modulus_value<std::uint64_t>(const PrimeModulus& p) {
    return mpz_get_ui(p.value().get_mpz_t());
}

template <>
mpz_class modulus_value<mpz_class>(const PrimeModulus& p) {
    return p.value();
}

template <class V>
std::vector<V> instance_weights(const SubsetSumInstance& inst) {
    std::vector<V> w;
    w.reserve(inst.n());
    for (const auto& e : inst.weights()) w.push_back(field_value<V>(e));
    return w;
}

// Complete Gray-code scan of all 2^n selections; one modular add or sub per
// step. First hit in Gray order wins.
template <class V>
std::optional<std::vector<std::uint8_t>> exhaustive_core(
    const ModOps<V>& ops, const std::vector<V>& w, const V& target) {
    const std::size_t n = w.size();
    std::uint64_t mask = 0;
    V cur{};
    if (cur == target) return std::vector<std::uint8_t>(n, 0);
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(k));
        const std::uint64_t bit = std::uint64_t{1} << j;
        cur = (mask & bit) ? ops.sub(cur, w[j]) : ops.add(cur, w[j]);
        mask ^= bit;
        if (cur == target) {
            std::vector<std::uint8_t> x(n, 0);
            for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
            return x;
        }
    }
    return std::nullopt;
}

// Complete meet-in-the-middle: enumerate and sort the low-half sums, then
// scan the high half probing for target minus the partial sum.
template <class V>
std::optional<std::vector<std::uint8_t>> mitm_core(const ModOps<V>& ops,
                                                   const std::vector<V>& w,
                                                   const V& target) {
    const std::size_t n = w.size();
    const std::size_t nl = n / 2;
    const std::size_t nr = n - nl;

    std::vector<std::pair<V, std::uint64_t>> left;
    left.reserve(std::size_t{1} << nl);
    {
        V cur{};
        std::uint64_t mask = 0;
        left.emplace_back(cur, mask);
        for (std::uint64_t k = 1; k < (std::uint64_t{1} << nl); ++k) {
            const unsigned j = static_cast<unsigned>(std::countr_zero(k));
            const std::uint64_t bit = std::uint64_t{1} << j;
            cur = (mask & bit) ? ops.sub(cur, w[j]) : ops.add(cur, w[j]);
            mask ^= bit;
            left.emplace_back(cur, mask);
        }
    }
    std::sort(left.begin(), left.end());

    auto probe = [&](const V& need, std::uint64_t rmask)
        -> std::optional<std::vector<std::uint8_t>> {
        auto it = std::lower_bound(
            left.begin(), left.end(), need,
            [](const std::pair<V, std::uint64_t>& e, const V& v) {
                return e.first < v;
            });
        if (it == left.end() || it->first != need) return std::nullopt;
        std::vector<std::uint8_t> x(n, 0);
        for (std::size_t i = 0; i < nl; ++i) x[i] = (it->second >> i) & 1;
        for (std::size_t i = 0; i < nr; ++i) x[nl + i] = (rmask >> i) & 1;
        return x;
    };

    V cur{};
    std::uint64_t mask = 0;
    if (auto x = probe(ops.sub(target, cur), mask)) return x;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << nr); ++k) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(k));
        const std::uint64_t bit = std::uint64_t{1} << j;
        cur = (mask & bit) ? ops.sub(cur, w[nl + j]) : ops.add(cur, w[nl + j]);
        mask ^= bit;
        if (auto x = probe(ops.sub(target, cur), mask)) return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Seeded multi-level list merge for dense instances. Indices are split into
// k ~ sqrt(n) groups; each group contributes a list of m random partial
// sums, and the lists merge pairwise under a window around 0 (mod p) that
// narrows by a factor ~m/2 per level. The target is folded into list 0, so
// root entries with sum 0 decode to exact solutions.
// ---------------------------------------------------------------------------

struct ListMergePlan {
    std::size_t lists;      // k, a power of two
    unsigned levels;        // log2 k
    unsigned beta;          // log2 of the per-list sample count
    std::size_t list_size;  // m = 2^beta
};

std::optional<ListMergePlan> plan_list_merge(std::size_t n, std::size_t bits) {
    if (n < 2) return std::nullopt;
    std::size_t k = std::bit_ceil(static_cast<std::size_t>(
        std::max(2.0, std::ceil(std::sqrt(static_cast<double>(n))))));
    for (; k >= 2; k >>= 1) {
        if (k > n) continue;
        const unsigned levels = static_cast<unsigned>(std::countr_zero(k));
        // kills all of log2(p) with a 2^6 expected surplus of root hits
        const unsigned beta = std::max<unsigned>(
            6u, static_cast<unsigned>((bits + 2 * levels + 5) / (levels + 1)));
        if (beta > 20) continue;
        if (n / k < beta) continue;
        return ListMergePlan{k, levels, beta, std::size_t{1} << beta};
    }
    return std::nullopt;
}

template <class V>
struct LmEntry {
    V value;
    std::vector<std::uint32_t> samples;  // one sample id per leaf list covered

    bool operator<(const LmEntry& o) const {
        if (value != o.value) return value < o.value;
        return samples < o.samples;
    }
};

template <class V>
std::optional<std::vector<std::uint8_t>> list_merge_attempt(
    const ModOps<V>& ops, const std::vector<V>& w, const V& target,
    const ListMergePlan& plan, Rng& rng) {
    const std::size_t n = w.size();
    const std::size_t k = plan.lists;
    const std::size_t m = plan.list_size;

    std::vector<std::size_t> fence(k + 1);
    for (std::size_t i = 0; i <= k; ++i) fence[i] = i * n / k;

    std::vector<std::vector<std::uint8_t>> masks(k);  // stride = group size
    std::vector<std::vector<LmEntry<V>>> frontier(k);
    for (std::size_t list = 0; list < k; ++list) {
        const std::size_t lo = fence[list];
        const std::size_t gs = fence[list + 1] - fence[list];
        masks[list].resize(m * gs);
        auto& entries = frontier[list];
        entries.reserve(m);
        for (std::uint32_t s = 0; s < m; ++s) {
            V acc{};
            for (std::size_t j = 0; j < gs; ++j) {
                const std::uint8_t bit = rng.coin() ? 1 : 0;
                masks[list][s * gs + j] = bit;
                if (bit) acc = ops.add(acc, w[lo + j]);
            }
            if (list == 0) acc = ops.sub(acc, target);
            entries.push_back(LmEntry<V>{std::move(acc), {s}});
        }
        std::sort(entries.begin(), entries.end());
    }

    V half_width = V(ops.p >> (plan.beta + 1));
    if (half_width == V{}) half_width = 1;

    auto join = [&](const std::vector<LmEntry<V>>& a,
                    const std::vector<LmEntry<V>>& b, bool exact,
                    std::size_t cap) {
        std::vector<LmEntry<V>> out;
        auto emit_range = [&](const LmEntry<V>& ea, const V& lo, const V& len) {
            auto it = std::lower_bound(
                b.begin(), b.end(), lo,
                [](const LmEntry<V>& e, const V& x) { return e.value < x; });
            const V hi = lo + len;  // <= p by construction of the ranges
            for (; it != b.end() && it->value < hi && out.size() < cap; ++it) {
                LmEntry<V> e{ops.add(ea.value, it->value), ea.samples};
                e.samples.insert(e.samples.end(), it->samples.begin(),
                                 it->samples.end());
                out.push_back(std::move(e));
            }
        };
        for (const auto& ea : a) {
            if (out.size() >= cap) break;
            const V center = ops.sub(V{}, ea.value);
            if (exact) {
                emit_range(ea, center, V(1));
            } else {
                // accept sums within half_width of 0 (mod p): a circular
                // interval of width 2*half_width - 1 centered on -a
                const V width = V(half_width + half_width - 1);
                const V lo = ops.sub(center, V(half_width - 1));
                if (V(ops.p - lo) >= width) {
                    emit_range(ea, lo, width);
                } else {
                    emit_range(ea, lo, V(ops.p - lo));
                    emit_range(ea, V{}, V(width - (ops.p - lo)));
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    while (frontier.size() > 1) {
        const bool exact = frontier.size() == 2;
        std::vector<std::vector<LmEntry<V>>> next;
        next.reserve(frontier.size() / 2);
        for (std::size_t i = 0; i < frontier.size(); i += 2) {
            next.push_back(
                join(frontier[i], frontier[i + 1], exact, exact ? 4096 : m));
            if (next.back().empty()) return std::nullopt;  // lists died out
        }
        frontier.swap(next);
        half_width = half_width >> (plan.beta - 1);
        if (half_width == V{}) half_width = 1;
    }

    // root entries all have shifted sum 0; report the lexicographically
    // smallest selection among them
    std::optional<std::vector<std::uint8_t>> best;
    for (const auto& e : frontier[0]) {
        std::vector<std::uint8_t> x(n, 0);
        for (std::size_t list = 0; list < k; ++list) {
            const std::size_t lo = fence[list];
            const std::size_t gs = fence[list + 1] - fence[list];
            const std::uint32_t s = e.samples[list];
            for (std::size_t j = 0; j < gs; ++j)
                x[lo + j] = masks[list][s * gs + j];
        }
        if (!best || x < *best) best = std::move(x);
    }
    return best;
}

constexpr int kListMergeRestarts = 32;

template <class V>
std::vector<std::uint8_t> solve_typed(const SubsetSumInstance& inst,
                                      SolveStrategy strategy,
                                      std::uint64_t seed) {
    const ModOps<V> ops{modulus_value<V>(inst.modulus())};
    const std::vector<V> w = instance_weights<V>(inst);
    const V target = field_value<V>(inst.target());

    switch (strategy) {
        case SolveStrategy::Exhaustive: {
            if (inst.n() > 24)
                throw std::invalid_argument("exhaustive strategy is limited to n <= 24");
            if (auto x = exhaustive_core(ops, w, target)) return *x;
            throw UnsolvableInstance("unsolvable instance");
        }
        case SolveStrategy::MeetInMiddle: {
            if (inst.n() > 48)
                throw std::invalid_argument(
                    "meet-in-the-middle strategy is limited to n <= 48");
            if (auto x = mitm_core(ops, w, target)) return *x;
            throw UnsolvableInstance("unsolvable instance");
        }
        case SolveStrategy::ListMerge: {
            const auto plan = plan_list_merge(inst.n(), inst.modulus().bit_length());
            if (!plan)
                throw SolverGaveUp(
                    "solver gave up: instance too sparse for the list-merge regime");
            Rng rng(seed);
            for (int attempt = 0; attempt < kListMergeRestarts; ++attempt) {
                if (auto x = list_merge_attempt(ops, w, target, *plan, rng))
                    return *x;
            }
            throw SolverGaveUp("solver gave up after " +
                               std::to_string(kListMergeRestarts) +
                               " list-merge restarts");
        }
        case SolveStrategy::Auto:
            break;
    }
    // Auto: complete scans while affordable, list merge for the dense bulk
    if (inst.n() <= 24) return solve_typed<V>(inst, SolveStrategy::Exhaustive, seed);
    if (inst.n() <= 48) return solve_typed<V>(inst, SolveStrategy::MeetInMiddle, seed);
    return solve_typed<V>(inst, SolveStrategy::ListMerge, seed);
}

std::string strategy_name(SolveStrategy s) {
    switch (s) {
        case SolveStrategy::Exhaustive: return "exhaustive";
        case SolveStrategy::MeetInMiddle: return "meet-in-middle";
        case SolveStrategy::ListMerge: return "list-merge";
        case SolveStrategy::Auto: return "auto";
    }
    return "?";
}

}  // namespace

ExponentSplit recover_exponents(const FieldElement& r, std::size_t length,
                                RecoverInfo* info) {
    const PrimeModulus& p = r.modulus();
    const OpCounters before = op_counters();

    // table of 2^i mod p for i = 0..length, sorted by value
    std::vector<FieldElement> powers;
    powers.reserve(length + 1);
    powers.emplace_back(1, p);
    const FieldElement two(2, p);
    for (std::size_t i = 1; i <= length; ++i)
        powers.push_back(powers.back() * two);

    std::vector<std::uint32_t> order(length + 1);
    for (std::size_t i = 0; i <= length; ++i)
        order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  const int c = powers[a].cmp(powers[b]);
                  return c != 0 ? c < 0 : a < b;
              });

    // scan r, 3^{-1} r, 3^{-2} r, ... and accept table hits with i + b = L
    const FieldElement inv3 = mod_inv(FieldElement(3, p));
    FieldElement cur = r;
    std::optional<ExponentSplit> found;
    std::size_t multiplicity = 0;
    for (std::size_t b = 0; b <= length; ++b) {
        auto it = std::lower_bound(order.begin(), order.end(), cur,
                                   [&](std::uint32_t idx, const FieldElement& v) {
                                       return powers[idx].cmp(v) < 0;
                                   });
        for (; it != order.end() && powers[*it].cmp(cur) == 0; ++it) {
            if (*it + b == length) {
                ++multiplicity;
                if (!found) found = ExponentSplit{*it, b};
            }
        }
        if (b < length) cur = cur * inv3;
    }

    if (info) {
        const OpCounters after = op_counters();
        info->multiplicity = multiplicity;
        info->mul_ops = after.mul - before.mul;
        info->cmp_ops = after.cmp - before.cmp;
    }
    if (!found)
        throw NotAnImage("value is not an H-image of any length-" +
                         std::to_string(length) + " string");
    return *found;
}

BitString canonical_word(const ExponentSplit& split) {
    BitString out;
    const std::size_t n = split.block_count();
    for (std::size_t j = 0; j < n; ++j) {
        out.push_back(0);
        out.push_back(1);
    }
    const int surplus_letter = split.zeros > split.ones ? 0 : 1;
    for (std::size_t i = n; i < std::max(split.zeros, split.ones); ++i)
        out.push_back(surplus_letter);
    return out;
}

SubsetSumInstance::SubsetSumInstance(std::size_t n, FieldElement target)
    : target_(std::move(target)) {
    weights_.reserve(n);
    if (n > 0) {
        const PrimeModulus& p = target_.modulus();
        weights_.emplace_back(1, p);
        const FieldElement six(6, p);
        for (std::size_t j = 1; j < n; ++j)
            weights_.push_back(weights_.back() * six);
    }
}

SubsetSumSolution::SubsetSumSolution(const SubsetSumInstance& inst,
                                     std::vector<std::uint8_t> x)
    : x_(std::move(x)) {
    if (x_.size() != inst.n())
        throw std::invalid_argument("solution length does not match instance");
    FieldElement sum(0, inst.modulus());
    for (std::size_t j = 0; j < x_.size(); ++j)
        if (x_[j]) sum = sum + inst.weights()[j];
    if (sum != inst.target())
        throw std::logic_error("subset-sum solution failed verification");
}

std::size_t SubsetSumSolution::weight() const {
    std::size_t w = 0;
    for (auto b : x_) w += b;
    return w;
}

SubsetSumSolution solve_subset_sum(const SubsetSumInstance& inst,
                                   SolveStrategy strategy, std::uint64_t seed) {
    // word-sized residues with headroom for one add
    const bool fits_word = inst.modulus().bit_length() <= 62;
    std::vector<std::uint8_t> x =
        fits_word ? solve_typed<std::uint64_t>(inst, strategy, seed)
                  : solve_typed<mpz_class>(inst, strategy, seed);
    return SubsetSumSolution(inst, std::move(x));
}

SubsetSumInstance swap_target(const AffineMap& y, const ExponentSplit& split) {
    const PrimeModulus& p = y.modulus();
    const FieldElement expected =
        mod_pow(FieldElement(2, p), mpz_class(static_cast<unsigned long>(split.zeros))) *
        mod_pow(FieldElement(3, p), mpz_class(static_cast<unsigned long>(split.ones)));
    if (expected != y.r())
        throw std::invalid_argument("exponent split does not match target");
    const FieldElement u = product_map(canonical_word(split), p).s();
    return SubsetSumInstance(split.block_count(), y.s() - u);
}

BitString assemble_second_preimage(const ExponentSplit& split,
                                   const SubsetSumSolution& x) {
    if (x.bits().size() != split.block_count())
        throw std::invalid_argument("solution length does not match split");
    BitString out;
    for (auto swapped : x.bits()) {
        out.push_back(swapped ? 1 : 0);
        out.push_back(swapped ? 0 : 1);
    }
    const int surplus_letter = split.zeros > split.ones ? 0 : 1;
    for (std::size_t i = split.block_count();
         i < std::max(split.zeros, split.ones); ++i)
        out.push_back(surplus_letter);
    return out;
}

BitString second_preimage(const HashOutput& target, std::size_t length,
                          std::uint64_t seed, SolveStrategy strategy,
                          Transcript* transcript) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&](Clock::time_point since) {
        return std::chrono::duration<double>(Clock::now() - since).count();
    };

    const AffineMap y = from_output(target);
    if (transcript)
        transcript->add("from-output: target=" + target.to_text() + " map=" +
                        y.to_text());

    auto t1 = Clock::now();
    RecoverInfo info;
    const ExponentSplit split = recover_exponents(y.r(), length, &info);
    if (transcript) {
        transcript->add("recover-exponents: L=" + std::to_string(length) +
                        " zeros=" + std::to_string(split.zeros) +
                        " ones=" + std::to_string(split.ones) +
                        " multiplicity=" + std::to_string(info.multiplicity));
        transcript->add_timing("recover-exponents", elapsed(t1));
    }

    t1 = Clock::now();
    const SubsetSumInstance inst = swap_target(y, split);
    if (transcript)
        transcript->add("swap-target: n=" + std::to_string(inst.n()) +
                        " target=" + inst.target().to_text());

    const SubsetSumSolution sol = solve_subset_sum(inst, strategy, seed);
    if (transcript) {
        transcript->add("solve-subset-sum: strategy=" + strategy_name(strategy) +
                        " seed=" + std::to_string(seed) +
                        " swaps=" + std::to_string(sol.weight()));
        transcript->add_timing("solve-subset-sum", elapsed(t1));
    }

    const BitString preimage = assemble_second_preimage(split, sol);
    if (hash_H(preimage, y.modulus()) != target)
        throw std::logic_error(
            "internal error: assembled preimage failed re-hash verification");
    if (transcript) {
        transcript->add("assemble: length=" + std::to_string(preimage.size()) +
                        " verified=yes");
        transcript->add_timing("total", elapsed(t0));
    }
    return preimage;
}

}  // namespace caylab
