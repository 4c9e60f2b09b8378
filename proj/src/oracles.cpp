#include "caylab/oracles.hpp"

#include <chrono>
#include <map>
#include <string>
#include <utility>

namespace caylab {

namespace {

using Clock = std::chrono::steady_clock;

// Depth-first enumeration of all words in (length, lexicographic) order,
// carrying the partial product down the tree. visit returns true to stop.
// Iterative deepening recomputes interior nodes per length; that doubles the
// work and keeps the order exact.
template <class Visit>
bool enumerate_words(const PrimeModulus& p, const HashParams* hat_params,
                     const SearchBudget& budget, bool balanced_only,
                     Visit&& visit) {
    const AffineMap f0 = generator(0, p);
    const AffineMap f1 = generator(1, p);
    const Clock::time_point deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(budget.time_limit_seconds));
    std::size_t candidates = 0;
    std::string word;

    auto dfs = [&](auto&& self, std::size_t target_len, std::size_t depth,
                   const AffineMap& acc, std::size_t ones) -> int {
        if (depth == target_len) {
            if (++candidates > budget.max_candidates) return -1;
            if ((candidates & 0xfff) == 0 && Clock::now() > deadline) return -1;
            if (balanced_only && 2 * ones != target_len) return 0;
            return visit(word, acc) ? 1 : 0;
        }
        for (int b = 0; b <= 1; ++b) {
            AffineMap next = compose(acc, b ? f1 : f0);
            if (hat_params && (depth + 1) % hat_params->t() == 0)
                next = compose(next, hat_params->g());
            word.push_back(char('0' + b));
            const int rc = self(self, target_len, depth + 1, next, ones + static_cast<std::size_t>(b));
            word.pop_back();
            if (rc != 0) return rc;
        }
        return 0;
    };

    for (std::size_t len = 0; len <= budget.max_length; ++len) {
        const int rc = dfs(dfs, len, 0, AffineMap::identity(p), 0);
        if (rc == 1) return true;     // visitor stopped us: found
        if (rc == -1) return false;   // budget exhausted
    }
    return false;
}

}  // namespace

HashOutput naive_hash(const BitString& m, const PrimeModulus& p) {
    auto eval = [&](unsigned long start) {
        mpz_class x = start;
        for (std::size_t i = m.size(); i-- > 0;)
            x = ((m[i] ? 3 * x : 2 * x) + 1) % p.value();
        return x;
    };
    return HashOutput{FieldElement(eval(1), p), FieldElement(eval(0), p)};
}

std::optional<CollisionPair> exhaustive_collision(const PrimeModulus& p,
                                                  const HashParams& params,
                                                  WhichHash which,
                                                  const SearchBudget& budget,
                                                  bool balanced_only) {
    std::map<std::pair<mpz_class, mpz_class>, std::string> seen;
    std::optional<CollisionPair> found;
    enumerate_words(
        p, which == WhichHash::HatH ? &params : nullptr, budget, balanced_only,
        [&](const std::string& word, const AffineMap& value) {
            auto key = std::make_pair(value.r().value(), value.s().value());
            auto [it, inserted] = seen.emplace(std::move(key), word);
            if (inserted) return false;
            found = CollisionPair{BitString::from_ascii(it->second),
                                  BitString::from_ascii(word)};
            return true;
        });
    return found;
}

std::optional<BitString> exhaustive_preimage(const AffineMap& target,
                                             const PrimeModulus& p,
                                             const SearchBudget& budget) {
    std::optional<BitString> found;
    enumerate_words(p, nullptr, budget, false,
                    [&](const std::string& word, const AffineMap& value) {
                        if (value != target) return false;
                        found = BitString::from_ascii(word);
                        return true;
                    });
    return found;
}

}  // namespace caylab
