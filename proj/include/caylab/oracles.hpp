#pragma once

#include <optional>

#include "caylab/affine_group.hpp"
#include "caylab/bitstring.hpp"
#include "caylab/hashes.hpp"

namespace caylab {

// Deliberately naive reference implementations. They back the test suite and
// the CLI selftest; nothing on the attack path calls them. Their value is
// that they are obviously correct, not that they are fast.

struct SearchBudget {
    std::size_t max_length = 20;
    std::size_t max_candidates = std::size_t{1} << 20;
    double time_limit_seconds = 60.0;
};

// Evaluates the composed map by per-bit function application at x = 0 and
// x = 1 — no matrix arithmetic anywhere. Must agree with hash_H everywhere.
HashOutput naive_hash(const BitString& m, const PrimeModulus& p);

enum class WhichHash { H, HatH };

struct CollisionPair {
    BitString a;
    BitString b;
};

// Enumerates words in (length, lexicographic) order and reports the first
// value seen twice. balanced_only restricts candidates to words with equally
// many zeros and ones. nullopt when the budget runs out first.
std::optional<CollisionPair> exhaustive_collision(const PrimeModulus& p,
                                                  const HashParams& params,
                                                  WhichHash which,
                                                  const SearchBudget& budget,
                                                  bool balanced_only = false);

// Shortest, lexicographically-first word whose product map equals target;
// nullopt when the budget runs out.
std::optional<BitString> exhaustive_preimage(const AffineMap& target,
                                             const PrimeModulus& p,
                                             const SearchBudget& budget);

}  // namespace caylab
