#pragma once

#include <cstdint>
#include <vector>

#include "caylab/affine_group.hpp"
#include "caylab/bitstring.hpp"
#include "caylab/fieldcore.hpp"
#include "caylab/transcript.hpp"

namespace caylab {

// Zero/one counts of a message, recovered from the linear part of its hash:
// r = 2^zeros * 3^ones mod p with zeros + ones = length.
struct ExponentSplit {
    std::size_t zeros = 0;  // a
    std::size_t ones = 0;   // b

    std::size_t length() const { return zeros + ones; }
    std::size_t block_count() const { return zeros < ones ? zeros : ones; }
};

struct RecoverInfo {
    std::size_t multiplicity = 0;  // number of (a, b) pairs matching r
    std::uint64_t mul_ops = 0;
    std::uint64_t cmp_ops = 0;

    std::uint64_t total_ops() const { return mul_ops + cmp_ops; }
};

// Finds (a, b) with a + b = length and 2^a 3^b = r by precomputing the
// powers of two up to length, sorting them, and scanning r, 3^{-1} r,
// 3^{-2} r, ... against the sorted table. O(length log length) operations.
// When several pairs match (possible for small p) the one with the smallest
// b wins and the multiplicity is reported through info. Throws NotAnImage
// when no pair exists.
ExponentSplit recover_exponents(const FieldElement& r, std::size_t length,
                                RecoverInfo* info = nullptr);

// (01)^n followed by the surplus letter |a-b| times, n = min(a, b). Its
// product map has linear part 2^a 3^b.
BitString canonical_word(const ExponentSplit& split);

// Select swaps of leading "01" blocks: weights 6^j mod p, j = 0..n-1, and a
// target to hit modulo p.
class SubsetSumInstance {
public:
    SubsetSumInstance(std::size_t n, FieldElement target);

    std::size_t n() const { return weights_.size(); }
    const FieldElement& target() const { return target_; }
    const PrimeModulus& modulus() const { return target_.modulus(); }
    const std::vector<FieldElement>& weights() const { return weights_; }

private:
    std::vector<FieldElement> weights_;
    FieldElement target_;
};

// A 0/1 selection x with sum_j x_j 6^j = target (mod p). Construction
// re-computes the sum and refuses to exist otherwise.
class SubsetSumSolution {
public:
    SubsetSumSolution(const SubsetSumInstance& inst, std::vector<std::uint8_t> x);

    const std::vector<std::uint8_t>& bits() const { return x_; }
    std::size_t weight() const;

private:
    std::vector<std::uint8_t> x_;
};

enum class SolveStrategy {
    Exhaustive,    // complete 2^n scan, n <= 24; proves unsolvability
    MeetInMiddle,  // complete sorted-halves join, n <= 48; also complete
    ListMerge,     // seeded multi-level list merge for dense instances
    Auto,          // picks by n
};

// Throws UnsolvableInstance when a complete strategy proves there is no
// solution, SolverGaveUp when the heuristic one exhausts its retries.
SubsetSumSolution solve_subset_sum(const SubsetSumInstance& inst,
                                   SolveStrategy strategy, std::uint64_t seed);

// Builds the instance for transforming the canonical word into y: n =
// min(a, b) and target = y.s - u where u is the constant term of the
// canonical word's product map. Requires y.r = 2^a 3^b.
SubsetSumInstance swap_target(const AffineMap& y, const ExponentSplit& split);

// Block j becomes "10" where x_j = 1, "01" otherwise; canonical tail
// appended. Letter counts — and hence the linear part — are preserved.
BitString assemble_second_preimage(const ExponentSplit& split,
                                   const SubsetSumSolution& x);

// Full pipeline: decode the target, recover the exponents, reduce swap
// selection to a subset sum, solve it, assemble, and re-hash to verify.
// Only the hash value and a length bound are needed, never the original
// message.
BitString second_preimage(const HashOutput& target, std::size_t length,
                          std::uint64_t seed,
                          SolveStrategy strategy = SolveStrategy::Auto,
                          Transcript* transcript = nullptr);

}  // namespace caylab
