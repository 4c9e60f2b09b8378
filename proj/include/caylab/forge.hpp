#pragma once

#include <cstdint>
#include <optional>

#include "caylab/attack.hpp"
#include "caylab/bitstring.hpp"
#include "caylab/hashes.hpp"
#include "caylab/transcript.hpp"

namespace caylab {

// A verified colliding pair for hatH (and, once lifted, hatH2). Every
// equality the struct claims was established by direct re-evaluation.
struct ForgeResult {
    BitString m_star;
    BitString m_star_prime;
    BitString b_prime;                 // the inserted preimage of g^{-1}
    AffineMap digest;                  // common hatH value
    std::optional<AffineMap> digest2;  // common hatH2 value, after the lift
    Transcript transcript;

    std::string to_text() const;
};

// A word b' with product_map(b') = g^{-1} and |b'| <= t-1, found by running
// the exponent-recovery pipeline against g^{-1} for each candidate length
// and falling back to plain enumeration (at most budget candidates). The
// strict length bound is what keeps trigger positions out of the inserted
// copies. Throws NoInsertablePreimage when nothing fits.
BitString find_g_inverse_preimage(const AffineMap& g, std::size_t t,
                                  std::size_t budget);

// Interleave b' into m so that every position divisible by t is the last
// bit of an m-chunk and is immediately followed by a full copy of b':
// u1 || b' || u2 || b' || ... with |u1| = t and |uk| = t - |b'| after that.
// A trailing chunk shorter than required gets no copy. Requires
// 1 <= |b'| <= t-1.
BitString aligned_insert(const BitString& m, const BitString& b_prime,
                         std::size_t t);

// Given an H-collision (equal product maps, equal lengths, distinct words),
// insert a preimage of g^{-1} on the aligned schedule so every g telescopes
// away, and verify hatH equality of the padded pair by direct evaluation.
ForgeResult forge_hatH_collision(const BitString& m, const BitString& m_prime,
                                 const HashParams& params, std::size_t budget);

// Evaluate hatH2 on both halves of an equal-length hatH collision and
// record the common value. Inequality would contradict the equal-length
// lifting property and is reported as an internal error.
ForgeResult lift_to_hatH2(ForgeResult result, const HashParams& params);

// Sample a balanced message of the given length, run the second-preimage
// attack on its hash, and forge + lift the resulting pair. Retries with a
// fresh message when the solver gives up.
ForgeResult end_to_end_break(const HashParams& params, std::size_t length,
                             std::uint64_t seed,
                             SolveStrategy strategy = SolveStrategy::Auto,
                             std::size_t preimage_budget = std::size_t{1} << 20,
                             int retries = 8);

}  // namespace caylab
