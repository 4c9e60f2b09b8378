#pragma once

#include <cstdint>

#include "caylab/affine_group.hpp"
#include "caylab/bitstring.hpp"
#include "caylab/fieldcore.hpp"

namespace caylab {

// Everything needed to evaluate H, H2, hatH and hatH2 over one prime field:
// the modulus, the insertion period t > 1, the extra group element g (must
// differ from the identity and from both generators), and the masking
// constant c_rnd of length 2*ceil(log2 p).
class HashParams {
public:
    HashParams(PrimeModulus p, std::size_t t, AffineMap g, BitString c_rnd);

    // g given as a word in the generators; this is the only construction
    // that guarantees g lies in the generated group. A raw (r, s) pair is
    // accepted by the main constructor as the caller's assertion.
    static HashParams from_g_word(PrimeModulus p, std::size_t t,
                                  const BitString& g_word, BitString c_rnd);

    const PrimeModulus& modulus() const { return p_; }
    std::size_t t() const { return t_; }
    const AffineMap& g() const { return g_; }
    const BitString& c_rnd() const { return c_rnd_; }

private:
    PrimeModulus p_;
    std::size_t t_;
    AffineMap g_;
    BitString c_rnd_;
};

// First 2*ceil(log2 p) bits of the fractional part of sqrt(2) — a fixed,
// nothing-up-my-sleeve default for c_rnd.
BitString default_c_rnd(const PrimeModulus& p);

// Left-to-right product of the generator maps selected by each bit; the
// empty string yields the identity. Uses 2 multiplications per bit.
AffineMap product_map(const BitString& m, const PrimeModulus& p);

// Same value computed by splitting the input into num_threads segments,
// hashing them concurrently and composing the partial maps in order.
AffineMap product_map_parallel(const BitString& m, const PrimeModulus& p,
                               unsigned num_threads);

// H(m) = (r+s, s) of the product map.
HashOutput hash_H(const BitString& m, const PrimeModulus& p);

// H2(m) = H(m || (encode(product_map(m)) xor c_rnd)).
HashOutput hash_H2(const BitString& m, const HashParams& params);

// hatH multiplies g after every t-th factor, positions counted 1-based.
// offset is the number of bits that precede m in the full input; it lets a
// suffix or segment be evaluated with the right trigger pattern.
AffineMap hash_hatH(const BitString& m, const HashParams& params,
                    std::size_t offset = 0);

// hatH2(m) = hatH(m || (encode(hatH(m)) xor c_rnd)), the suffix continuing
// the position count of m.
AffineMap hash_hatH2(const BitString& m, const HashParams& params);

// Field multiplications used by one hash_H evaluation of m. Resets the
// thread's operation counters as a side effect.
std::uint64_t multiplication_count(const BitString& m, const PrimeModulus& p);

}  // namespace caylab
