#pragma once

#include <string>

#include "caylab/bitstring.hpp"
#include "caylab/fieldcore.hpp"

namespace caylab {

// The invertible affine map x -> r*x + s over F_p, identified with the
// matrix [[r, s], [0, 1]]. Composition is the matrix product, so
// (a*b)(x) = a(b(x)). Requires r != 0.
class AffineMap {
public:
    AffineMap(FieldElement r, FieldElement s);
    static AffineMap identity(const PrimeModulus& p);

    const FieldElement& r() const { return r_; }
    const FieldElement& s() const { return s_; }
    const PrimeModulus& modulus() const { return r_.modulus(); }

    // r*x + s
    FieldElement apply(const FieldElement& x) const;

    bool operator==(const AffineMap& o) const { return r_ == o.r_ && s_ == o.s_; }
    bool operator!=(const AffineMap& o) const { return !(*this == o); }

    std::string to_text() const;  // "r,s" decimal

private:
    FieldElement r_;
    FieldElement s_;
};

// The published digest form (r+s, s).
struct HashOutput {
    FieldElement first;   // r + s
    FieldElement second;  // s

    bool operator==(const HashOutput& o) const {
        return first == o.first && second == o.second;
    }
    bool operator!=(const HashOutput& o) const { return !(*this == o); }

    std::string to_text() const;  // "first,second" decimal
};

// f0 = 2x+1, f1 = 3x+1.
AffineMap generator(int bit, const PrimeModulus& p);

// Matrix product left*right = (rL*rR, rL*sR + sL). Not commutative.
AffineMap compose(const AffineMap& left, const AffineMap& right);

// (r^{-1}, -r^{-1} s); two-sided inverse under compose.
AffineMap inverse(const AffineMap& a);

HashOutput to_output(const AffineMap& a);

// (first - second, second); rejects outputs whose linear part would be zero.
AffineMap from_output(const HashOutput& o);

// Fixed-width big-endian r || s, ceil(log2 p) bits per component.
BitString encode_bits(const AffineMap& a);
AffineMap decode_bits(const BitString& b, const PrimeModulus& p);

}  // namespace caylab
