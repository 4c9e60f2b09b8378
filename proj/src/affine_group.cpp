#include "caylab/affine_group.hpp"

#include <stdexcept>
#include <utility>

namespace caylab {

AffineMap::AffineMap(FieldElement r, FieldElement s)
    : r_(std::move(r)), s_(std::move(s)) {
    if (!r_.modulus().same_as(s_.modulus()))
        throw std::invalid_argument("modulus mismatch");
    if (r_.is_zero())
        throw std::invalid_argument("affine map needs a nonzero linear coefficient");
}

AffineMap AffineMap::identity(const PrimeModulus& p) {
    return AffineMap(FieldElement(1, p), FieldElement(0, p));
}

FieldElement AffineMap::apply(const FieldElement& x) const {
    return r_ * x + s_;
}

std::string AffineMap::to_text() const {
    return r_.to_text() + "," + s_.to_text();
}

std::string HashOutput::to_text() const {
    return first.to_text() + "," + second.to_text();
}

AffineMap generator(int bit, const PrimeModulus& p) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    return AffineMap(FieldElement(bit == 0 ? 2 : 3, p), FieldElement(1, p));
}

AffineMap compose(const AffineMap& left, const AffineMap& right) {
    if (!left.modulus().same_as(right.modulus()))
        throw std::invalid_argument("modulus mismatch");
    return AffineMap(left.r() * right.r(), left.r() * right.s() + left.s());
}

AffineMap inverse(const AffineMap& a) {
    const FieldElement ri = mod_inv(a.r());
    return AffineMap(ri, -(ri * a.s()));
}

HashOutput to_output(const AffineMap& a) {
    return HashOutput{a.r() + a.s(), a.s()};
}

AffineMap from_output(const HashOutput& o) {
    if (o.first == o.second)
        throw std::domain_error("not a valid hash output");
    return AffineMap(o.first - o.second, o.second);
}

BitString encode_bits(const AffineMap& a) {
    const std::size_t w = a.modulus().bit_length();
    BitString out;
    for (const FieldElement* e : {&a.r(), &a.s()}) {
        const mpz_class& v = e->value();
        for (std::size_t i = 0; i < w; ++i)
            out.push_back(mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(w - 1 - i)));
    }
    return out;
}

AffineMap decode_bits(const BitString& b, const PrimeModulus& p) {
    const std::size_t w = p.bit_length();
    if (b.size() != 2 * w)
        throw std::invalid_argument("encoded affine map has wrong length");
    auto read = [&](std::size_t offset) {
        mpz_class v = 0;
        for (std::size_t i = 0; i < w; ++i) {
            v <<= 1;
            if (b[offset + i]) v |= 1;
        }
        if (v >= p.value())
            throw std::invalid_argument("encoded component out of range");
        return FieldElement(v, p);
    };
    FieldElement r = read(0);
    FieldElement s = read(w);
    if (r.is_zero())
        throw std::invalid_argument("encoded linear coefficient is zero");
    return AffineMap(std::move(r), std::move(s));
}

}  // namespace caylab
