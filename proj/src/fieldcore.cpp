#include "caylab/fieldcore.hpp"

#include <stdexcept>
#include <utility>

namespace caylab {

namespace {

thread_local OpCounters tl_counters;

constexpr int kPrimalityRounds = 64;

bool probably_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRounds) != 0;
}

mpz_class validated_prime(const mpz_class& p) {
    if (p <= 3) throw std::invalid_argument("modulus must be an odd prime > 3");
    if (mpz_even_p(p.get_mpz_t())) throw std::invalid_argument("modulus must be odd");
    if (!probably_prime(p)) throw std::invalid_argument("modulus is not prime");
    return p;
}

}  // namespace

OpCounters& op_counters() { return tl_counters; }

void reset_op_counters() { tl_counters = OpCounters{}; }

PrimeModulus::PrimeModulus(const mpz_class& p)
    : impl_(std::make_shared<Impl>(Impl{validated_prime(p),
                                        mpz_sizeinbase(p.get_mpz_t(), 2)})) {}

PrimeModulus::PrimeModulus(unsigned long p) : PrimeModulus(mpz_class(p)) {}

PrimeModulus::PrimeModulus(const std::string& text)
    : PrimeModulus([&] {
          mpz_class p;
          // base 0: decimal by default, 0x prefix selects hexadecimal
          if (mpz_set_str(p.get_mpz_t(), text.c_str(), 0) != 0)
              throw std::invalid_argument("cannot parse modulus: " + text);
          return p;
      }()) {}

FieldElement::FieldElement(const mpz_class& v, PrimeModulus m)
    : value_(v), modulus_(std::move(m)) {
    mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), modulus_.value().get_mpz_t());
}

FieldElement::FieldElement(long v, PrimeModulus m)
    : FieldElement(mpz_class(v), std::move(m)) {}

void FieldElement::require_same_modulus(const FieldElement& o) const {
    if (!modulus_.same_as(o.modulus_))
        throw std::invalid_argument("modulus mismatch");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_modulus(o);
    ++tl_counters.add;
    mpz_class r = value_ + o.value_;
    if (r >= modulus_.value()) r -= modulus_.value();
    return FieldElement(reduced_tag{}, std::move(r), modulus_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_modulus(o);
    ++tl_counters.add;
    mpz_class r = value_ - o.value_;
    if (mpz_sgn(r.get_mpz_t()) < 0) r += modulus_.value();
    return FieldElement(reduced_tag{}, std::move(r), modulus_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_modulus(o);
    ++tl_counters.mul;
    mpz_class r;
    mpz_mul(r.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus_.value().get_mpz_t());
    return FieldElement(reduced_tag{}, std::move(r), modulus_);
}

FieldElement FieldElement::operator-() const {
    if (is_zero()) return *this;
    ++tl_counters.add;
    return FieldElement(reduced_tag{}, modulus_.value() - value_, modulus_);
}

int FieldElement::cmp(const FieldElement& o) const {
    ++tl_counters.cmp;
    return mpz_cmp(value_.get_mpz_t(), o.value_.get_mpz_t());
}

FieldElement mod_pow(const FieldElement& base, const mpz_class& exp) {
    if (mpz_sgn(exp.get_mpz_t()) < 0)
        throw std::invalid_argument("mod_pow requires a non-negative exponent");
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.value().get_mpz_t(), exp.get_mpz_t(),
             base.modulus().value().get_mpz_t());
    return FieldElement(r, base.modulus());
}

FieldElement mod_inv(const FieldElement& a) {
    if (a.is_zero()) throw std::domain_error("not invertible");
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(),
               a.modulus().value().get_mpz_t());
    return FieldElement(r, a.modulus());
}

bool is_safe_prime(const mpz_class& p) {
    if (p < 5) return false;
    if (!probably_prime(p)) return false;
    mpz_class q = (p - 1) / 2;
    return probably_prime(q);
}

FieldElement random_field_element(const PrimeModulus& p, Rng& rng) {
    const std::size_t bits = p.bit_length();
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = bits % 64 == 0 ? 64 : bits % 64;
    for (;;) {
        mpz_class v = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t w = rng.next();
            if (i == 0 && top_bits < 64) w >>= (64 - top_bits);
            mpz_class limb;
            mpz_import(limb.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
            v <<= 64;
            v += limb;
        }
        // masking put v below 2^bits already; reject the sliver above p
        if (v < p.value()) return FieldElement(v, p);
    }
}

}  // namespace caylab
