#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

#include "caylab/rng.hpp"

namespace caylab {

// Tally of field operations performed on the current thread. Reset before a
// measured section, read after. Comparisons are only recorded through
// FieldElement::cmp(), which the table-based attack code uses; operator== is
// free so that assertions do not distort the counts.
struct OpCounters {
    std::uint64_t mul = 0;
    std::uint64_t add = 0;  // additions and subtractions
    std::uint64_t cmp = 0;

    std::uint64_t total() const { return mul + add + cmp; }
};

OpCounters& op_counters();
void reset_op_counters();

// An odd prime p >= 5, validated once at construction (Miller-Rabin, 64
// rounds) and then trusted. Cheap to copy; all copies share one validated
// value.
class PrimeModulus {
public:
    explicit PrimeModulus(const mpz_class& p);
    explicit PrimeModulus(unsigned long p);
    // Decimal or 0x-prefixed hexadecimal text.
    explicit PrimeModulus(const std::string& text);

    const mpz_class& value() const { return impl_->p; }
    // ceil(log2 p); the per-component width of the bit encoding.
    std::size_t bit_length() const { return impl_->bits; }

    bool same_as(const PrimeModulus& other) const {
        return impl_ == other.impl_ || impl_->p == other.impl_->p;
    }

private:
    struct Impl {
        mpz_class p;
        std::size_t bits;
    };
    std::shared_ptr<const Impl> impl_;
};

// A residue in [0, p), always canonical. Immutable value type.
class FieldElement {
public:
    FieldElement(const mpz_class& v, PrimeModulus m);
    FieldElement(long v, PrimeModulus m);

    const mpz_class& value() const { return value_; }
    const PrimeModulus& modulus() const { return modulus_; }

    bool is_zero() const { return mpz_sgn(value_.get_mpz_t()) == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;

    bool operator==(const FieldElement& o) const {
        return value_ == o.value_ && modulus_.same_as(o.modulus_);
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Three-way value comparison, recorded in op_counters().cmp.
    int cmp(const FieldElement& o) const;

    std::string to_text() const { return value_.get_str(); }

private:
    struct reduced_tag {};
    FieldElement(reduced_tag, mpz_class v, PrimeModulus m)
        : value_(std::move(v)), modulus_(std::move(m)) {}

    void require_same_modulus(const FieldElement& o) const;

    mpz_class value_;
    PrimeModulus modulus_;
};

// base^exp mod p by square-and-multiply; exp = 0 yields 1. Delegated to GMP
// and not included in the operation tallies.
FieldElement mod_pow(const FieldElement& base, const mpz_class& exp);

// a^{-1} mod p. Zero input is an error.
FieldElement mod_inv(const FieldElement& a);

// True iff p and (p-1)/2 are both prime.
bool is_safe_prime(const mpz_class& p);

// Uniform element of [0, p).
FieldElement random_field_element(const PrimeModulus& p, Rng& rng);

}  // namespace caylab
