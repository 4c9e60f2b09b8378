#include "caylab/hashes.hpp"

#include <stdexcept>

#include "caylab/rng.hpp"
#include "doctest.h"
#include "test_constants.hpp"

using namespace caylab;

namespace {

BitString bs(const char* s) { return BitString::from_ascii(s); }

AffineMap map_of(long r, long s, const PrimeModulus& p) {
    return AffineMap(FieldElement(r, p), FieldElement(s, p));
}

// Trace oracle for hatH: evaluates the product as a function by walking the
// bits right to left and applying each factor (including the g triggers) to
// a point. No compose() anywhere.
FieldElement hatH_trace_eval(const BitString& m, const HashParams& prm,
                             const FieldElement& point) {
    FieldElement x = point;
    for (std::size_t i = m.size(); i-- > 0;) {
        if ((i + 1) % prm.t() == 0) x = prm.g().apply(x);
        x = generator(m[i], prm.modulus()).apply(x);
    }
    return x;
}

AffineMap hatH_trace(const BitString& m, const HashParams& prm) {
    const PrimeModulus& p = prm.modulus();
    const FieldElement s = hatH_trace_eval(m, prm, FieldElement(0, p));
    const FieldElement rps = hatH_trace_eval(m, prm, FieldElement(1, p));
    return AffineMap(rps - s, s);
}

HashParams params101(std::size_t t, const AffineMap& g) {
    return HashParams(g.modulus(), t, g, default_c_rnd(g.modulus()));
}

}  // namespace

TEST_CASE("product_map worked examples") {
    PrimeModulus p(101ul);
    CHECK(product_map(bs(""), p) == AffineMap::identity(p));
    CHECK(product_map(bs("01"), p) == map_of(6, 3, p));
    CHECK(product_map(bs("0110"), p) == map_of(36, 27, p));
}

TEST_CASE("hash_H worked examples") {
    PrimeModulus p(101ul);
    CHECK(hash_H(bs(""), p).to_text() == "1,0");
    CHECK(hash_H(bs("01"), p).to_text() == "9,3");
    CHECK(hash_H(bs("10"), p).to_text() == "10,4");
}

TEST_CASE("concatenation homomorphism") {
    PrimeModulus p(1009ul);
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        BitString x = random_bits(rng.below(60), rng);
        BitString y = random_bits(rng.below(60), rng);
        CHECK(product_map(x + y, p) == compose(product_map(x, p), product_map(y, p)));
    }
}

TEST_CASE("exponent law: r = 2^zeros 3^ones") {
    PrimeModulus p(101ul);
    Rng rng(29);
    for (int i = 0; i < 100; ++i) {
        BitString m = random_bits(rng.below(100), rng);
        FieldElement expected =
            mod_pow(FieldElement(2, p), mpz_class(static_cast<unsigned long>(m.count_zeros()))) *
            mod_pow(FieldElement(3, p), mpz_class(static_cast<unsigned long>(m.count_ones())));
        CHECK(product_map(m, p).r() == expected);
    }
}

TEST_CASE("segmented evaluation matches sequential") {
    PrimeModulus p{mpz_class(kPrime60)};
    Rng rng(8);
    BitString m = random_bits(5000, rng);
    const AffineMap seq = product_map(m, p);
    for (unsigned threads : {1u, 2u, 3u, 7u})
        CHECK(product_map_parallel(m, p, threads) == seq);
    CHECK(product_map_parallel(bs(""), p, 4) == AffineMap::identity(p));
}

TEST_CASE("hash_H2 definition and frozen value") {
    PrimeModulus p(101ul);
    const AffineMap g = map_of(6, 3, p);

    SUBCASE("all-zero c_rnd reduces to hashing m || encode(product_map(m))") {
        HashParams prm(p, 2, g, BitString::zeros(14));
        CHECK(hash_H2(bs("01"), prm) ==
              hash_H(bs("01") + encode_bits(map_of(6, 3, p)), p));
    }
    SUBCASE("empty message hashes the masked encoded identity") {
        HashParams prm(p, 2, g, bs("10101010101010"));
        const BitString d = encode_bits(AffineMap::identity(p)) ^ prm.c_rnd();
        CHECK(hash_H2(bs(""), prm) == hash_H(d, p));
    }
    SUBCASE("frozen value, alternating c_rnd") {
        HashParams prm(p, 2, g, bs("10101010101010"));
        CHECK(hash_H2(bs("0110"), prm).to_text() == "14,98");
    }
}

TEST_CASE("hash_hatH worked examples") {
    PrimeModulus p(101ul);
    HashParams prm = params101(2, map_of(6, 3, p));
    CHECK(hash_hatH(bs("10"), prm) == map_of(36, 22, p));
    CHECK(hash_hatH(bs(""), prm) == AffineMap::identity(p));
    CHECK(hash_hatH(bs("0"), prm) == generator(0, p));
}

TEST_CASE("hash_hatH agrees with the trace oracle") {
    PrimeModulus p(101ul);
    Rng rng(55);
    for (int i = 0; i < 80; ++i) {
        AffineMap g(FieldElement(4 + static_cast<long>(rng.below(90)), p),
                    FieldElement(static_cast<long>(rng.below(101)), p));
        HashParams prm = params101(2 + rng.below(9), g);
        BitString m = random_bits(rng.below(64), rng);
        CHECK(hash_hatH(m, prm) == hatH_trace(m, prm));
    }
}

TEST_CASE("hatH with t beyond the length is the plain product") {
    PrimeModulus p(101ul);
    HashParams prm = params101(40, map_of(6, 3, p));
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        BitString m = random_bits(rng.below(40), rng);  // < t, no trigger fires
        CHECK(hash_hatH(m, prm) == product_map(m, p));
    }
}

TEST_CASE("hatH positional law under splits") {
    PrimeModulus p(101ul);
    HashParams prm = params101(3, map_of(7, 9, p));
    Rng rng(61);
    for (int i = 0; i < 60; ++i) {
        BitString m = random_bits(rng.below(50), rng);
        BitString x = random_bits(rng.below(50), rng);
        CHECK(hash_hatH(m + x, prm) ==
              compose(hash_hatH(m, prm), hash_hatH(x, prm, m.size())));
    }
}

TEST_CASE("hash_hatH2 matches its expansion and the trace oracle") {
    PrimeModulus p(101ul);
    HashParams prm = params101(2, map_of(6, 3, p));

    SUBCASE("worked example, zero c_rnd") {
        HashParams zero(p, 2, map_of(6, 3, p), BitString::zeros(14));
        const AffineMap inner = hash_hatH(bs("10"), zero);
        CHECK(inner == map_of(36, 22, p));
        CHECK(hash_hatH2(bs("10"), zero) ==
              hash_hatH(bs("10") + encode_bits(inner), zero));
    }
    SUBCASE("empty message") {
        HashParams zero(p, 2, map_of(6, 3, p), BitString::zeros(14));
        CHECK(hash_hatH2(bs(""), zero) ==
              hash_hatH(encode_bits(AffineMap::identity(p)), zero));
    }
    SUBCASE("trace equivalence on random inputs") {
        Rng rng(77);
        for (int i = 0; i < 40; ++i) {
            BitString m = random_bits(rng.below(40), rng);
            const BitString d = encode_bits(hatH_trace(m, prm)) ^ prm.c_rnd();
            CHECK(hash_hatH2(m, prm) == hatH_trace(m + d, prm));
        }
    }
    SUBCASE("determinism") {
        BitString m = bs("1001101");
        CHECK(hash_hatH2(m, prm) == hash_hatH2(m, prm));
    }
}

TEST_CASE("default c_rnd is the sqrt(2) fraction") {
    // 32-bit prime -> 64 bits, the classic constant
    PrimeModulus p(4294967291ul);
    CHECK(default_c_rnd(p).to_len_hex() == "64:6a09e667f3bcc908");
    PrimeModulus p101(101ul);
    CHECK(default_c_rnd(p101).to_ascii() == "01101010000010");
}

TEST_CASE("HashParams validation") {
    PrimeModulus p(101ul);
    const BitString c = default_c_rnd(p);
    CHECK_THROWS_AS(HashParams(p, 1, map_of(6, 3, p), c), std::invalid_argument);
    CHECK_THROWS_AS(HashParams(p, 2, AffineMap::identity(p), c), std::invalid_argument);
    CHECK_THROWS_AS(HashParams(p, 2, generator(0, p), c), std::invalid_argument);
    CHECK_THROWS_AS(HashParams(p, 2, generator(1, p), c), std::invalid_argument);
    CHECK_THROWS_AS(HashParams(p, 2, map_of(6, 3, p), bs("01")), std::invalid_argument);
    CHECK(HashParams::from_g_word(p, 2, bs("01"), c).g() == map_of(6, 3, p));
}

TEST_CASE("multiplication_count stays within 2n") {
    PrimeModulus p(1009ul);
    CHECK(multiplication_count(bs(""), p) == 0);
    Rng rng(13);
    for (std::size_t n : {std::size_t{100}, std::size_t{323}}) {
        BitString m = random_bits(n, rng);
        CHECK(multiplication_count(m, p) <= 2 * n);
    }
}
