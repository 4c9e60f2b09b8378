#include "caylab/hashes.hpp"

#include <future>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace caylab {

namespace {

AffineMap product_map_span(std::span<const std::uint8_t> bits,
                           const PrimeModulus& p) {
    const AffineMap f0 = generator(0, p);
    const AffineMap f1 = generator(1, p);
    AffineMap acc = AffineMap::identity(p);
    for (auto b : bits) acc = compose(acc, b ? f1 : f0);
    return acc;
}

}  // namespace

HashParams::HashParams(PrimeModulus p, std::size_t t, AffineMap g,
                       BitString c_rnd)
    : p_(std::move(p)), t_(t), g_(std::move(g)), c_rnd_(std::move(c_rnd)) {
    if (t_ < 2) throw std::invalid_argument("t must be an integer > 1");
    if (!g_.modulus().same_as(p_)) throw std::invalid_argument("modulus mismatch");
    if (g_ == AffineMap::identity(p_) || g_ == generator(0, p_) ||
        g_ == generator(1, p_))
        throw std::invalid_argument(
            "g must differ from the identity and from both generators");
    if (c_rnd_.size() != 2 * p_.bit_length())
        throw std::invalid_argument("c_rnd must have length 2*ceil(log2 p)");
}

HashParams HashParams::from_g_word(PrimeModulus p, std::size_t t,
                                   const BitString& g_word, BitString c_rnd) {
    AffineMap g = product_map(g_word, p);
    return HashParams(std::move(p), t, std::move(g), std::move(c_rnd));
}

BitString default_c_rnd(const PrimeModulus& p) {
    const std::size_t n = 2 * p.bit_length();
    // isqrt(2 * 4^n) = floor(sqrt(2) * 2^n): one leading integer bit, then
    // the first n fractional bits of sqrt(2)
    mpz_class scaled = mpz_class(2) << (2 * n);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    BitString out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(mpz_tstbit(root.get_mpz_t(), static_cast<mp_bitcnt_t>(n - 1 - i)));
    return out;
}

AffineMap product_map(const BitString& m, const PrimeModulus& p) {
    return product_map_span(m.span(), p);
}

AffineMap product_map_parallel(const BitString& m, const PrimeModulus& p,
                               unsigned num_threads) {
    if (num_threads <= 1 || m.size() < 2 * num_threads)
        return product_map(m, p);
    const auto bits = m.span();
    const std::size_t chunk = (bits.size() + num_threads - 1) / num_threads;
    std::vector<std::future<AffineMap>> parts;
    for (std::size_t begin = 0; begin < bits.size(); begin += chunk) {
        const std::size_t len = std::min(chunk, bits.size() - begin);
        parts.push_back(std::async(std::launch::async, [=, &p] {
            return product_map_span(bits.subspan(begin, len), p);
        }));
    }
    AffineMap acc = AffineMap::identity(p);
    for (auto& f : parts) acc = compose(acc, f.get());
    return acc;
}

HashOutput hash_H(const BitString& m, const PrimeModulus& p) {
    return to_output(product_map(m, p));
}

HashOutput hash_H2(const BitString& m, const HashParams& params) {
    const BitString d =
        encode_bits(product_map(m, params.modulus())) ^ params.c_rnd();
    return hash_H(m + d, params.modulus());
}

AffineMap hash_hatH(const BitString& m, const HashParams& params,
                    std::size_t offset) {
    const PrimeModulus& p = params.modulus();
    const AffineMap f0 = generator(0, p);
    const AffineMap f1 = generator(1, p);
    AffineMap acc = AffineMap::identity(p);
    for (std::size_t i = 0; i < m.size(); ++i) {
        acc = compose(acc, m[i] ? f1 : f0);
        if ((offset + i + 1) % params.t() == 0) acc = compose(acc, params.g());
    }
    return acc;
}

AffineMap hash_hatH2(const BitString& m, const HashParams& params) {
    const BitString d = encode_bits(hash_hatH(m, params)) ^ params.c_rnd();
    return hash_hatH(m + d, params);
}

std::uint64_t multiplication_count(const BitString& m, const PrimeModulus& p) {
    reset_op_counters();
    (void)hash_H(m, p);
    return op_counters().mul;
}

}  // namespace caylab
