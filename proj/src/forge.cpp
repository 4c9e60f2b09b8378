#include "caylab/forge.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "caylab/errors.hpp"
#include "caylab/oracles.hpp"
#include "caylab/rng.hpp"

namespace caylab {

namespace {

std::string describe(const BitString& b) {
    return b.size() <= 64 ? b.to_ascii() : b.to_len_hex();
}

}  // namespace

std::string ForgeResult::to_text() const {
    std::string out = transcript.to_text();
    out += "m-star: " + m_star.to_len_hex() + "\n";
    out += "m-star-prime: " + m_star_prime.to_len_hex() + "\n";
    out += "b-prime: " + describe(b_prime) + "\n";
    out += "hatH: " + digest.to_text() + "\n";
    if (digest2) out += "hatH2: " + digest2->to_text() + "\n";
    return out;
}

BitString find_g_inverse_preimage(const AffineMap& g, std::size_t t,
                                  std::size_t budget) {
    if (t < 2) throw std::invalid_argument("t must be an integer > 1");
    const PrimeModulus& p = g.modulus();
    const AffineMap g_inv = inverse(g);

    // Exponent-recovery route first: cheap when g^{-1} happens to be a
    // swap-family element of some short length.
    for (std::size_t len = 1; len < t; ++len) {
        try {
            const ExponentSplit split = recover_exponents(g_inv.r(), len);
            const SubsetSumInstance inst = swap_target(g_inv, split);
            const SubsetSumSolution sol =
                solve_subset_sum(inst, SolveStrategy::Auto, 0);
            const BitString word = assemble_second_preimage(split, sol);
            if (product_map(word, p) == g_inv) return word;
        } catch (const NotAnImage&) {
        } catch (const UnsolvableInstance&) {
        } catch (const SolverGaveUp&) {
        }
    }

    // Plain enumeration over every word shorter than t, budget permitting.
    SearchBudget search;
    search.max_length = t - 1;
    search.max_candidates = budget;
    if (auto word = exhaustive_preimage(g_inv, p, search)) return *word;

    throw NoInsertablePreimage(
        "no insertable preimage; choose larger t or different g");
}

BitString aligned_insert(const BitString& m, const BitString& b_prime,
                         std::size_t t) {
    if (b_prime.empty() || b_prime.size() >= t)
        throw std::invalid_argument("insertion needs 1 <= |b'| <= t-1");
    BitString out;
    std::size_t pos = 0;
    std::size_t chunk = t;  // t - |b'| after the first chunk
    while (pos < m.size()) {
        const std::size_t take = std::min(chunk, m.size() - pos);
        for (std::size_t i = 0; i < take; ++i) out.push_back(m[pos + i]);
        pos += take;
        if (take == chunk) out.append(b_prime);
        chunk = t - b_prime.size();
    }
    return out;
}

ForgeResult forge_hatH_collision(const BitString& m, const BitString& m_prime,
                                 const HashParams& params, std::size_t budget) {
    if (m == m_prime)
        throw std::invalid_argument("inputs must be distinct");
    if (m.size() != m_prime.size())
        throw std::invalid_argument("inputs must have equal length");
    const PrimeModulus& p = params.modulus();
    const AffineMap h = product_map(m, p);
    if (h != product_map(m_prime, p))
        throw std::invalid_argument("not an H-collision");

    const BitString b_prime =
        find_g_inverse_preimage(params.g(), params.t(), budget);
    const BitString m_star = aligned_insert(m, b_prime, params.t());
    const BitString m_star_prime = aligned_insert(m_prime, b_prime, params.t());

    // the telescoping identity, checked rather than assumed
    const AffineMap d1 = hash_hatH(m_star, params);
    const AffineMap d2 = hash_hatH(m_star_prime, params);
    if (d1 != h || d2 != h || m_star == m_star_prime)
        throw std::logic_error(
            "internal error: aligned insertion failed to telescope");

    ForgeResult result{m_star, m_star_prime, b_prime, d1, std::nullopt, {}};
    result.transcript.add("params: p=" + p.value().get_str() +
                          " t=" + std::to_string(params.t()) + " g=" +
                          params.g().to_text());
    result.transcript.add("b-prime: " + describe(b_prime) + " (preimage of g^-1)");
    result.transcript.add("insert: |m|=" + std::to_string(m.size()) +
                          " -> |m*|=" + std::to_string(m_star.size()));
    result.transcript.add("verify-hatH-m-star: matches-H(m)=yes");
    result.transcript.add("verify-hatH-m-star-prime: matches-H(m)=yes");
    return result;
}

ForgeResult lift_to_hatH2(ForgeResult result, const HashParams& params) {
    if (result.m_star.size() != result.m_star_prime.size())
        throw std::invalid_argument("lift requires an equal-length collision");
    const AffineMap d1 = hash_hatH2(result.m_star, params);
    const AffineMap d2 = hash_hatH2(result.m_star_prime, params);
    if (d1 != d2)
        throw std::logic_error(
            "internal error: equal-length hatH collision did not lift to hatH2");
    result.digest2 = d1;
    result.transcript.add("verify-hatH2-m-star: equal=yes");
    result.transcript.add("verify-hatH2-m-star-prime: equal=yes");
    return result;
}

ForgeResult end_to_end_break(const HashParams& params, std::size_t length,
                             std::uint64_t seed, SolveStrategy strategy,
                             std::size_t preimage_budget, int retries) {
    if (length < 2)
        throw std::invalid_argument("input too short for solver regime");
    const PrimeModulus& p = params.modulus();
    Rng rng(seed);

    std::string last_failure;
    for (int attempt = 0; attempt < retries; ++attempt) {
        const BitString m = random_balanced_bits(length, rng);
        const HashOutput target = hash_H(m, p);
        Transcript transcript;
        transcript.add("message: sampled balanced length=" +
                       std::to_string(length) + " seed=" + std::to_string(seed) +
                       " attempt=" + std::to_string(attempt));
        transcript.add("target: " + target.to_text());
        BitString m_prime;
        try {
            m_prime = second_preimage(target, length, rng.next(), strategy,
                                      &transcript);
        } catch (const SolverGaveUp& e) {
            last_failure = e.what();
            continue;
        } catch (const UnsolvableInstance& e) {
            last_failure = e.what();
            continue;
        }
        if (m_prime == m) continue;  // the solver reproduced m itself

        ForgeResult result =
            forge_hatH_collision(m, m_prime, params, preimage_budget);
        result = lift_to_hatH2(std::move(result), params);
        for (const auto& line : result.transcript.lines())
            transcript.add(line);
        result.transcript = std::move(transcript);
        return result;
    }
    throw SolverGaveUp("solver gave up: no attempt out of " +
                       std::to_string(retries) + " succeeded" +
                       (last_failure.empty() ? "" : " (last: " + last_failure + ")"));
}

}  // namespace caylab
