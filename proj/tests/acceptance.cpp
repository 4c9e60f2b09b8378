// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Run a single criterion by passing its number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "caylab/attack.hpp"
#include "caylab/errors.hpp"
#include "caylab/forge.hpp"
#include "caylab/hashes.hpp"
#include "caylab/oracles.hpp"
#include "caylab/rng.hpp"
#include "test_constants.hpp"

using namespace caylab;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    int number;
    const char* name;
    std::function<void(std::string& detail)> run;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

BitString word_of(std::uint64_t w, std::size_t len) {
    BitString m;
    for (std::size_t i = 0; i < len; ++i)
        m.push_back((w >> (len - 1 - i)) & 1);
    return m;
}

double log2_of(const mpz_class& v) {
    signed long exp = 0;
    const double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp);
}

// ---------------------------------------------------------------------------
// 1. hash_H == naive_hash: exhaustively to length 12 at p in {101, 1009} and
//    on 200 random 4096-bit strings at a 512-bit safe prime; under a minute.
// ---------------------------------------------------------------------------
void criterion_oracle_equivalence(std::string& detail) {
    const auto t0 = Clock::now();
    std::size_t checked = 0;
    for (unsigned long pv : {101ul, 1009ul}) {
        PrimeModulus p(pv);
        for (std::size_t len = 0; len <= 12; ++len) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
                const BitString m = word_of(w, len);
                require(hash_H(m, p) == naive_hash(m, p),
                        "mismatch at p=" + std::to_string(pv) + " m=" + m.to_ascii());
                ++checked;
            }
        }
    }

    PrimeModulus p512{mpz_class(kSafePrime512)};
    require(is_safe_prime(p512.value()), "512-bit modulus must be a safe prime");
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const BitString m = random_bits(4096, rng);
        require(hash_H(m, p512) == naive_hash(m, p512),
                "mismatch on random 4096-bit string #" + std::to_string(i));
        ++checked;
    }
    const double dt = seconds_since(t0);
    require(dt < 60.0, "took " + std::to_string(dt) + "s, budget is 60s");
    detail = std::to_string(checked) + " strings, " + std::to_string(dt) + "s";
}

// ---------------------------------------------------------------------------
// 2. product_map(m).r == 2^zeros 3^ones for 10^4 random strings.
// ---------------------------------------------------------------------------
void criterion_exponent_law(std::string& detail) {
    PrimeModulus p1009(1009ul);
    PrimeModulus p36{mpz_class(kPrime36)};
    Rng rng(2);
    for (int i = 0; i < 10000; ++i) {
        const PrimeModulus& p = (i % 2 == 0) ? p1009 : p36;
        const BitString m = random_bits(rng.below(257), rng);
        const FieldElement expected =
            mod_pow(FieldElement(2, p),
                    mpz_class(static_cast<unsigned long>(m.count_zeros()))) *
            mod_pow(FieldElement(3, p),
                    mpz_class(static_cast<unsigned long>(m.count_ones())));
        require(product_map(m, p).r() == expected,
                "exponent law failed at string #" + std::to_string(i));
    }
    detail = "10000 strings at two moduli";
}

// ---------------------------------------------------------------------------
// 3. single-swap words: constant term == u + 6^j, for n <= 16, at p=101 and
//    a 60-bit prime, across tail shapes.
// ---------------------------------------------------------------------------
void criterion_swap_delta(std::string& detail) {
    std::size_t checked = 0;
    for (const char* ptext : {"101", kPrime60}) {
        PrimeModulus p{mpz_class(ptext)};
        for (std::size_t n = 1; n <= 16; ++n) {
            const ExponentSplit splits[] = {{n, n}, {n + 3, n}, {n, n + 2}};
            for (const ExponentSplit& split : splits) {
                const FieldElement u = product_map(canonical_word(split), p).s();
                FieldElement power(1, p);
                const FieldElement six(6, p);
                for (std::size_t j = 0; j < n; ++j) {
                    BitString swapped;
                    for (std::size_t b = 0; b < n; ++b) {
                        swapped.push_back(b == j ? 1 : 0);
                        swapped.push_back(b == j ? 0 : 1);
                    }
                    const int surplus = split.zeros > split.ones ? 0 : 1;
                    for (std::size_t i = n; i < std::max(split.zeros, split.ones); ++i)
                        swapped.push_back(surplus);
                    require(product_map(swapped, p).s() == u + power,
                            "swap delta failed at n=" + std::to_string(n) +
                                " j=" + std::to_string(j) + " p=" + ptext);
                    power = power * six;
                    ++checked;
                }
            }
        }
    }
    detail = std::to_string(checked) + " single-swap words";
}

// ---------------------------------------------------------------------------
// 4. recover_exponents at a 512-bit prime: operations grow no faster than
//    c * L log2 L, with c fitted on L in {1e4, 1e5}; L=1e6 under 60 s.
// ---------------------------------------------------------------------------
void criterion_recover_complexity(std::string& detail) {
    PrimeModulus p{mpz_class(kSafePrime512)};
    std::map<std::size_t, std::uint64_t> ops;
    double wall_1e6 = 0;
    for (std::size_t L : {std::size_t{10000}, std::size_t{100000}, std::size_t{1000000}}) {
        const std::size_t a = L * 3 / 5;
        const FieldElement r =
            mod_pow(FieldElement(2, p), mpz_class(static_cast<unsigned long>(a))) *
            mod_pow(FieldElement(3, p), mpz_class(static_cast<unsigned long>(L - a)));
        const auto t0 = Clock::now();
        RecoverInfo info;
        const ExponentSplit split = recover_exponents(r, L, &info);
        const double dt = seconds_since(t0);
        if (L == 1000000) wall_1e6 = dt;
        require(split.zeros + split.ones == L, "split length mismatch");
        require(mod_pow(FieldElement(2, p),
                        mpz_class(static_cast<unsigned long>(split.zeros))) *
                        mod_pow(FieldElement(3, p),
                                mpz_class(static_cast<unsigned long>(split.ones))) ==
                    r,
                "recovered split does not reproduce r");
        ops[L] = info.total_ops();
    }
    auto ratio = [&](std::size_t L) {
        return static_cast<double>(ops[L]) /
               (static_cast<double>(L) * std::log2(static_cast<double>(L)));
    };
    const double fitted = 1.25 * std::max(ratio(10000), ratio(100000));
    require(ratio(1000000) <= fitted,
            "operation count grew faster than c*L*log2(L): ratio " +
                std::to_string(ratio(1000000)) + " vs fitted " +
                std::to_string(fitted));
    require(wall_1e6 < 60.0,
            "L=1e6 took " + std::to_string(wall_1e6) + "s, budget is 60s");
    detail = "ratios " + std::to_string(ratio(10000)) + " / " +
             std::to_string(ratio(100000)) + " / " + std::to_string(ratio(1000000)) +
             ", L=1e6 in " + std::to_string(wall_1e6) + "s";
}

// ---------------------------------------------------------------------------
// 5. exhaustive and meet-in-the-middle agree on solvability for n <= 16 with
//    10^3 targets per n at p=101 and p ~ 2^32; list-merge verifies whenever
//    it returns. (Solutions re-verify by construction.)
// ---------------------------------------------------------------------------
void criterion_solver_equivalence(std::string& detail) {
    Rng rng(5);
    std::size_t solved = 0, unsolvable = 0, lm_returns = 0;
    for (const char* ptext : {"101", kPrime32}) {
        PrimeModulus p{mpz_class(ptext)};
        for (std::size_t n = 0; n <= 16; ++n) {
            for (int rep = 0; rep < 1000; ++rep) {
                // half uniform targets, half planted subset sums
                FieldElement target = random_field_element(p, rng);
                SubsetSumInstance inst(n, target);
                if (rep % 2 == 1) {
                    FieldElement planted(0, p);
                    for (const auto& w : inst.weights())
                        if (rng.coin()) planted = planted + w;
                    inst = SubsetSumInstance(n, planted);
                }
                bool ex_ok = true, mm_ok = true;
                try {
                    (void)solve_subset_sum(inst, SolveStrategy::Exhaustive, rep);
                } catch (const UnsolvableInstance&) {
                    ex_ok = false;
                }
                try {
                    (void)solve_subset_sum(inst, SolveStrategy::MeetInMiddle, rep);
                } catch (const UnsolvableInstance&) {
                    mm_ok = false;
                }
                require(ex_ok == mm_ok,
                        "solvability disagreement at p=" + std::string(ptext) +
                            " n=" + std::to_string(n));
                (ex_ok ? solved : unsolvable) += 1;
                if (rep % 97 == 0) {
                    try {
                        (void)solve_subset_sum(inst, SolveStrategy::ListMerge, rep);
                        ++lm_returns;  // construction re-verified the sum
                    } catch (const SolverGaveUp&) {
                    } catch (const UnsolvableInstance&) {
                    }
                }
            }
        }
    }
    detail = std::to_string(solved) + " solvable / " + std::to_string(unsolvable) +
             " unsolvable, list-merge returned " + std::to_string(lm_returns) +
             " verified";
}

// ---------------------------------------------------------------------------
// 6. scaled second-preimage attack at p ~ 2^36: >= 16/20 random balanced
//    messages of length 4*n_min broken in < 30 s each.
// ---------------------------------------------------------------------------
void criterion_scaled_attack(std::string& detail) {
    PrimeModulus p{mpz_class(kPrime36)};
    const double n_min = std::exp2(std::sqrt(2.0 * log2_of(p.value())));
    std::size_t length = static_cast<std::size_t>(4.0 * std::ceil(n_min));
    length += length % 2;  // balanced needs an even length
    Rng rng(6);
    int successes = 0;
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const BitString m = random_balanced_bits(length, rng);
        const HashOutput target = hash_H(m, p);
        const auto t0 = Clock::now();
        try {
            const BitString m2 =
                second_preimage(target, length, rng.next(), SolveStrategy::Auto);
            const double dt = seconds_since(t0);
            worst = std::max(worst, dt);
            if (dt < 30.0 && m2 != m && m2.size() == length &&
                hash_H(m2, p) == target)
                ++successes;
        } catch (const SolverGaveUp&) {
        } catch (const UnsolvableInstance&) {
        }
    }
    require(successes >= 16, "only " + std::to_string(successes) +
                                 "/20 trials succeeded (need 16)");
    detail = std::to_string(successes) + "/20 at length " +
             std::to_string(length) + ", worst trial " + std::to_string(worst) + "s";
}

// ---------------------------------------------------------------------------
// 7. 50 seeded end-to-end forges at p ~ 2^36, t in {4, 8, 16}: every result
//    passes all four equality checks. Solve retries are allowed; failures to
//    verify are defects.
// ---------------------------------------------------------------------------
void criterion_forge_end_to_end(std::string& detail) {
    PrimeModulus p{mpz_class(kPrime36)};
    const std::size_t length = 1436;
    const std::size_t t_values[] = {4, 8, 16};
    int verified = 0;
    for (int run = 0; run < 50; ++run) {
        const std::size_t t = t_values[run % 3];
        Rng grng(1000 + run);
        AffineMap g = AffineMap::identity(p);
        for (;;) {
            const BitString word = random_bits(1 + grng.below(t - 1), grng);
            g = inverse(product_map(word, p));
            if (g != AffineMap::identity(p) && g != generator(0, p) &&
                g != generator(1, p))
                break;
        }
        HashParams prm(p, t, g, default_c_rnd(p));
        ForgeResult result = end_to_end_break(prm, length, 3000 + run);
        require(result.digest2.has_value(), "run lacks a lifted digest");
        const bool ok = result.m_star != result.m_star_prime &&
                        result.m_star.size() == result.m_star_prime.size() &&
                        hash_hatH(result.m_star, prm) == result.digest &&
                        hash_hatH(result.m_star_prime, prm) == result.digest &&
                        hash_hatH2(result.m_star, prm) == *result.digest2 &&
                        hash_hatH2(result.m_star_prime, prm) == *result.digest2;
        require(ok, "verification failed on run " + std::to_string(run));
        ++verified;
    }
    detail = std::to_string(verified) + "/50 verified across t in {4,8,16}";
}

// ---------------------------------------------------------------------------
// 8. telescoping identity on 10^3 random tuples satisfying the
//    preconditions.
// ---------------------------------------------------------------------------
void criterion_telescoping(std::string& detail) {
    const PrimeModulus moduli[] = {PrimeModulus(101ul),
                                   PrimeModulus{mpz_class(kPrime60)},
                                   PrimeModulus{mpz_class(kPrime36)}};
    Rng rng(8);
    int checked = 0;
    while (checked < 1000) {
        const PrimeModulus& p = moduli[checked % 3];
        const std::size_t t = 2 + rng.below(15);
        const BitString b_prime = random_bits(1 + rng.below(t - 1), rng);
        const AffineMap g = inverse(product_map(b_prime, p));
        if (g == AffineMap::identity(p) || g == generator(0, p) ||
            g == generator(1, p))
            continue;
        HashParams prm(p, t, g, default_c_rnd(p));
        const BitString m = random_bits(rng.below(200), rng);
        require(hash_hatH(aligned_insert(m, b_prime, t), prm) == product_map(m, p),
                "telescoping failed at tuple " + std::to_string(checked));
        ++checked;
    }
    detail = "1000 tuples across three moduli";
}

// ---------------------------------------------------------------------------
// 9. instrumented hash_H uses at most 2n multiplications and 2n additions
//    for n in {1e3, 1e6}.
// ---------------------------------------------------------------------------
void criterion_multiplication_bound(std::string& detail) {
    Rng rng(9);
    std::string counts;
    for (const char* ptext : {"1009", kSafePrime512}) {
        PrimeModulus p{mpz_class(ptext)};
        for (std::size_t n : {std::size_t{1000}, std::size_t{1000000}}) {
            const BitString m = random_bits(n, rng);
            reset_op_counters();
            (void)hash_H(m, p);
            const OpCounters c = op_counters();
            require(c.mul <= 2 * n, "multiplications " + std::to_string(c.mul) +
                                        " exceed 2n at n=" + std::to_string(n));
            require(c.add <= 2 * n, "additions " + std::to_string(c.add) +
                                        " exceed 2n at n=" + std::to_string(n));
            if (n == 1000000 && ptext[0] != '1')
                counts = std::to_string(c.mul) + " muls, " + std::to_string(c.add) +
                         " adds at n=1e6";
        }
    }
    detail = counts;
}

// ---------------------------------------------------------------------------
// 10. every H-collision found by enumeration at p in {5, 101} also collides
//     under H2; every equal-length forged hatH collision lifts to hatH2.
// ---------------------------------------------------------------------------
void criterion_collision_lifts(std::string& detail) {
    std::size_t pairs_checked = 0;
    for (unsigned long pv : {5ul, 101ul}) {
        PrimeModulus p(pv);
        HashParams prm(p, 2, AffineMap(FieldElement(4, p), FieldElement(2, p)),
                       default_c_rnd(p));
        // collect every colliding pair among all words up to a small length
        const std::size_t max_len = pv == 5 ? 8 : 13;
        std::map<std::pair<mpz_class, mpz_class>, std::vector<std::uint64_t>> classes;
        for (std::size_t len = 0; len <= max_len; ++len) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
                const BitString m = word_of(w, len);
                const AffineMap v = product_map(m, p);
                classes[{v.r().value(), v.s().value()}].push_back(
                    (static_cast<std::uint64_t>(len) << 32) | w);
            }
        }
        std::size_t budget = 200;  // pairs per modulus
        for (const auto& [value, words] : classes) {
            if (words.size() < 2 || budget == 0) continue;
            for (std::size_t i = 1; i < words.size() && budget > 0; ++i, --budget) {
                auto decode = [](std::uint64_t code) {
                    return word_of(code & 0xffffffffull, (code >> 32) & 0x7fffffffull);
                };
                const BitString a = decode(words[0]);
                const BitString b = decode(words[i]);
                require(hash_H(a, p) == hash_H(b, p), "class member mismatch");
                require(hash_H2(a, prm) == hash_H2(b, prm),
                        "H2 lift failed at p=" + std::to_string(pv));
                ++pairs_checked;
            }
        }
    }

    // forged hatH collisions lift to hatH2
    PrimeModulus p36{mpz_class(kPrime36)};
    std::size_t forged_checked = 0;
    for (int run = 0; run < 6; ++run) {
        const std::size_t t = 4 + 4 * static_cast<std::size_t>(run % 3);
        Rng grng(500 + run);
        AffineMap g = AffineMap::identity(p36);
        for (;;) {
            const BitString word = random_bits(1 + grng.below(t - 1), grng);
            g = inverse(product_map(word, p36));
            if (g != AffineMap::identity(p36) && g != generator(0, p36) &&
                g != generator(1, p36))
                break;
        }
        HashParams prm(p36, t, g, default_c_rnd(p36));
        ForgeResult result = end_to_end_break(prm, 1436, 900 + run);
        require(result.m_star.size() == result.m_star_prime.size(),
                "forged pair has unequal lengths");
        require(hash_hatH(result.m_star, prm) == hash_hatH(result.m_star_prime, prm),
                "forged pair is not a hatH collision");
        require(hash_hatH2(result.m_star, prm) == hash_hatH2(result.m_star_prime, prm),
                "hatH2 lift failed on run " + std::to_string(run));
        ++forged_checked;
    }
    detail = std::to_string(pairs_checked) + " enumerated H pairs, " +
             std::to_string(forged_checked) + " forged hatH pairs";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "oracle-equivalence", criterion_oracle_equivalence},
        {2, "exponent-law", criterion_exponent_law},
        {3, "swap-delta", criterion_swap_delta},
        {4, "recover-exponents-complexity", criterion_recover_complexity},
        {5, "solver-equivalence", criterion_solver_equivalence},
        {6, "scaled-second-preimage", criterion_scaled_attack},
        {7, "forge-end-to-end", criterion_forge_end_to_end},
        {8, "telescoping-identity", criterion_telescoping},
        {9, "multiplication-bound", criterion_multiplication_bound},
        {10, "collision-lifts", criterion_collision_lifts},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.number != only) continue;
        const auto t0 = Clock::now();
        std::string detail;
        try {
            c.run(detail);
            std::printf("PASS criterion-%d %s (%.2fs)%s%s\n", c.number, c.name,
                        seconds_since(t0), detail.empty() ? "" : " — ",
                        detail.c_str());
        } catch (const std::exception& e) {
            ++failures;
            std::printf("FAIL criterion-%d %s (%.2fs) — %s\n", c.number, c.name,
                        seconds_since(t0), e.what());
        }
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
