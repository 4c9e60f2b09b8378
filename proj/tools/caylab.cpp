// caylab — affine Cayley hashes over F_p and the attacks that break them.
//
// Subcommands: hash, second-preimage, forge, bench, selftest. Every command
// that claims success has re-verified its output by direct evaluation; exit
// codes are the contract (0 ok, 1 solver gave up, 2 bad input, 3 no
// insertable preimage, 4 internal error).

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "caylab/attack.hpp"
#include "caylab/errors.hpp"
#include "caylab/forge.hpp"
#include "caylab/hashes.hpp"
#include "caylab/oracles.hpp"
#include "caylab/params_io.hpp"
#include "caylab/rng.hpp"

using namespace caylab;

namespace {

struct Options {
    std::string config_path;
    std::string p_text;
    std::size_t t = 0;  // 0 = unset
    std::string g_pair;
    std::string g_word;
    std::string g_inv_word;
    std::string c_rnd_hex;
    std::uint64_t seed = 1;
    std::string strategy = "auto";
    std::size_t budget_max_candidates = std::size_t{1} << 20;
    std::string out_path;
};

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config_path,
                    "key=value file: p, t, g_r, g_s, g_word, g_inv_word, c_rnd");
    cmd->add_option("--p", opt.p_text,
                    "prime modulus, decimal or 0x-hex; required here or in the config");
    cmd->add_option("--t", opt.t, "g-insertion period (> 1, default 8)");
    cmd->add_option("--g", opt.g_pair,
                    "g as an \"r,s\" pair (caller asserts g is in the group)");
    cmd->add_option("--g-word", opt.g_word,
                    "g as a generator word (g = H-product of the bits)");
    cmd->add_option("--g-inv-word", opt.g_inv_word,
                    "g as the inverse of a generator word (gives g^-1 a known preimage)");
    cmd->add_option("--c-rnd", opt.c_rnd_hex,
                    "c_rnd as bare hex, 2*ceil(log2 p) bits");
    cmd->add_option("--seed", opt.seed, "seed for every randomized step");
    cmd->add_option("--strategy", opt.strategy,
                    "subset-sum strategy: auto, exhaustive, meet-in-middle, list-merge")
        ->check(CLI::IsMember({"auto", "exhaustive", "meet-in-middle", "list-merge"}));
    cmd->add_option("--budget-max-candidates", opt.budget_max_candidates,
                    "search budget: candidate cap for enumeration");
    cmd->add_option("--out", opt.out_path, "also write the result to this file");
}

// config file first, flags override
struct Resolved {
    std::map<std::string, std::string> config;
    PrimeModulus p;
    std::size_t t;
    BitString c_rnd;
};

Resolved resolve_base(const Options& opt) {
    std::map<std::string, std::string> config;
    if (!opt.config_path.empty()) config = load_key_value_file(opt.config_path);

    std::string p_text = opt.p_text;
    if (p_text.empty() && config.count("p")) p_text = config.at("p");
    if (p_text.empty())
        throw std::invalid_argument("no modulus: pass --p or a config with p=");
    PrimeModulus p(p_text);

    std::size_t t = opt.t;
    if (t == 0 && config.count("t")) t = std::stoull(config.at("t"));
    if (t == 0) t = 8;

    std::string c_hex = opt.c_rnd_hex;
    if (c_hex.empty() && config.count("c_rnd")) c_hex = config.at("c_rnd");
    BitString c_rnd = c_hex.empty() ? default_c_rnd(p) : parse_c_rnd_hex(c_hex, p);

    return Resolved{std::move(config), std::move(p), t, std::move(c_rnd)};
}

AffineMap resolve_g(const Options& opt, const Resolved& base) {
    const PrimeModulus& p = base.p;
    if (!opt.g_pair.empty()) return parse_affine(opt.g_pair, p);
    if (!opt.g_word.empty()) return product_map(parse_message(opt.g_word), p);
    if (!opt.g_inv_word.empty())
        return inverse(product_map(parse_message(opt.g_inv_word), p));
    if (base.config.count("g_r") && base.config.count("g_s"))
        return parse_affine(base.config.at("g_r") + "," + base.config.at("g_s"), p);
    if (base.config.count("g_word"))
        return product_map(parse_message(base.config.at("g_word")), p);
    if (base.config.count("g_inv_word"))
        return inverse(product_map(parse_message(base.config.at("g_inv_word")), p));
    // default: inverse of a short word, so forging always has a usable g
    return inverse(product_map(BitString::from_ascii("0111001"), p));
}

HashParams resolve_params(const Options& opt, const Resolved& base) {
    return HashParams(base.p, base.t, resolve_g(opt, base), base.c_rnd);
}

SolveStrategy parse_strategy(const std::string& name) {
    if (name == "exhaustive") return SolveStrategy::Exhaustive;
    if (name == "meet-in-middle") return SolveStrategy::MeetInMiddle;
    if (name == "list-merge") return SolveStrategy::ListMerge;
    return SolveStrategy::Auto;
}

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write: " + out_path);
        out << text;
    }
}

std::string hex_of(const mpz_class& v) { return "0x" + v.get_str(16); }

// ---------------------------------------------------------------------- hash

int cmd_hash(const Options& opt, const std::string& function,
             const std::string& message_text, bool pad512) {
    const Resolved base = resolve_base(opt);
    BitString m = parse_message(message_text);
    if (pad512)
        while (m.size() < 512) m.push_back(0);

    std::string decimal, hex;
    if (function == "H" || function == "H2") {
        const HashOutput o = function == "H" ? hash_H(m, base.p)
                                             : hash_H2(m, resolve_params(opt, base));
        decimal = o.to_text();
        hex = hex_of(o.first.value()) + "," + hex_of(o.second.value());
    } else {
        const HashParams params = resolve_params(opt, base);
        const AffineMap v =
            function == "hatH" ? hash_hatH(m, params) : hash_hatH2(m, params);
        decimal = v.to_text();
        hex = hex_of(v.r().value()) + "," + hex_of(v.s().value());
    }
    emit(decimal + "\nhex: " + hex + "\n", opt.out_path);
    return 0;
}

// ----------------------------------------------------------- second-preimage

int cmd_second_preimage(const Options& opt, const std::string& digest_text,
                        const std::string& message_text, std::size_t length) {
    const Resolved base = resolve_base(opt);
    HashOutput target{FieldElement(1, base.p), FieldElement(0, base.p)};
    if (!digest_text.empty()) {
        target = parse_hash_output(digest_text, base.p);
    } else {
        // digest computed from the message, which is then discarded: the
        // attack runs from the hash value and the length bound alone
        const BitString m = parse_message(message_text);
        length = m.size();
        target = hash_H(m, base.p);
    }

    Transcript transcript;
    transcript.add("attack: second-preimage L=" + std::to_string(length) +
                   " seed=" + std::to_string(opt.seed) +
                   " strategy=" + opt.strategy);
    const BitString preimage = second_preimage(
        target, length, opt.seed, parse_strategy(opt.strategy), &transcript);
    transcript.add("result: " + preimage.to_len_hex());

    emit(transcript.to_text(), opt.out_path);
    std::cerr << transcript.timings_text();
    return 0;
}

// ---------------------------------------------------------------------- forge

int cmd_forge(const Options& opt, std::size_t length) {
    const Resolved base = resolve_base(opt);
    const HashParams params = resolve_params(opt, base);
    ForgeResult result =
        end_to_end_break(params, length, opt.seed, parse_strategy(opt.strategy),
                         opt.budget_max_candidates);
    emit(result.to_text(), opt.out_path);
    std::cerr << result.transcript.timings_text();
    return 0;
}

// ---------------------------------------------------------------------- bench

int cmd_bench(const Options& opt, const std::vector<std::size_t>& sizes) {
    const Resolved base = resolve_base(opt);
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    Rng rng(opt.seed);
    std::printf("%12s %14s %14s %12s %12s %8s %10s\n", "bits", "muls", "adds",
                "seq-bits/s", "par-bits/s", "<=2n", "par==seq");
    for (std::size_t n : sizes) {
        const BitString m = random_bits(n, rng);
        reset_op_counters();
        auto t0 = std::chrono::steady_clock::now();
        const HashOutput seq = hash_H(m, base.p);
        const double dt_seq =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        const OpCounters c = op_counters();
        t0 = std::chrono::steady_clock::now();
        const AffineMap par = product_map_parallel(m, base.p, threads);
        const double dt_par =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        const bool bound_ok = c.mul <= 2 * n && c.add <= 2 * n;
        const bool par_ok = to_output(par) == seq;
        std::printf("%12zu %14llu %14llu %12.0f %12.0f %8s %10s\n", n,
                    static_cast<unsigned long long>(c.mul),
                    static_cast<unsigned long long>(c.add),
                    dt_seq > 0 ? static_cast<double>(n) / dt_seq : 0.0,
                    dt_par > 0 ? static_cast<double>(n) / dt_par : 0.0,
                    bound_ok ? "yes" : "NO", par_ok ? "yes" : "NO");
        if (!bound_ok || !par_ok) return 4;
    }
    return 0;
}

// ------------------------------------------------------------------- selftest

int cmd_selftest() {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };

    PrimeModulus p101(101ul);

    {  // hash core against the naive oracle, all strings to length 10
        bool ok = true;
        for (std::size_t len = 0; len <= 10 && ok; ++len)
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << len) && ok; ++w) {
                BitString m;
                for (std::size_t i = 0; i < len; ++i)
                    m.push_back((w >> (len - 1 - i)) & 1);
                ok = hash_H(m, p101) == naive_hash(m, p101);
            }
        report("hash-core oracle equivalence (p=101, len <= 10)", ok);
    }

    {  // the textbook attack instance
        bool ok = false;
        try {
            const BitString m2 = second_preimage(
                {FieldElement(63, p101), FieldElement(27, p101)}, 4, 1);
            ok = m2.to_ascii() == "0110";
        } catch (const std::exception&) {
        }
        report("second-preimage worked example", ok);
    }

    {  // solver agreement on small instances
        bool ok = true;
        Rng rng(3);
        for (int rep = 0; rep < 50 && ok; ++rep) {
            SubsetSumInstance inst(1 + rng.below(10),
                                   random_field_element(p101, rng));
            bool ex = true, mm = true;
            try {
                (void)solve_subset_sum(inst, SolveStrategy::Exhaustive, rep);
            } catch (const UnsolvableInstance&) {
                ex = false;
            }
            try {
                (void)solve_subset_sum(inst, SolveStrategy::MeetInMiddle, rep);
            } catch (const UnsolvableInstance&) {
                mm = false;
            }
            ok = ex == mm;
        }
        report("subset-sum solver agreement", ok);
    }

    {  // telescoping insertion at p=101
        bool ok = true;
        Rng rng(4);
        int checked = 0;
        while (checked < 50 && ok) {
            const std::size_t t = 2 + rng.below(9);
            const BitString word = random_bits(1 + rng.below(t - 1), rng);
            const AffineMap g = inverse(product_map(word, p101));
            if (g == AffineMap::identity(p101) || g == generator(0, p101) ||
                g == generator(1, p101))
                continue;
            HashParams prm(p101, t, g, default_c_rnd(p101));
            const BitString m = random_bits(rng.below(120), rng);
            ok = hash_hatH(aligned_insert(m, word, t), prm) == product_map(m, p101);
            ++checked;
        }
        report("telescoping insertion", ok);
    }

    {  // a full break at p=101
        bool ok = false;
        try {
            HashParams prm(p101, 2,
                           AffineMap(FieldElement(51, p101), FieldElement(50, p101)),
                           default_c_rnd(p101));
            const ForgeResult r = end_to_end_break(prm, 24, 9);
            ok = r.digest2.has_value() && r.m_star != r.m_star_prime &&
                 hash_hatH(r.m_star, prm) == hash_hatH(r.m_star_prime, prm) &&
                 hash_hatH2(r.m_star, prm) == hash_hatH2(r.m_star_prime, prm);
        } catch (const std::exception&) {
        }
        report("end-to-end forge (p=101)", ok);
    }

    std::printf(failures == 0 ? "selftest: all green\n"
                              : "selftest: %d failure(s)\n",
                failures);
    return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine Cayley hashes over F_p and the attacks that break them"};
    app.require_subcommand(1);

    Options opt;

    auto* hash_cmd = app.add_subcommand("hash", "evaluate H, H2, hatH or hatH2");
    std::string function = "H", message_text;
    bool pad512 = false;
    hash_cmd->add_option("-f,--function", function, "H, H2, hatH or hatH2")
        ->check(CLI::IsMember({"H", "H2", "hatH", "hatH2"}));
    hash_cmd->add_option("message", message_text,
                         "'0'/'1' text, \"len:hex\", or @path")
        ->required();
    hash_cmd->add_flag("--pad512", pad512, "zero-pad short inputs to 512 bits");
    add_common_options(hash_cmd, opt);

    auto* sp_cmd = app.add_subcommand(
        "second-preimage", "find a distinct message with the same H digest");
    std::string digest_text, sp_message;
    std::size_t sp_length = 0;
    sp_cmd->add_option("--digest", digest_text, "target digest as \"first,second\"");
    sp_cmd->add_option("--length", sp_length, "bit length of the (unknown) source");
    sp_cmd->add_option("--message", sp_message,
                       "alternative: hash this message, then attack the digest only");
    add_common_options(sp_cmd, opt);

    auto* forge_cmd = app.add_subcommand(
        "forge", "produce a verified hatH/hatH2 collision pair");
    std::size_t forge_length = 4096;
    forge_cmd->add_option("--length", forge_length, "length of the seed message");
    add_common_options(forge_cmd, opt);

    auto* bench_cmd = app.add_subcommand("bench", "hash throughput and op counts");
    std::string sizes_text = "1000,100000,1000000";
    bench_cmd->add_option("--sizes", sizes_text, "comma-separated bit lengths");
    add_common_options(bench_cmd, opt);

    auto* selftest_cmd =
        app.add_subcommand("selftest", "quick oracle-backed sanity checks");
    (void)selftest_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        if (hash_cmd->parsed()) return cmd_hash(opt, function, message_text, pad512);
        if (sp_cmd->parsed()) {
            if (digest_text.empty() && sp_message.empty())
                throw std::invalid_argument(
                    "pass --digest with --length, or --message");
            if (!digest_text.empty() && sp_cmd->count("--length") == 0)
                throw std::invalid_argument("--digest needs --length");
            return cmd_second_preimage(opt, digest_text, sp_message, sp_length);
        }
        if (forge_cmd->parsed()) return cmd_forge(opt, forge_length);
        if (bench_cmd->parsed()) {
            std::vector<std::size_t> sizes;
            std::size_t pos = 0;
            while (pos < sizes_text.size()) {
                const auto comma = sizes_text.find(',', pos);
                const std::string tok = sizes_text.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                sizes.push_back(std::stoull(tok));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return cmd_bench(opt, sizes);
        }
        if (selftest_cmd->parsed()) return cmd_selftest();
    } catch (const SolverGaveUp& e) {
        std::cerr << "gave up: " << e.what() << "\n";
        return 1;
    } catch (const UnsolvableInstance& e) {
        std::cerr << "gave up: " << e.what() << "\n";
        return 1;
    } catch (const NoInsertablePreimage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotAnImage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
