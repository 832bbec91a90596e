#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "derandom/family_io.hpp"
#include "derandom/mapping.hpp"
#include "derandom/splitter.hpp"
#include "derandom/verify.hpp"

namespace {

using namespace derandom;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::bad_params:
        case Errc::length_mismatch:
        case Errc::image_out_of_range:
        case Errc::codomain_mismatch:
        case Errc::limit_too_small:
        case Errc::parse_error:
            return 2;
        default:
            return 3;
    }
}

std::string witness_csv(const VerifyReport& rep) {
    if (rep.witness_function) return "function:" + std::to_string(*rep.witness_function);
    if (!rep.witness) return "none";
    std::string out;
    for (std::size_t i = 0; i < rep.witness->size(); ++i) {
        if (i) out += ',';
        out += std::to_string((*rep.witness)[i]);
    }
    return out.empty() ? "none" : out;
}

void print_result(const VerifyReport& rep) {
    std::cout << "RESULT valid=" << (rep.valid ? "true" : "false") << " checked=" << rep.checked
              << " witness=" << witness_csv(rep) << "\n";
}

VerifyReport run_oracle(const Family& fam) {
    switch (fam.kind) {
        case FamilyKind::splitter: return verify_splitter(fam, fam.k);
        case FamilyKind::bisector: return verify_bisector(fam, fam.k, fam.alpha);
        case FamilyKind::mapping:
            return verify_mapping_family(fam, fam.k0, fam.k1, fam.alpha, fam.beta);
        case FamilyKind::universal: return verify_universal(fam, fam.k, fam.alpha);
    }
    fail(Errc::bad_params, "unknown kind");
}

struct ConstructArgs {
    std::string kind;
    int n = 0, k = 0, ell = 0, k0 = -1, k1 = -1;
    std::string alpha, beta = "1/1", goal = "none", out;
    bool no_verify = false;
    BuildConfig cfg;
};

int cmd_construct(const ConstructArgs& a) {
    BuildConfig cfg = a.cfg;
    cfg.oracle_check = false;  // the post-build oracle below is the gate
    Family fam;
    try {
        if (a.kind == "splitter") {
            if (a.ell <= 0) fail(Errc::bad_params, "splitter needs --l");
            Uniformity goal;
            int goal_a = 0;
            parse_uniformity(a.goal, goal, goal_a);
            fam = build_splitter(a.n, a.k, a.ell, goal, cfg);
        } else if (a.kind == "bisector") {
            if (a.alpha.empty()) fail(Errc::bad_params, "bisector needs --alpha");
            fam = alpha_bisector(a.n, a.k, Rational::parse(a.alpha), cfg);
        } else if (a.kind == "mapping") {
            if (a.alpha.empty() || a.k0 < 0 || a.k1 < 0)
                fail(Errc::bad_params, "mapping needs --alpha, --k0, --k1");
            Rational beta = Rational::parse(a.beta);
            fam = beta == Rational(1, 1)
                      ? iterated_mapping_family(a.n, a.k0, a.k1, Rational::parse(a.alpha), cfg)
                      : base_mapping_family(a.n, a.k0, a.k1, Rational::parse(a.alpha), beta, cfg);
        } else if (a.kind == "universal") {
            if (a.alpha.empty()) fail(Errc::bad_params, "universal needs --alpha");
            fam = universal_set(a.n, a.k, Rational::parse(a.alpha), cfg);
        } else {
            fail(Errc::bad_params, "unknown kind '" + a.kind + "'");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }

    bool valid = true;
    if (!a.no_verify) {
        VerifyReport rep = run_oracle(fam);
        print_result(rep);
        valid = rep.valid;
    }
    write_family_file(a.out, fam, valid);
    return valid ? 0 : 4;
}

int cmd_verify(const std::string& path) {
    ParsedFamily parsed;
    try {
        parsed = read_family_file(path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    VerifyReport rep = run_oracle(parsed.family);
    print_result(rep);
    return rep.valid ? 0 : 1;
}

int cmd_info(const std::string& path) {
    ParsedFamily parsed;
    try {
        parsed = read_family_file(path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const Family& fam = parsed.family;
    std::cout << "kind=" << kind_name(fam.kind) << " n=" << fam.n << " k=" << fam.k;
    if (fam.kind == FamilyKind::splitter) std::cout << " ell=" << fam.ell;
    else std::cout << " alpha=" << fam.alpha.str();
    if (fam.kind == FamilyKind::mapping)
        std::cout << " beta=" << fam.beta.str() << " k0=" << fam.k0 << " k1=" << fam.k1;
    std::cout << "\ncount=" << fam.functions.size()
              << " uniformity=" << uniformity_str(fam.uniformity, fam.uniformity_a)
              << " out_of_regime=" << (fam.out_of_regime ? 1 : 0)
              << " sampled=" << (fam.sampled_pool ? 1 : 0) << " seed=" << fam.seed
              << " builder=" << fam.builder << " valid_flag=" << (parsed.valid_flag ? 1 : 0)
              << "\n";
    if (fam.kind == FamilyKind::splitter) {
        int worst = 0;
        for (const Function& f : fam.functions) worst = std::max(worst, nonuniformity(f));
        std::cout << "nonuniformity=" << worst << "\n";
    } else {
        std::int64_t target = ceil_mul(fam.alpha, fam.n);
        std::int64_t lo = -1, hi = -1;
        for (const Function& f : fam.functions) {
            std::int64_t ones = f.ones_count();
            if (lo < 0 || ones < lo) lo = ones;
            if (ones > hi) hi = ones;
        }
        std::cout << "ones target=" << target << " min=" << lo << " max=" << hi
                  << " exact=" << (lo == target && hi == target ? "yes" : "no") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform splitters, bisectors, mapping families, and universal sets"};
    app.require_subcommand(1);

    ConstructArgs c;
    CLI::App* construct = app.add_subcommand("construct", "build a family and write it to a file");
    construct->add_option("--kind", c.kind, "splitter|bisector|mapping|universal")->required();
    construct->add_option("--n", c.n)->required();
    construct->add_option("--k", c.k)->required();
    construct->add_option("--l,--ell", c.ell, "codomain size (splitter)");
    construct->add_option("--alpha", c.alpha, "exact rational p/q");
    construct->add_option("--beta", c.beta, "exact rational p/q (mapping)");
    construct->add_option("--k0", c.k0);
    construct->add_option("--k1", c.k1);
    construct->add_option("--goal", c.goal, "none|uniform|strong (splitter)");
    construct->add_option("--out", c.out, "output family file")->required();
    construct->add_flag("--no-verify", c.no_verify, "skip the post-build oracle");
    construct->add_option("--seed", c.cfg.seed, "sampled-pool RNG seed");
    construct->add_option("--pool-budget", c.cfg.full_pool_limit,
                          "max pool size enumerated exhaustively");
    construct->add_option("--sample-size", c.cfg.sample_size, "sampled-pool size");
    construct->add_option("--granularity", c.cfg.granularity,
                          "interval boundary grid (0 = auto)");
    construct->add_option("--guess-budget", c.cfg.guess_budget, "interval guess cap");
    construct->add_option("--threads", c.cfg.threads, "worker cap (0 = DERANDOM_THREADS/auto)");
    construct->add_flag("--allow-out-of-regime,!--strict-regime", c.cfg.allow_out_of_regime,
                        "accept parameters below the analyzed thresholds (default on)");

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "re-run the oracle on a family file");
    verify->add_option("file", verify_path)->required();

    std::string info_path;
    CLI::App* info = app.add_subcommand("info", "print family metadata");
    info->add_option("file", info_path)->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (construct->parsed()) return cmd_construct(c);
        if (verify->parsed()) return cmd_verify(verify_path);
        if (info->parsed()) return cmd_info(info_path);
    } catch (const derandom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
