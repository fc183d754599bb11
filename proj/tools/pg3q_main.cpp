// Verification driver: runs the orbit, line and incidence checks for a
// chosen q and emits machine- and human-readable reports.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 configuration error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "pg3q/report.hpp"
#include "pg3q/verify.hpp"

namespace {

struct CommonOpts {
    int q = 0;
    std::string config;
    std::string out;
    std::string mode;
    std::string format;
};

pg3q::FieldConfig resolve_config(const CommonOpts& opts) {
    std::string path = opts.config;
    if (path.empty()) {
        if (const char* env = std::getenv("PG3Q_CONFIG")) path = env;
    }
    if (!path.empty()) {
        auto cfg = pg3q::FieldConfig::from_file(path);
        if (opts.q != 0) {
            int q = 1;
            for (int i = 0; i < cfg.m; ++i) q *= 3;
            if (q != opts.q) throw std::invalid_argument("--q disagrees with the configured m");
        }
        return cfg;
    }
    if (opts.q == 0) throw std::invalid_argument("either --q or --config is required");
    return pg3q::FieldConfig::for_q(opts.q);
}

pg3q::VerifyMode resolve_mode(const CommonOpts& opts, int q) {
    if (opts.mode.empty()) return pg3q::default_mode(q);
    if (opts.mode == "census") return pg3q::VerifyMode::Census;
    if (opts.mode == "invariant") return pg3q::VerifyMode::Invariant;
    throw std::invalid_argument("--mode must be census or invariant");
}

int finish(const std::vector<pg3q::VerificationResult>& results, const CommonOpts& opts) {
    if (opts.format == "json") {
        std::cout << pg3q::results_json(results);
    } else if (opts.format == "text") {
        for (auto& r : results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (q=" << r.q
                      << "): expected " << r.expected << ", observed " << r.observed;
            if (!r.notes.empty()) std::cout << "  [" << r.notes << "]";
            std::cout << "\n";
        }
        int passed = 0;
        for (auto& r : results) passed += r.pass;
        std::cout << passed << "/" << results.size() << " checks passed\n";
    } else {
        throw std::invalid_argument("--format must be text or json for the verify commands");
    }
    int failed = 0;
    for (auto& r : results) failed += !r.pass;
    if (!opts.out.empty()) {
        std::ofstream of(opts.out, std::ios::binary);
        if (!of) {
            std::cerr << "error: cannot write " << opts.out << "\n";
            return 2;
        }
        of << pg3q::results_json(results);
    }
    return failed ? 1 : 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--q", opts.q, "field size (9, 27 or 81)");
    cmd->add_option("--config", opts.config, "field configuration file (see README)");
    cmd->add_option("--out", opts.out, "write the check results as JSON to this path");
    cmd->add_option("--mode", opts.mode, "census or invariant (default depends on q)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbit and incidence verification for the twisted cubic in PG(3,q), q = 3^m"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* forms = app.add_subcommand("verify-forms", "quartic form orbit census and representatives");
    auto* lines = app.add_subcommand("verify-lines", "line orbit censuses and generator matrices");
    auto* incidence = app.add_subcommand("verify-incidence", "point/plane incidence and curve counts");
    auto* emit = app.add_subcommand("emit-tables", "write the orbit/incidence table reproductions");
    for (auto* cmd : {forms, lines, incidence}) {
        add_common(cmd, opts);
        cmd->add_option("--format", opts.format, "text (default) or json")->default_val("text");
    }
    add_common(emit, opts);
    std::string outdir = "tables";
    emit->add_option("--format", opts.format, "json, csv or markdown")->default_val("json");
    emit->add_option("--outdir", outdir, "output directory (default: tables)");

    CLI11_PARSE(app, argc, argv);

    try {
        pg3q::FieldContext F(resolve_config(opts));
        if (forms->parsed()) return finish(pg3q::verify_forms(F, resolve_mode(opts, F.q())), opts);
        if (lines->parsed()) return finish(pg3q::verify_lines(F, resolve_mode(opts, F.q())), opts);
        if (incidence->parsed()) return finish(pg3q::verify_incidence(F, resolve_mode(opts, F.q())), opts);
        if (emit->parsed()) {
            for (auto& path : pg3q::emit_tables(F, opts.format, outdir)) std::cout << path << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
