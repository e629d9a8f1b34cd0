#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lagcert/certify.hpp"
#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"
#include "lagcert/galois.hpp"
#include "lagcert/report.hpp"
#include "lagcert/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_no_result = 2;  // residual, unknown, unsupported, or a hit limit
constexpr int exit_usage = 64;
constexpr int exit_internal = 70;  // invariant violation; a bug, not a math result

mpz_class parse_integer(const std::string& s) {
    try {
        return mpz_class(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: " + s);
    }
}

int cmd_certify(const std::string& n_str, const std::string& r_str) {
    lagcert::glp_instance inst(parse_integer(n_str), parse_integer(r_str));
    lagcert::exclusion_certificate cert = lagcert::certify_irreducible(inst);
    if (cert.status == lagcert::certificate_status::complete &&
        !lagcert::check_certificate(cert))
        throw lagcert::internal_error("emitted certificate failed its own replay");
    std::fputs(lagcert::emit(lagcert::to_document(cert)).c_str(), stdout);
    return cert.status == lagcert::certificate_status::complete ? exit_ok : exit_no_result;
}

int cmd_scan(unsigned r_lo, unsigned r_hi) {
    lagcert::scan_report rep = lagcert::scan_range(r_lo, r_hi);
    std::fputs(lagcert::scan_table(rep).c_str(), stdout);
    return rep.all_residuals_eliminated ? exit_ok : exit_no_result;
}

int cmd_galois(const std::string& n_str, const std::string& r_str) {
    lagcert::glp_instance inst(parse_integer(n_str), parse_integer(r_str));
    lagcert::galois_verdict_result v = lagcert::galois_verdict(inst);
    std::fputs(lagcert::emit(lagcert::to_document(v)).c_str(), stdout);
    bool decided = v.outcome == lagcert::galois_outcome::alternating ||
                   v.outcome == lagcert::galois_outcome::symmetric;
    return decided ? exit_ok : exit_no_result;
}

int cmd_verify(const std::vector<std::string>& only, bool emit_fixtures,
               const std::string& fixtures_dir) {
    if (emit_fixtures) {
        for (const auto& st : lagcert::emit_fixture_files(fixtures_dir, true)) {
            const char* state = !st.existed ? "generated"
                                : st.matched ? "unchanged"
                                             : "differed, rewritten";
            std::printf("fixture %s %s\n", st.path.c_str(), state);
        }
        if (only.empty()) return exit_ok;
    }
    std::vector<int> ids;
    for (const auto& sel : only) {
        bool found = false;
        for (const auto& [id, name] : lagcert::acceptance_criteria())
            if (sel == name || sel == std::to_string(id)) {
                ids.push_back(id);
                found = true;
            }
        if (!found) throw std::invalid_argument("unknown criterion: " + sel);
    }
    bool all_passed = true;
    for (const auto& res : lagcert::run_acceptance(ids)) {
        std::printf("criterion %d [%s] %s (%.1fs): %s\n", res.id, res.name.c_str(),
                    res.passed ? "PASS" : "FAIL", res.seconds, res.detail.c_str());
        std::fflush(stdout);
        all_passed = all_passed && res.passed;
    }
    return all_passed ? exit_ok : exit_internal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification for the irreducibility and Galois groups of the "
                 "generalized Laguerre polynomials n! L_n^(-1-n-r)(x)"};
    app.require_subcommand(1);

    lagcert::run_config cfg = lagcert::run_config::from_env();
    app.add_option("--workers", cfg.worker_count, "worker threads (0 = all cores)");
    app.add_option("--sieve-limit", cfg.sieve_limit, "largest sieve size allowed");
    app.add_option("--materialization-bound", cfg.materialization_bound,
                   "largest n whose coefficients may be materialized");
    app.add_option("--oracle-modulus-bound", cfg.oracle_modulus_bound,
                   "largest prime modulus for the factor-degree oracle");
    app.add_option("--candidate-cap", cfg.candidate_cap, "max root candidates per instance");
    app.add_option("--precision", cfg.mpfr_precision, "working precision for outward rounding");
    bool trust = cfg.trust_published_fixtures;
    app.add_flag("--trust-published", trust,
                 "resolve degrees in the published range from the published table");
    std::string format = "structured";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"structured", "tabular"}));

    std::string n_str, r_str;
    auto* certify = app.add_subcommand("certify", "irreducibility certificate for one (n, r)");
    certify->add_option("n", n_str, "degree")->required();
    certify->add_option("r", r_str, "parameter")->required();

    unsigned r_lo = 0, r_hi = 0;
    auto* scan = app.add_subcommand("scan", "hard-degree scan over a range of r");
    scan->add_option("r_lo", r_lo, "first r")->required();
    scan->add_option("r_hi", r_hi, "last r")->required();

    std::string gn_str, gr_str;
    auto* galois = app.add_subcommand("galois", "Galois verdict for one (n, r)");
    galois->add_option("n", gn_str, "degree")->required();
    galois->add_option("r", gr_str, "parameter")->required();

    std::vector<std::string> only;
    bool emit_fixtures = false;
    std::string fixtures_dir = "fixtures";
    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--only", only, "criterion ids or names to run")->delimiter(',');
    verify->add_flag("--emit-fixtures", emit_fixtures, "regenerate fixture files and diff them");
    verify->add_option("--fixtures-dir", fixtures_dir, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    cfg.trust_published_fixtures = trust;
    cfg.format = format == "tabular" ? lagcert::output_format::tabular
                                     : lagcert::output_format::structured;
    lagcert::set_global_config(cfg);

    try {
        if (certify->parsed()) return cmd_certify(n_str, r_str);
        if (scan->parsed()) return cmd_scan(r_lo, r_hi);
        if (galois->parsed()) return cmd_galois(gn_str, gr_str);
        return cmd_verify(only, emit_fixtures, fixtures_dir);
    } catch (const lagcert::internal_error& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return exit_internal;
    } catch (const lagcert::resource_error& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return exit_no_result;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_internal;
    }
}
