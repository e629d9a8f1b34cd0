#include "lagcert/galois.hpp"

#include <mpfr.h>

#include <stdexcept>

#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"
#include "lagcert/padic.hpp"
#include "lagcert/primes.hpp"

namespace lagcert {

namespace {

void require_supported_r(unsigned r, const char* who) {
    if (r < 23 || r > 60)
        throw std::invalid_argument(std::string(who) + ": r outside the supported range [23, 60]");
}

}  // namespace

unsigned published_max_degree(unsigned r) {
    require_supported_r(r, "published_max_degree");
    if (r <= 28) return 31;
    if (r <= 30) return 33;
    if (r <= 36) return 39;
    if (r <= 40) return 43;
    if (r <= 42) return 45;
    if (r <= 46) return 49;
    if (r <= 52) return 55;
    if (r <= 58) return 61;
    return 63;
}

bool in_published_range(const mpz_class& n, unsigned r) {
    return n <= published_max_degree(r);
}

const std::set<std::pair<unsigned, unsigned>>& alternating_exception_pairs() {
    static const std::set<std::pair<unsigned, unsigned>> pairs = {
        {4, 24},  {5, 28},  {24, 25}, {25, 24}, {28, 23}, {28, 29},
        {32, 33}, {33, 36}, {36, 37}, {40, 41}, {44, 45}, {48, 49},
        {48, 51}, {49, 48}, {49, 50}, {52, 53}, {56, 57}};
    return pairs;
}

std::optional<alternating_certificate> contains_alternating(const glp_instance& inst,
                                                            const exclusion_certificate& cert) {
    if (cert.n != inst.n || cert.r != inst.r || cert.status != certificate_status::complete)
        throw std::invalid_argument(
            "contains_alternating: needs a complete irreducibility certificate for this instance");
    alternating_certificate out;
    if (inst.n + inst.r >= 48 && 3 * inst.n >= 24 + 5 * inst.r) {
        out.criterion = "size_bound";
        return out;
    }
    if (auto p = exists_prime_in((inst.n + inst.r) / 2, inst.n - 2, true, true)) {
        out.criterion = "gap_prime";
        out.witness["p"] = p->get_str();
        return out;
    }
    mpz_class lo = std::max(mpz_class(inst.n / 2), inst.r);
    if (auto p = exists_prime_in(lo, inst.n - 2, true, true)) {
        out.criterion = "large_prime";
        out.witness["p"] = p->get_str();
        return out;
    }
    return std::nullopt;
}

std::set<mpz_class> gapless_small_degrees(unsigned r) {
    require_supported_r(r, "gapless_small_degrees");
    std::set<mpz_class> out;
    for (mpz_class n = 1; 3 * n < 24 + 5 * mpz_class(r); ++n)
        if (!exists_prime_in((n + r) / 2, n - 2, true, true)) out.insert(n);
    for (unsigned n = 1; n <= published_max_degree(r); ++n)
        if (!out.count(n))
            throw internal_error("gapless_small_degrees: published range escapes the set");
    return out;
}

square_test_result discriminant_square_test(const glp_instance& inst) {
    square_test_result out;
    out.decomposition = squarefree_part(discriminant_factored(inst));
    out.is_square = out.decomposition.is_square();
    return out;
}

std::optional<nonsquare_evidence> parity_shortcut(const glp_instance& inst) {
    if (discriminant_sign(inst) > 0) return std::nullopt;
    nonsquare_evidence ev;
    ev.method = "parity";
    ev.witness["n_mod_4"] = mpz_class(inst.n % 4).get_str();
    return ev;
}

mpz_class odd_product_kernel(unsigned long t) {
    if (t % 2 == 0) throw std::invalid_argument("odd_product_kernel: t must be odd");
    mpz_class kernel = 1;
    for (std::uint64_t p : primes_up_to(t)) {
        mpz_class e = 0;
        for (unsigned long m = 1; m <= t; m += 2)
            e += valuation(mpz_class(m), mpz_class(static_cast<unsigned long>(p))).finite();
        if (mpz_odd_p(e.get_mpz_t())) kernel *= mpz_class(static_cast<unsigned long>(p));
    }
    return kernel;
}

namespace {

// the prime appears once in j <= n and once in the range product, so its
// discriminant valuation is p + (n + r - p) = n + r
std::optional<nonsquare_evidence> odd_valuation_prime(const glp_instance& inst) {
    for (mpz_class p = inst.n - 1; 2 * p > inst.n + inst.r - 1; --p) {
        if (is_prime(p).kind == primality::composite) continue;
        mpz_class v = discriminant_valuation_profile(inst, p);
        if (mpz_even_p(v.get_mpz_t()))
            throw internal_error("odd_valuation_prime: valuation came out even");
        nonsquare_evidence ev;
        ev.method = "odd_valuation_prime";
        ev.witness["p"] = p.get_str();
        ev.witness["valuation"] = v.get_str();
        return ev;
    }
    return std::nullopt;
}

}  // namespace

std::optional<nonsquare_evidence> structural_nonsquare(const glp_instance& inst) {
    unsigned r = static_cast<unsigned>(inst.r.get_ui());
    require_supported_r(inst.r.fits_uint_p() ? r : 0, "structural_nonsquare");
    if (in_published_range(inst.n, r))
        throw std::invalid_argument("structural_nonsquare: n is in the published range");
    if (auto ev = parity_shortcut(inst)) return ev;
    bool n_odd = mpz_odd_p(inst.n.get_mpz_t());
    bool r_odd = mpz_odd_p(inst.r.get_mpz_t());
    bool mixed = (n_odd && !r_odd) || (!n_odd && r_odd);
    if (mixed) {
        if (2 * inst.n > 3 * (inst.r - 1)) return odd_valuation_prime(inst);
        square_test_result sq = discriminant_square_test(inst);
        if (sq.is_square) return std::nullopt;
        nonsquare_evidence ev;
        ev.method = "direct_small";
        ev.witness["sign"] = sq.decomposition.sign > 0 ? "1" : "-1";
        ev.witness["kernel"] = sq.decomposition.kernel.get_str();
        return ev;
    }
    mpz_class start = n_odd ? inst.n + 2 : inst.n + 1;
    if (inst.n <= 1089) {
        for (mpz_class p = start; p < inst.n + inst.r; p += 2) {
            if (is_prime(p).kind == primality::composite) continue;
            mpz_class v = discriminant_valuation_profile(inst, p);
            if (mpz_even_p(v.get_mpz_t()))
                throw internal_error("window_prime: valuation came out even");
            nonsquare_evidence ev;
            ev.method = "window_prime";
            ev.witness["p"] = p.get_str();
            ev.witness["valuation"] = v.get_str();
            return ev;
        }
        return std::nullopt;
    }
    unsigned long t = r_odd ? r : r - 1;
    mpz_class kernel = odd_product_kernel(t);
    unsigned long span = r_odd ? r - 3 : r - 2;
    unsigned long terms = r_odd ? (r - 1) / 2 : r / 2;
    unsigned long deleted = 0;
    for (std::uint64_t p : primes_up_to(r)) {
        if (p < 7) continue;
        if (!mpz_divisible_ui_p(kernel.get_mpz_t(), p)) continue;
        deleted += span / (2 * p) + 1;
    }
    if (terms < deleted + 6)
        throw internal_error("kernel_pigeonhole: fewer than 6 surviving terms");
    nonsquare_evidence ev;
    ev.method = "kernel_pigeonhole";
    ev.witness["kernel"] = kernel.get_str();
    ev.witness["terms"] = std::to_string(terms);
    ev.witness["deleted"] = std::to_string(deleted);
    ev.witness["survivors"] = std::to_string(terms - deleted);
    return ev;
}

bool square_product_free(const mpz_class& m, const mpz_class& t) {
    if (m < 1 || mpz_even_p(m.get_mpz_t()))
        throw std::invalid_argument("square_product_free: m must be odd and positive");
    if (t < 2 || mpz_odd_p(t.get_mpz_t()))
        throw std::invalid_argument("square_product_free: t must be even and at least 2");
    std::vector<mpz_class> terms;
    for (mpz_class a = m + 2; a <= m + t; a += 2) terms.push_back(a);
    mpz_class prod;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            prod = terms[i] * terms[j];
            if (mpz_perfect_square_p(prod.get_mpz_t())) return false;
        }
    return true;
}

mpz_class smooth_degree_bound(unsigned long r) {
    if (r < 2) throw std::invalid_argument("smooth_degree_bound: r must be at least 2");
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), r, prime_count(r));
    return out;
}

mpz_class asymptotic_threshold(unsigned long r) {
    if (r < 2) throw std::invalid_argument("asymptotic_threshold: r must be at least 2");
    mpfr_prec_t prec = global_config().mpfr_precision;
    mpfr_t lg, acc;
    mpfr_init2(lg, prec);
    mpfr_init2(acc, prec);
    mpfr_set_ui(lg, r, MPFR_RNDD);
    mpfr_log(lg, lg, MPFR_RNDD);  // lower bound of log r keeps the quotient an upper bound
    mpq_class c(12762, 10000);
    c.canonicalize();
    mpfr_set_q(acc, c.get_mpq_t(), MPFR_RNDU);
    mpfr_div(acc, acc, lg, MPFR_RNDU);
    mpfr_add_ui(acc, acc, 1, MPFR_RNDU);
    mpfr_mul_ui(acc, acc, r, MPFR_RNDU);
    mpfr_exp(acc, acc, MPFR_RNDU);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), acc, MPFR_RNDU);
    mpfr_clear(lg);
    mpfr_clear(acc);
    if (r <= 1000000 && r <= global_config().sieve_limit && smooth_degree_bound(r) > out)
        throw internal_error("asymptotic_threshold: smooth-degree bound exceeds the threshold");
    return out;
}

galois_verdict_result galois_verdict(const glp_instance& inst) {
    if (!inst.r.fits_uint_p())
        throw std::invalid_argument("galois_verdict: r outside the supported range [23, 60]");
    unsigned r = static_cast<unsigned>(inst.r.get_ui());
    require_supported_r(r, "galois_verdict");
    galois_verdict_result out;
    out.n = inst.n;
    out.r = inst.r;
    if (inst.n == 1) {
        out.outcome = galois_outcome::alternating;
        out.trace.emplace_back("degenerate", std::map<std::string, std::string>{});
        out.note = "degree 1: the group is trivial";
        return out;
    }
    if (in_published_range(inst.n, r)) {
        square_test_result sq = discriminant_square_test(inst);
        bool listed = alternating_exception_pairs().count(
                          {static_cast<unsigned>(inst.n.get_ui()), r}) > 0;
        if (listed != sq.is_square)
            throw internal_error("galois_verdict: exception list disagrees with the square test");
        if (global_config().trust_published_fixtures) {
            out.outcome = listed ? galois_outcome::alternating : galois_outcome::symmetric;
            out.trace.emplace_back("published_table",
                                   std::map<std::string, std::string>{{"source", "external"}});
            out.note = "resolved from the published table of externally computed groups";
            return out;
        }
        out.outcome = galois_outcome::unknown;
        out.square_advisory = sq.is_square;
        out.note = "external Galois computation required for this degree";
        return out;
    }
    exclusion_certificate cert = certify_irreducible(inst);
    if (cert.status != certificate_status::complete)
        throw internal_error("galois_verdict: irreducibility pipeline incomplete off the published range");
    out.trace.emplace_back("irreducible",
                           std::map<std::string, std::string>{{"status", "complete"}});
    auto anc = contains_alternating(inst, cert);
    if (!anc)
        throw internal_error("galois_verdict: no contains-alternating criterion applies");
    out.trace.emplace_back(anc->criterion, anc->witness);
    square_test_result sq = discriminant_square_test(inst);
    out.trace.emplace_back("square_test",
                           std::map<std::string, std::string>{
                               {"square", sq.is_square ? "1" : "0"},
                               {"kernel", sq.decomposition.kernel.get_str()}});
    auto structural = structural_nonsquare(inst);
    if (!structural)
        throw internal_error("galois_verdict: structural square decision inconclusive in range");
    if (sq.is_square)
        throw internal_error("galois_verdict: square test contradicts the structural argument");
    out.trace.emplace_back(structural->method, structural->witness);
    out.outcome = galois_outcome::symmetric;
    return out;
}

}  // namespace lagcert
