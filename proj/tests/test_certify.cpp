#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

#include "lagcert/certify.hpp"
#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"

using namespace lagcert;

namespace {

mpz_class Z(long v) { return mpz_class(v); }

glp_instance inst(long n, long r) { return glp_instance(Z(n), Z(r)); }

const degree_evidence* find_kind(const exclusion_certificate& cert, evidence_kind k) {
    for (const auto& ev : cert.evidence)
        if (ev.kind == k) return &ev;
    return nullptr;
}

}  // namespace

TEST_CASE("degree split by binomial coprimality") {
    split s = split_n(inst(216, 29));
    CHECK(s.n0 == 1);
    CHECK(s.n1 == 216);
    CHECK(s.exact);
    // nu_2(binom(151, 23)) = 0, so the full power 2^7 lands in n0
    split t = split_n(inst(128, 23));
    CHECK(t.n0 == 128);
    CHECK(t.n1 == 1);
    split u = split_n(inst(1, 40));
    CHECK(u.n0 == 1);
    CHECK(u.n1 == 1);
}

TEST_CASE("factor degree cap") {
    mpz_class huge(1000000);
    CHECK(max_factor_degree(Z(23), huge) == 6);
    CHECK(max_factor_degree(Z(29), huge) == 8);
    CHECK(max_factor_degree(Z(55), huge) == 15);
    CHECK(max_factor_degree(Z(60), huge) == 17);
    CHECK(max_factor_degree(Z(3), huge) == 1);
    CHECK(max_factor_degree(Z(0), huge) == 1);
    CHECK(max_factor_degree(Z(105), huge) == 64);  // second constraint no longer applies
    // the floor(n/2) cap
    CHECK(max_factor_degree(Z(60), Z(8)) == 4);
    CHECK(max_factor_degree(Z(60), Z(5)) == 2);
    CHECK(max_factor_degree(Z(60), Z(3)) == 1);
}

TEST_CASE("admissible residues for large square-root primes") {
    CHECK(admissible_residues(Z(59), Z(60)) == std::set<mpz_class>{Z(58)});
    CHECK(admissible_residues(Z(19), Z(60)) == std::set<mpz_class>{Z(16), Z(17), Z(18)});
    CHECK(admissible_residues(Z(61), Z(60)).empty());
    CHECK(admissible_residues(Z(7), Z(60)) ==
          std::set<mpz_class>{Z(1), Z(2), Z(3), Z(4), Z(5), Z(6)});
    CHECK_THROWS_AS(admissible_residues(Z(1), Z(60)), std::invalid_argument);
}

TEST_CASE("hard degree enumeration") {
    auto h23 = hard_degrees_sorted(23);
    CHECK(h23.size() == 28);
    CHECK(std::is_sorted(h23.begin(), h23.end(),
                         [](const hard_degree& a, const hard_degree& b) { return a.n < b.n; }));
    auto has = [](const std::vector<hard_degree>& v, long n) {
        for (const auto& h : v)
            if (h.n == n) return true;
        return false;
    };
    CHECK(has(h23, 144));
    CHECK_FALSE(has(h23, 216));  // 3^3 = 27 > 23
    CHECK_FALSE(has(h23, 130));  // 13 fails the residue condition
    for (const auto& h : h23) {
        CHECK(h.n > 127);
        mpz_class prod = 1;
        for (const auto& [p, e] : h.factors) {
            mpz_class pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            CHECK(pe <= 23);
            prod *= pe;
        }
        CHECK(prod == h.n);
    }
    CHECK(hard_degrees_sorted(25).size() == 89);
    CHECK(hard_degrees_sorted(29).size() == 156);
    CHECK(hard_degrees_sorted(37).size() == 246);
    auto h60 = hard_degrees_sorted(60);
    CHECK(h60.size() == 2718);
    CHECK(has(h60, 4320));
    CHECK_THROWS_AS(hard_degrees_sorted(22), std::invalid_argument);
    CHECK_THROWS_AS(hard_degrees_sorted(61), std::invalid_argument);
}

TEST_CASE("previous-prime exclusion") {
    auto ev = prev_prime_exclusion(inst(216, 29));
    REQUIRE(ev.has_value());
    CHECK(ev->kind == evidence_kind::prev_prime_gap);
    CHECK(ev->lo == 6);
    CHECK(ev->hi == 108);
    CHECK(ev->witness.at("p") == "211");
    CHECK(ev->witness.at("k_n") == "5");

    auto ev2 = prev_prime_exclusion(inst(4320, 55));
    REQUIRE(ev2.has_value());
    CHECK(ev2->witness.at("p") == "4297");
    CHECK(ev2->witness.at("k_n") == "23");
    CHECK(ev2->lo == 24);
    CHECK(ev2->hi == 2160);

    // prime degree: the gap is zero and everything above 1 dies
    auto ev3 = prev_prime_exclusion(inst(131, 23));
    REQUIRE(ev3.has_value());
    CHECK(ev3->lo == 1);
    CHECK(ev3->hi == 65);

    // r + k_n >= p: no conclusion
    CHECK_FALSE(prev_prime_exclusion(inst(30, 60)).has_value());
}

TEST_CASE("near-prime exclusion") {
    auto ev = near_prime_exclusion(inst(216, 29), Z(5));
    REQUIRE(ev.has_value());
    CHECK(ev->kind == evidence_kind::near_prime);
    CHECK(ev->witness.at("q") == "43");
    CHECK(ev->witness.at("l") == "1");
    CHECK(ev->lo == 2);
    CHECK(ev->hi == 5);

    auto ev2 = near_prime_exclusion(inst(4320, 55), Z(23));
    REQUIRE(ev2.has_value());
    CHECK(ev2->witness.at("q") == "617");
    CHECK(ev2->witness.at("l") == "1");

    CHECK_THROWS_AS(near_prime_exclusion(inst(216, 29), Z(0)), std::invalid_argument);
}

TEST_CASE("single-degree exclusion") {
    // residual pairs admit no cheap argument at degree 1
    CHECK_FALSE(single_degree_exclusion(inst(216, 29), Z(1)).has_value());
    CHECK_FALSE(single_degree_exclusion(inst(144, 23), Z(1)).has_value());
    // (144, 24) closes at degree 1 through p = 5, condition (b)
    auto ev = single_degree_exclusion(inst(144, 24), Z(1));
    REQUIRE(ev.has_value());
    CHECK(ev->kind == evidence_kind::single_degree);
    CHECK(ev->lo == 1);
    CHECK(ev->hi == 1);
    CHECK(ev->witness.at("p") == "5");
    CHECK(ev->witness.at("cond") == "b");
    CHECK_THROWS_AS(single_degree_exclusion(inst(216, 29), Z(0)), std::invalid_argument);
}

TEST_CASE("slope envelope inequality") {
    glp_instance g = inst(216, 29);   // u_3 = 2
    CHECK(slope_envelope_check(g, Z(3), Z(8)));
    CHECK_FALSE(slope_envelope_check(g, Z(3), Z(1)));
    glp_instance h = inst(4320, 55);  // u_3 = 4
    CHECK(slope_envelope_check(h, Z(3), Z(8)));
    CHECK_FALSE(slope_envelope_check(h, Z(3), Z(4)));
    CHECK_THROWS_AS(slope_envelope_check(g, Z(3), Z(0)), std::invalid_argument);
}

TEST_CASE("linear elimination on a tiny instance") {
    linear_elimination lin = eliminate_linear(inst(2, 3));
    CHECK(lin.eliminated);
    CHECK(lin.candidates == std::vector<mpz_class>{Z(2), Z(10)});
    CHECK(lin.roots_found.empty());
    CHECK_FALSE(lin.empty_slope_witness.has_value());
    CHECK(lin.bounded_primes == 1);  // p = 3 closed by the cheap tier
    CHECK(lin.slope_sets.count(Z(2)) == 1);
    CHECK(lin.slope_sets.count(Z(5)) == 1);
}

TEST_CASE("linear elimination finds genuine roots") {
    // n = 1: x + (r+1) really has the root -(r+1)
    linear_elimination lin = eliminate_linear(inst(1, 0));
    CHECK_FALSE(lin.eliminated);
    CHECK(lin.roots_found == std::vector<mpz_class>{Z(1)});
}

TEST_CASE("linear elimination on the residual survivors") {
    linear_elimination a = eliminate_linear(inst(216, 29));
    CHECK(a.eliminated);
    CHECK(a.candidates == std::vector<mpz_class>{Z(30), Z(1470)});
    CHECK(a.roots_found.empty());
    CHECK_FALSE(a.empty_slope_witness.has_value());
    for (long p : {2L, 3L, 5L, 7L}) CHECK(a.slope_sets.count(Z(p)) == 1);

    linear_elimination b = eliminate_linear(inst(4320, 55));
    CHECK(b.eliminated);
    // p = 2 admits no integral slope at all, so no candidate survives assembly
    REQUIRE(b.empty_slope_witness.has_value());
    CHECK(*b.empty_slope_witness == 2);
    CHECK(b.candidates.empty());
    CHECK(b.slope_sets.at(Z(2)).empty());
}

TEST_CASE("full pipeline: base case") {
    exclusion_certificate cert = certify_irreducible(inst(100, 50));
    CHECK(cert.status == certificate_status::complete);
    REQUIRE(cert.evidence.size() == 1);
    CHECK(cert.evidence[0].kind == evidence_kind::base_case);
    CHECK(cert.evidence[0].lo == 1);
    CHECK(cert.evidence[0].hi == 50);
    CHECK(check_certificate(cert));
}

TEST_CASE("full pipeline: unsupported parameters") {
    exclusion_certificate cert = certify_irreducible(inst(10, 200));
    CHECK(cert.status == certificate_status::unsupported);
    CHECK_FALSE(check_certificate(cert));
}

TEST_CASE("full pipeline: divisibility route") {
    // 150 = 2 * 3 * 5^2 is not hard for r = 23 (25 > 23); n0 = 25
    exclusion_certificate cert = certify_irreducible(inst(150, 23));
    CHECK(cert.status == certificate_status::complete);
    const degree_evidence* dv = find_kind(cert, evidence_kind::degree_divisibility);
    REQUIRE(dv != nullptr);
    CHECK(dv->witness.at("n0") == "25");
    CHECK(find_kind(cert, evidence_kind::factor_degree_cap) != nullptr);
    CHECK(check_certificate(cert));
}

TEST_CASE("full pipeline: hard degrees end-to-end") {
    exclusion_certificate a = certify_irreducible(inst(216, 29));
    CHECK(a.status == certificate_status::complete);
    CHECK(find_kind(a, evidence_kind::prev_prime_gap) != nullptr);
    CHECK(find_kind(a, evidence_kind::near_prime) != nullptr);
    const degree_evidence* lr = find_kind(a, evidence_kind::linear_roots);
    REQUIRE(lr != nullptr);
    CHECK(lr->witness.at("candidates") == "30,1470");
    CHECK(check_certificate(a));

    exclusion_certificate b = certify_irreducible(inst(4320, 55));
    CHECK(b.status == certificate_status::complete);
    const degree_evidence* lr2 = find_kind(b, evidence_kind::linear_roots);
    REQUIRE(lr2 != nullptr);
    CHECK(lr2->witness.at("empty_slope_prime") == "2");
    CHECK(check_certificate(b));
}

TEST_CASE("certificate tampering is caught") {
    exclusion_certificate cert = certify_irreducible(inst(216, 29));
    REQUIRE(check_certificate(cert));

    exclusion_certificate bad = cert;
    bad.n = 217;
    CHECK_FALSE(check_certificate(bad));

    exclusion_certificate gap = cert;
    gap.evidence.pop_back();
    CHECK_FALSE(check_certificate(gap));

    exclusion_certificate fake = cert;
    for (auto& ev : fake.evidence)
        if (ev.kind == evidence_kind::prev_prime_gap) ev.witness["p"] = "210";
    CHECK_FALSE(check_certificate(fake));

    exclusion_certificate wide = cert;
    for (auto& ev : wide.evidence)
        if (ev.kind == evidence_kind::prev_prime_gap) ev.hi = ev.hi + 90;
    CHECK_FALSE(check_certificate(wide));
}

TEST_CASE("scan of one offset") {
    scan_report rep = scan_range(26, 26);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].hard_count == 99);
    CHECK(rep.rows[0].residual == std::vector<mpz_class>{Z(144), Z(312), Z(600)});
    REQUIRE(rep.residual_pairs.size() == 3);
    CHECK(rep.residual_pairs[0].first == 144);
    CHECK(rep.residual_pairs[0].second == 26);
    CHECK(rep.all_residuals_eliminated);
    CHECK_THROWS_AS(scan_range(22, 23), std::invalid_argument);
    CHECK_THROWS_AS(scan_range(30, 29), std::invalid_argument);
}

TEST_CASE("modular factor-degree oracle") {
    // the oracle may only ever exclude degrees inside [1, k_max]
    std::set<mpz_class> out = factor_degree_oracle(inst(10, 0), Z(5));
    for (const auto& d : out) {
        CHECK(d >= 1);
        CHECK(d <= 5);
    }
    // deterministic
    CHECK(factor_degree_oracle(inst(10, 0), Z(5)) == out);
    CHECK(factor_degree_oracle(inst(1, 5), Z(4)).empty());

    // needs three usable moduli below the configured bound
    run_config saved = global_config();
    run_config tight = saved;
    tight.oracle_modulus_bound = 100;
    set_global_config(tight);
    CHECK_THROWS_AS(factor_degree_oracle(inst(60, 29), Z(5)), resource_error);
    set_global_config(saved);
}
