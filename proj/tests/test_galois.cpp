#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "lagcert/certify.hpp"
#include "lagcert/config.hpp"
#include "lagcert/galois.hpp"
#include "lagcert/glp.hpp"
#include "lagcert/primes.hpp"

using namespace lagcert;

namespace {

mpz_class Z(long v) { return mpz_class(v); }

glp_instance inst(long n, long r) { return glp_instance(Z(n), Z(r)); }

mpz_class prod(const std::vector<long>& ps) {
    mpz_class out = 1;
    for (long p : ps) out *= p;
    return out;
}

}  // namespace

TEST_CASE("published degree table") {
    CHECK(published_max_degree(23) == 31);
    CHECK(published_max_degree(28) == 31);
    CHECK(published_max_degree(29) == 33);
    CHECK(published_max_degree(36) == 39);
    CHECK(published_max_degree(40) == 43);
    CHECK(published_max_degree(42) == 45);
    CHECK(published_max_degree(46) == 49);
    CHECK(published_max_degree(52) == 55);
    CHECK(published_max_degree(58) == 61);
    CHECK(published_max_degree(60) == 63);
    for (unsigned r = 24; r <= 60; ++r)
        CHECK(published_max_degree(r) >= published_max_degree(r - 1));
    CHECK_THROWS_AS(published_max_degree(22), std::invalid_argument);
    CHECK_THROWS_AS(published_max_degree(61), std::invalid_argument);

    CHECK(in_published_range(Z(31), 23));
    CHECK_FALSE(in_published_range(Z(32), 23));
    CHECK(in_published_range(Z(1), 23));
}

TEST_CASE("alternating exceptions in the published range") {
    const auto& exc = alternating_exception_pairs();
    std::set<std::pair<unsigned, unsigned>> want = {
        {4, 24},  {5, 28},  {24, 25}, {25, 24}, {28, 23}, {28, 29},
        {32, 33}, {33, 36}, {36, 37}, {40, 41}, {44, 45}, {48, 49},
        {48, 51}, {49, 48}, {49, 50}, {52, 53}, {56, 57}};
    CHECK(exc == want);
    for (const auto& [n, r] : exc) CHECK(in_published_range(Z(static_cast<long>(n)), r));
}

TEST_CASE("discriminant square test agrees with the exception table") {
    CHECK(discriminant_square_test(inst(4, 24)).is_square);
    CHECK(discriminant_square_test(inst(25, 24)).is_square);
    CHECK(discriminant_square_test(inst(5, 28)).is_square);
    CHECK(discriminant_square_test(inst(56, 57)).is_square);
    CHECK_FALSE(discriminant_square_test(inst(2, 3)).is_square);
    CHECK_FALSE(discriminant_square_test(inst(6, 23)).is_square);
    CHECK_FALSE(discriminant_square_test(inst(28, 24)).is_square);
    // the decomposition reassembles to the discriminant
    square_test_result sq = discriminant_square_test(inst(5, 28));
    mpz_class back = sq.decomposition.sign * sq.decomposition.kernel *
                     sq.decomposition.square_root_cofactor *
                     sq.decomposition.square_root_cofactor;
    CHECK(back == discriminant(inst(5, 28)));
}

TEST_CASE("parity shortcut") {
    auto e6 = parity_shortcut(inst(6, 30));
    REQUIRE(e6.has_value());
    CHECK(e6->method == "parity");
    CHECK(e6->witness.at("n_mod_4") == "2");
    CHECK(parity_shortcut(inst(7, 30)).has_value());
    CHECK_FALSE(parity_shortcut(inst(8, 30)).has_value());
    CHECK_FALSE(parity_shortcut(inst(9, 30)).has_value());
}

TEST_CASE("degrees out of reach of the prime criteria") {
    std::set<mpz_class> c23 = gapless_small_degrees(23);
    for (long n = 2; n <= 31; ++n) CHECK(c23.count(Z(n)) == 1);
    CHECK(c23.count(Z(32)) == 0);
    for (const auto& n : c23) CHECK(3 * n < 139);

    std::set<mpz_class> c60 = gapless_small_degrees(60);
    CHECK(c60.count(Z(64)) == 1);  // the interval (62, 62) is empty
    CHECK(c60.count(Z(100)) == 0); // 83 sits in (80, 98)
}

TEST_CASE("contains-alternating criteria in order") {
    exclusion_certificate c216 = certify_irreducible(inst(216, 29));
    auto a = contains_alternating(inst(216, 29), c216);
    REQUIRE(a.has_value());
    CHECK(a->criterion == "size_bound");

    exclusion_certificate c100 = certify_irreducible(inst(100, 60));
    auto b = contains_alternating(inst(100, 60), c100);
    REQUIRE(b.has_value());
    CHECK(b->criterion == "gap_prime");
    CHECK(b->witness.at("p") == "83");

    exclusion_certificate c64 = certify_irreducible(inst(64, 60));
    auto c = contains_alternating(inst(64, 60), c64);
    REQUIRE(c.has_value());
    CHECK(c->criterion == "large_prime");
    CHECK(c->witness.at("p") == "61");

    exclusion_certificate c30 = certify_irreducible(inst(30, 60));
    CHECK_FALSE(contains_alternating(inst(30, 60), c30).has_value());

    // certificate must match the instance and be complete
    CHECK_THROWS_AS(contains_alternating(inst(99, 60), c100), std::invalid_argument);
    exclusion_certificate unsup = certify_irreducible(inst(10, 200));
    CHECK_THROWS_AS(contains_alternating(inst(10, 200), unsup), std::invalid_argument);
}

TEST_CASE("structural nonsquare branches") {
    auto parity = structural_nonsquare(inst(34, 23));
    REQUIRE(parity.has_value());
    CHECK(parity->method == "parity");

    auto ovp = structural_nonsquare(inst(37, 24));
    REQUIRE(ovp.has_value());
    CHECK(ovp->method == "odd_valuation_prime");
    CHECK(ovp->witness.at("p") == "31");
    CHECK(ovp->witness.at("valuation") == "61");

    auto direct = structural_nonsquare(inst(33, 24));
    REQUIRE(direct.has_value());
    CHECK(direct->method == "direct_small");

    auto window = structural_nonsquare(inst(41, 23));
    REQUIRE(window.has_value());
    CHECK(window->method == "window_prime");
    CHECK(window->witness.at("p") == "43");
    CHECK(window->witness.at("valuation") == "21");

    auto window2 = structural_nonsquare(inst(64, 60));
    REQUIRE(window2.has_value());
    CHECK(window2->method == "window_prime");
    CHECK(window2->witness.at("p") == "67");

    auto pigeon = structural_nonsquare(inst(1093, 27));
    REQUIRE(pigeon.has_value());
    CHECK(pigeon->method == "kernel_pigeonhole");
    CHECK(pigeon->witness.at("terms") == "13");
    CHECK(pigeon->witness.at("deleted") == "6");
    CHECK(pigeon->witness.at("survivors") == "7");

    // inside the published range the structural tree must not be consulted
    CHECK_THROWS_AS(structural_nonsquare(inst(28, 23)), std::invalid_argument);
}

TEST_CASE("odd product kernels") {
    CHECK(odd_product_kernel(1) == 1);
    CHECK(odd_product_kernel(3) == 3);
    CHECK(odd_product_kernel(5) == 15);
    CHECK(odd_product_kernel(9) == 105);
    CHECK(odd_product_kernel(15) == 1001);  // 7 * 11 * 13
    CHECK_THROWS_AS(odd_product_kernel(4), std::invalid_argument);
    CHECK_THROWS_AS(odd_product_kernel(0), std::invalid_argument);

    // brute-force cross-check
    for (unsigned long t = 1; t <= 99; t += 2) {
        mpz_class m = 1, kernel = 1;
        for (unsigned long x = 1; x <= t; x += 2) m *= x;
        for (long p = 3; p <= 99; p += 2) {
            if (!is_prime_ui(p)) continue;
            mpz_class rem;
            unsigned long e = mpz_remove(rem.get_mpz_t(), m.get_mpz_t(), Z(p).get_mpz_t());
            if (e % 2 == 1) kernel *= p;
        }
        CHECK(odd_product_kernel(t) == kernel);
    }

    // the kernels the pigeonhole branch relies on, per offset
    CHECK(odd_product_kernel(23) == prod({3, 11, 13, 17, 19, 23}));
    CHECK(odd_product_kernel(25) == prod({3, 11, 13, 17, 19, 23}));
    CHECK(odd_product_kernel(27) == prod({11, 13, 17, 19, 23}));
    CHECK(odd_product_kernel(29) == prod({11, 13, 17, 19, 23, 29}));
    CHECK(odd_product_kernel(31) == prod({11, 13, 17, 19, 23, 29, 31}));
    CHECK(odd_product_kernel(33) == prod({3, 13, 17, 19, 23, 29, 31}));
    CHECK(odd_product_kernel(35) == prod({3, 5, 7, 13, 17, 19, 23, 29, 31}));
    CHECK(odd_product_kernel(37) == prod({3, 5, 7, 13, 17, 19, 23, 29, 31, 37}));
    CHECK(odd_product_kernel(39) == prod({5, 7, 17, 19, 23, 29, 31, 37}));
    CHECK(odd_product_kernel(41) == prod({5, 7, 17, 19, 23, 29, 31, 37, 41}));
    CHECK(odd_product_kernel(43) == prod({5, 7, 17, 19, 23, 29, 31, 37, 41, 43}));
    CHECK(odd_product_kernel(45) == prod({7, 17, 19, 23, 29, 31, 37, 41, 43}));
    CHECK(odd_product_kernel(47) == prod({7, 17, 19, 23, 29, 31, 37, 41, 43, 47}));
    CHECK(odd_product_kernel(49) == prod({7, 17, 19, 23, 29, 31, 37, 41, 43, 47}));
    CHECK(odd_product_kernel(51) == prod({3, 7, 19, 23, 29, 31, 37, 41, 43, 47}));
    CHECK(odd_product_kernel(53) == prod({3, 7, 19, 23, 29, 31, 37, 41, 43, 47, 53}));
    CHECK(odd_product_kernel(55) == prod({3, 5, 7, 11, 19, 23, 29, 31, 37, 41, 43, 47, 53}));
    CHECK(odd_product_kernel(57) == prod({5, 7, 11, 23, 29, 31, 37, 41, 43, 47, 53}));
    CHECK(odd_product_kernel(59) == prod({5, 7, 11, 23, 29, 31, 37, 41, 43, 47, 53, 59}));
}

TEST_CASE("square-free products over shifted odd windows") {
    CHECK(square_product_free(Z(197), Z(60)));
    CHECK(square_product_free(Z(195), Z(4)));
    CHECK(square_product_free(Z(1), Z(8)));
    CHECK_FALSE(square_product_free(Z(7), Z(18)));  // 9 * 25 = 15^2
    CHECK_THROWS_AS(square_product_free(Z(2), Z(4)), std::invalid_argument);
    CHECK_THROWS_AS(square_product_free(Z(3), Z(3)), std::invalid_argument);
    CHECK_THROWS_AS(square_product_free(Z(-3), Z(4)), std::invalid_argument);
}

TEST_CASE("asymptotic threshold") {
    CHECK(asymptotic_threshold(2) == 294);
    mpz_class t61 = asymptotic_threshold(61);
    CHECK(t61 >= smooth_degree_bound(61));
    mpz_class want;
    mpz_ui_pow_ui(want.get_mpz_t(), 61, 18);
    CHECK(smooth_degree_bound(61) == want);
    CHECK(smooth_degree_bound(2) == 2);
    CHECK(asymptotic_threshold(10) > 5600000);
    CHECK(asymptotic_threshold(10) < 5700000);
    mpz_class prev = asymptotic_threshold(2);
    for (unsigned long r = 3; r <= 120; ++r) {
        mpz_class cur = asymptotic_threshold(r);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(asymptotic_threshold(1), std::invalid_argument);
}

TEST_CASE("full verdicts") {
    galois_verdict_result sym = galois_verdict(inst(100, 29));
    CHECK(sym.outcome == galois_outcome::symmetric);
    CHECK_FALSE(sym.square_advisory.has_value());
    bool saw_size = false;
    for (const auto& [name, w] : sym.trace)
        if (name == "size_bound") saw_size = true;
    CHECK(saw_size);

    galois_verdict_result sym2 = galois_verdict(inst(64, 60));
    CHECK(sym2.outcome == galois_outcome::symmetric);

    galois_verdict_result degen = galois_verdict(inst(1, 30));
    CHECK(degen.outcome == galois_outcome::alternating);

    // inside the published range: fixtures decide only when trusted
    galois_verdict_result unk = galois_verdict(inst(28, 23));
    CHECK(unk.outcome == galois_outcome::unknown);
    REQUIRE(unk.square_advisory.has_value());
    CHECK(*unk.square_advisory);
    CHECK_FALSE(unk.note.empty());

    run_config saved = global_config();
    run_config trusting = saved;
    trusting.trust_published_fixtures = true;
    set_global_config(trusting);
    CHECK(galois_verdict(inst(28, 23)).outcome == galois_outcome::alternating);
    CHECK(galois_verdict(inst(26, 24)).outcome == galois_outcome::symmetric);
    set_global_config(saved);

    CHECK_THROWS_AS(galois_verdict(inst(10, 22)), std::invalid_argument);
    CHECK_THROWS_AS(galois_verdict(inst(10, 61)), std::invalid_argument);
}

TEST_CASE("verdict for the hardest pair") {
    galois_verdict_result v = galois_verdict(inst(4320, 55));
    CHECK(v.outcome == galois_outcome::symmetric);
    bool saw_irreducible = false;
    for (const auto& [name, w] : v.trace)
        if (name == "irreducible") saw_irreducible = true;
    CHECK(saw_irreducible);
}
