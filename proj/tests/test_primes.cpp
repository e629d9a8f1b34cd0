#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <stdexcept>

#include "lagcert/primes.hpp"

using namespace lagcert;

namespace {

mpz_class Z(long v) { return mpz_class(v); }

mpz_class pow2m1(unsigned long e) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 2, e);
    return m - 1;
}

}  // namespace

TEST_CASE("miller-rabin on small and adversarial inputs") {
    CHECK(is_prime(Z(2)).kind == primality::prime);
    CHECK(is_prime(Z(3)).kind == primality::prime);
    CHECK(is_prime(Z(97)).kind == primality::prime);
    CHECK(is_prime(Z(1)).kind == primality::composite);
    CHECK(is_prime(Z(0)).kind == primality::composite);
    CHECK(is_prime(Z(-7)).kind == primality::composite);
    CHECK(is_prime(Z(561)).kind == primality::composite);     // Carmichael
    CHECK(is_prime(Z(3215031751L)).kind == primality::composite);  // strong pseudoprime base 2,3,5,7
    CHECK(is_prime(pow2m1(61)).kind == primality::prime);     // below 2^64: exact
    CHECK(is_prime(pow2m1(61)).exact());
    CHECK(is_prime(pow2m1(67)).kind == primality::composite);  // 2^67-1 = 193707721 * 761838257287
    // above the deterministic range the verdict is labeled, not silently trusted
    primality_verdict m89 = is_prime(pow2m1(89));
    CHECK(m89.kind == primality::probably_prime);
    CHECK_FALSE(m89.exact());
    CHECK(is_prime_ui(18446744073709551557ull));  // largest prime below 2^64
    CHECK_FALSE(is_prime_ui(18446744073709551555ull));
}

TEST_CASE("prev and next prime stepping") {
    CHECK(prev_prime(Z(216)) == Z(211));
    CHECK(prev_prime(Z(4320)) == Z(4297));
    CHECK(prev_prime(Z(2)) == Z(2));
    CHECK(prev_prime(Z(13)) == Z(13));
    CHECK_FALSE(prev_prime(Z(1)).has_value());
    CHECK(next_prime_above(Z(2)) == 3);
    CHECK(next_prime_above(Z(4320)) == 4327);
    CHECK(next_prime_above(Z(0)) == 2);
    // consistency against GMP's own stepping
    for (long m = 1; m <= 500; ++m) {
        mpz_class ref;
        mpz_nextprime(ref.get_mpz_t(), Z(m).get_mpz_t());
        CHECK(next_prime_above(Z(m)) == ref);
    }
}

TEST_CASE("sieve structure") {
    sieve s(100);
    CHECK(s.limit() == 100);
    CHECK(s.contains(2));
    CHECK(s.contains(97));
    CHECK_FALSE(s.contains(1));
    CHECK_FALSE(s.contains(91));  // 7 * 13
    CHECK(s.count_up_to(100) == 25);
    CHECK(s.count_up_to(2) == 1);
    CHECK(s.count_up_to(1) == 0);
    CHECK(s.next(89) == 97);
    CHECK(s.prev(96) == 89);
    CHECK(s.prev(97) == 97);
    CHECK_FALSE(s.next(97).has_value());
    CHECK_FALSE(s.prev(1).has_value());
    auto v = s.to_vector();
    REQUIRE(v.size() == 25);
    CHECK(v.front() == 2);
    CHECK(v.back() == 97);
}

TEST_CASE("sieve agrees with direct primality") {
    sieve s(3000);
    for (std::uint64_t m = 0; m <= 3000; ++m) CHECK(s.contains(m) == is_prime_ui(m));
    CHECK(s.count_up_to(3000) == 430);
    sieve big(10000);
    CHECK(big.count_up_to(10000) == 1229);
    // cumulative counts match a running tally
    std::uint64_t tally = 0;
    for (std::uint64_t m = 0; m <= 3000; ++m) {
        if (s.contains(m)) ++tally;
        CHECK(s.count_up_to(m) == tally);
    }
}

TEST_CASE("prime lists and counting") {
    CHECK(primes_up_to(97).size() == 25);
    CHECK(primes_up_to(1).empty());
    CHECK(prime_count(2) == 1);
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(1148) == 189);
    CHECK(prime_count(61) == 18);
}

TEST_CASE("dusart upper bound dominates pi") {
    mpq_class b100 = dusart_upper_bound(mpq_class(100));
    CHECK(b100 >= 25);
    CHECK(b100 > mpq_class(277, 10));   // true value ~27.73, outward rounding stays close
    CHECK(b100 < mpq_class(278, 10));
    for (std::uint64_t x : {50ull, 1000ull, 10000ull, 100000ull})
        CHECK(dusart_upper_bound(mpq_class(static_cast<unsigned long>(x))) >= prime_count(x));
    CHECK_THROWS_AS(dusart_upper_bound(mpq_class(1)), std::invalid_argument);
}

TEST_CASE("prime-in-interval queries") {
    CHECK(exists_prime_in(Z(24), Z(28), false, false) == std::nullopt);
    CHECK(exists_prime_in(Z(23), Z(23), false, false) == Z(23));
    CHECK(exists_prime_in(Z(23), Z(23), true, true) == std::nullopt);
    CHECK(exists_prime_in(Z(23), Z(29), true, true) == std::nullopt);
    CHECK(exists_prime_in(Z(23), Z(29), true, false) == Z(29));
    // the gap prime for degree 216, offset 29: least prime in (122, 214)
    CHECK(exists_prime_in(Z(122), Z(214), true, true) == Z(127));
    CHECK(exists_prime_in(Z(90), Z(1), false, false) == std::nullopt);
}

TEST_CASE("window lemma checks") {
    CHECK(verify_window_lemma(1148, 20));
    CHECK(verify_window_lemma(30, 10));
    CHECK_FALSE(verify_window_lemma(1148, 1));
    // the gap 113..127 defeats a 7-window but not a 14-window
    CHECK_FALSE(verify_window_lemma(130, 7));
    CHECK(verify_window_lemma(130, 14));
}

TEST_CASE("bertrand-type interval checks") {
    CHECK(verify_harborth_kemnitz(25, 200, hk_variant::six_fifths));
    CHECK_FALSE(verify_harborth_kemnitz(24, 30, hk_variant::six_fifths));
    CHECK_FALSE(verify_harborth_kemnitz(25, 30, hk_variant::eleven_tenths));
    CHECK(verify_harborth_kemnitz(100, 112, hk_variant::eleven_tenths));
    CHECK_FALSE(verify_harborth_kemnitz(113, 113, hk_variant::eleven_tenths));  // 113..124 gap
}

TEST_CASE("factorization") {
    factorization f = factorize(Z(360));
    CHECK(f.exact);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors.at(Z(2)) == 3);
    CHECK(f.factors.at(Z(3)) == 2);
    CHECK(f.factors.at(Z(5)) == 1);

    CHECK(factorize(Z(1)).factors.empty());
    CHECK(factorize(Z(-12)).factors.at(Z(3)) == 1);
    CHECK_THROWS_AS(factorize(Z(0)), std::invalid_argument);

    mpz_class p40(1000003), q40(1000033);
    factorization semi = factorize(p40 * q40);
    CHECK(semi.exact);
    CHECK(semi.factors.at(p40) == 1);
    CHECK(semi.factors.at(q40) == 1);

    mpz_class cube;
    mpz_ui_pow_ui(cube.get_mpz_t(), 3, 40);
    factorization pp = factorize(cube);
    CHECK(pp.exact);
    CHECK(pp.factors.at(Z(3)) == 40);

    // a factor above 2^64 keeps the probable label
    factorization big = factorize(2 * pow2m1(89));
    CHECK_FALSE(big.exact);
    CHECK(big.factors.at(Z(2)) == 1);
    CHECK(big.factors.at(pow2m1(89)) == 1);

    // reassembly round-trip on mixed inputs
    for (long m = 2; m <= 2000; ++m) {
        factorization g = factorize(Z(m));
        mpz_class prod = 1;
        for (const auto& [p, e] : g.factors) {
            mpz_class pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            prod *= pe;
            CHECK(is_prime(p).kind == primality::prime);
        }
        CHECK(prod == m);
        CHECK(g.exact);
    }
}
