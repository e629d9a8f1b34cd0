#include "lagcert/padic.hpp"

#include "lagcert/primes.hpp"

namespace lagcert {

namespace {

void require_p(const mpz_class& p) {
    if (p < 2) throw std::invalid_argument("p must be >= 2, got " + p.get_str());
}

}  // namespace

valuation_t valuation(const mpz_class& m, const mpz_class& p) {
    require_p(p);
    if (m == 0) return valuation_t::infinite();
    mpz_class abs_m = abs(m), rem;
    mp_bitcnt_t k = mpz_remove(rem.get_mpz_t(), abs_m.get_mpz_t(), p.get_mpz_t());
    return valuation_t(mpz_class(static_cast<unsigned long>(k)));
}

valuation_t valuation_checked(const mpz_class& m, const mpz_class& p) {
    if (p < 2 || is_prime(p).kind == primality::composite)
        throw std::invalid_argument("valuation: p is not prime: " + p.get_str());
    return valuation(m, p);
}

mpz_class digit_sum(const mpz_class& m, const mpz_class& p) {
    require_p(p);
    if (m < 0) throw std::invalid_argument("digit_sum: negative m");
    if (p == 2) {
        // popcount; digits base 2 are the bits
        return mpz_class(static_cast<unsigned long>(mpz_popcount(m.get_mpz_t())));
    }
    mpz_class s = 0, q = m, d;
    while (q != 0) {
        mpz_fdiv_qr(q.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        s += d;
    }
    return s;
}

mpz_class factorial_valuation(const mpz_class& m, const mpz_class& p) {
    require_p(p);
    if (m < 0) throw std::invalid_argument("factorial_valuation: negative m");
    mpz_class num = m - digit_sum(m, p);
    mpz_class out;
    mpz_class pm1 = p - 1;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), pm1.get_mpz_t());
    return out;
}

mpz_class binomial_valuation(const mpz_class& m, const mpz_class& t, const mpz_class& p) {
    require_p(p);
    if (t < 0 || t > m) throw std::invalid_argument("binomial_valuation: need 0 <= t <= m");
    mpz_class num = digit_sum(t, p) + digit_sum(m - t, p) - digit_sum(m, p);
    mpz_class out;
    mpz_class pm1 = p - 1;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), pm1.get_mpz_t());
    return out;
}

mpz_class rising_factorial_valuation(const mpz_class& r, const mpz_class& j, const mpz_class& p) {
    require_p(p);
    if (r < 0 || j < 0) throw std::invalid_argument("rising_factorial_valuation: need r >= 0, j >= 0");
    return factorial_valuation(r + j, p) - factorial_valuation(r, p);
}

}  // namespace lagcert
