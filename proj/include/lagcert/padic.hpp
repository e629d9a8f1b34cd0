#ifndef LAGCERT_PADIC_HPP
#define LAGCERT_PADIC_HPP

// p-adic valuations and base-p digit sums, exact over arbitrary-size integers.

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace lagcert {

// nu_p(m), with nu_p(0) = infinity kept as an explicit marker so that callers
// can never confuse it with a large finite valuation.
class valuation_t {
public:
    valuation_t() : inf_(true) {}
    explicit valuation_t(mpz_class v) : inf_(false), v_(std::move(v)) {}
    static valuation_t infinite() { return valuation_t{}; }

    bool is_infinite() const { return inf_; }
    const mpz_class& finite() const {
        if (inf_) throw std::domain_error("valuation: infinite has no finite value");
        return v_;
    }

    friend bool operator==(const valuation_t& a, const valuation_t& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    // infinity compares greater than every finite valuation
    friend bool operator<(const valuation_t& a, const valuation_t& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }

    std::string str() const { return inf_ ? "inf" : v_.get_str(); }

private:
    bool inf_;
    mpz_class v_;
};

// Exponent of p in m; nu_p(0) is infinite. p must be prime (not checked here;
// use the _checked variant at trust boundaries).
valuation_t valuation(const mpz_class& m, const mpz_class& p);
valuation_t valuation_checked(const mpz_class& m, const mpz_class& p);

// Sum of base-p digits of m >= 0. For m >= 1: 1 <= result <= m, with equality
// on the right iff p > m.
mpz_class digit_sum(const mpz_class& m, const mpz_class& p);

// nu_p(m!) = (m - digit_sum(m)) / (p - 1), never materializing m!.
mpz_class factorial_valuation(const mpz_class& m, const mpz_class& p);

// nu_p(binom(m, t)) = (sigma_p(t) + sigma_p(m-t) - sigma_p(m)) / (p - 1);
// counts the base-p carries when adding t and m-t. Requires 0 <= t <= m.
mpz_class binomial_valuation(const mpz_class& m, const mpz_class& t, const mpz_class& p);

// nu_p((r+1)(r+2)...(r+j)) = nu_p((r+j)!) - nu_p(r!).
mpz_class rising_factorial_valuation(const mpz_class& r, const mpz_class& j, const mpz_class& p);

}  // namespace lagcert

#endif
