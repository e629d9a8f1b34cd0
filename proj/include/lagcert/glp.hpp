#ifndef LAGCERT_GLP_HPP
#define LAGCERT_GLP_HPP

// The generalized Laguerre instance L_n<r>(x) = n! L_n^(-1-n-r)(x):
// coefficients, their p-adic valuations (computable without materializing
// anything), evaluation at negative integers, and Schur's discriminant.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace lagcert {

// The pair (n, r). With b_j = binom(n,j)(r+1)...(r+j), the polynomial is
//   sum_{j=0}^n b_{n-j} x^j
// monic of degree n, constant term b_n = (r+1)...(r+n), all b_j > 0.
struct glp_instance {
    mpz_class n;  // degree, >= 1
    mpz_class r;  // parameter, >= 0
    glp_instance(mpz_class n_, mpz_class r_);
};

// b_j exactly, 0 <= j <= n. Needs n within the materialization bound.
mpz_class coefficient(const glp_instance& inst, const mpz_class& j);

// All of b_0..b_n in one pass via b_j = b_{j-1} (n-j+1)(r+j) / j.
std::vector<mpz_class> coefficients(const glp_instance& inst);

// nu_p(b_j) = binomial_valuation(n,j,p) + rising_factorial_valuation(r,j,p).
// No size bound; this is the path that works for n far beyond materialization.
mpz_class coefficient_valuation(const glp_instance& inst, const mpz_class& j,
                                const mpz_class& p);

// Exact value of the polynomial at x = -a, a >= 1 (Horner over b_0..b_n).
mpz_class evaluate_at_negative_integer(const glp_instance& inst, const mpz_class& a);

// Schur's discriminant prod_{j=2}^n j^j (-1-n-r+j)^{j-1}, signed and exact.
// n = 1 gives 1 by the empty-product convention.
mpz_class discriminant(const glp_instance& inst);

// (-1)^{n(n-1)/2}: negative exactly when n is 2 or 3 mod 4.
int discriminant_sign(const glp_instance& inst);

// nu_p of |discriminant|, i.e. sum_{j=2}^n [ j nu_p(j) + (j-1) nu_p(n+r+1-j) ],
// evaluated with closed-form sums over each prime power p^i so the cost is
// O(log^2) rather than O(n); usable for huge n.
mpz_class discriminant_valuation_profile(const glp_instance& inst, const mpz_class& p);

// sign * prod p^{e_p} with e_p > 0.
struct signed_factorization {
    int sign = 1;
    std::map<mpz_class, unsigned long> factors;
};

// Factored discriminant assembled from the valuation profile, one prime at a
// time up to n+r. Needs n+r within the sieve range, not materialization.
signed_factorization discriminant_factored(const glp_instance& inst);

// m = sign * kernel * square_root_cofactor^2 with kernel positive squarefree.
struct squarefree_decomposition {
    int sign;
    mpz_class kernel;
    mpz_class square_root_cofactor;
    bool is_square() const { return sign > 0 && kernel == 1; }
};

// Factors |m| by trial division over primes <= factor_limit. A remaining
// cofactor is accepted only if certified prime; otherwise this throws rather
// than ever returning a wrong decomposition.
squarefree_decomposition squarefree_part(const mpz_class& m, std::uint64_t factor_limit);

// Same decomposition when the factorization is already known.
squarefree_decomposition squarefree_part(const signed_factorization& f);

}  // namespace lagcert

#endif
