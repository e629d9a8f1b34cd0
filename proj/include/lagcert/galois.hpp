#ifndef LAGCERT_GALOIS_HPP
#define LAGCERT_GALOIS_HPP

// Galois-side certification: criteria forcing the group to contain the
// alternating group, the discriminant square decision (sign, parity cases,
// kernel pigeonhole), and the asymptotic degree threshold.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lagcert/certify.hpp"
#include "lagcert/glp.hpp"

namespace lagcert {

// Degrees n <= published_max_degree(r) were resolved by external group
// computations; the engine treats them as fixtures, not derivations.
// 23 <= r <= 60.
unsigned published_max_degree(unsigned r);
bool in_published_range(const mpz_class& n, unsigned r);

// The 17 (n, r) pairs in the published range whose group is alternating.
// Everything else there is symmetric.
const std::set<std::pair<unsigned, unsigned>>& alternating_exception_pairs();

// Evidence that the Galois group contains the alternating group, given a
// complete irreducibility certificate. Criteria, tried in this order:
//   size_bound    n >= 48 - r and 3n >= 24 + 5r
//   gap_prime     a prime p with (n+r)/2 < p < n-2
//   large_prime   a prime p with n/2 < p < n-2 and r < p
// Absent only when all three fail.
struct alternating_certificate {
    std::string criterion;
    std::map<std::string, std::string> witness;
};
std::optional<alternating_certificate> contains_alternating(const glp_instance& inst,
                                                            const exclusion_certificate& cert);

// The finite set {n : 3n < 24 + 5r and no prime in ((n+r)/2, n-2)}: the
// degrees the first two criteria cannot reach. Asserts that the published
// range is contained in it.
std::set<mpz_class> gapless_small_degrees(unsigned r);

// Square decision for the discriminant, from its factored form.
struct square_test_result {
    bool is_square;
    squarefree_decomposition decomposition;
};
square_test_result discriminant_square_test(const glp_instance& inst);

// Sign-only shortcut: for n = 2 or 3 mod 4 the discriminant is negative.
struct nonsquare_evidence {
    std::string method;
    std::map<std::string, std::string> witness;
};
std::optional<nonsquare_evidence> parity_shortcut(const glp_instance& inst);

// The full structural decision tree for n outside the published range,
// 23 <= r <= 60. Branches:
//   parity             sign is -1
//   odd_valuation_prime  mixed parity, 2n > 3(r-1): a prime in
//                      ((n+r-1)/2, n) with odd discriminant valuation
//   direct_small       mixed parity, n <= 3(r-1)/2: factored square test
//   window_prime       same parity, n <= 1089: a prime among the odd terms
//                      n+1 (or n+2) .. n+r-1, odd valuation
//   kernel_pigeonhole  same parity, n > 1089: deleting terms divisible by a
//                      kernel prime leaves >= 6 terms that would have to pair
//                      into square products, which cannot happen
// Returns nothing only when every branch is inconclusive; validated never to
// happen in range.
std::optional<nonsquare_evidence> structural_nonsquare(const glp_instance& inst);

// Squarefree kernel of 1 * 3 * 5 * ... * t for odd t >= 1.
mpz_class odd_product_kernel(unsigned long t);

// No two distinct terms of {m+2, m+4, ..., m+t} multiply to a perfect
// square; brute force over all pairs. m odd >= 1, t even >= 2. (The
// structural argument uses this only for m >= 197, t <= 60, where it is a
// proved statement; the checker accepts any legal (m, t) and just reports.)
bool square_product_free(const mpz_class& m, const mpz_class& t);

// Certified integer T(r) >= e^{r (1 + 1.2762/log r)}, outward-rounded at the
// configured precision, r >= 2. Every degree whose prime powers are all <= r
// satisfies n <= r^pi(r) <= T(r); the second inequality is asserted here
// whenever r is within sieve range.
mpz_class asymptotic_threshold(unsigned long r);

// r^pi(r), the bound on degrees all of whose prime powers are <= r.
mpz_class smooth_degree_bound(unsigned long r);

enum class galois_outcome { alternating, symmetric, contains_alternating_only, unknown };

struct galois_verdict_result {
    mpz_class n;
    mpz_class r;
    galois_outcome outcome = galois_outcome::unknown;
    std::vector<std::pair<std::string, std::map<std::string, std::string>>> trace;
    std::optional<bool> square_advisory;  // set when outcome is unknown
    std::string note;
};

// Full decision for 23 <= r <= 60. Outside the published range: complete
// irreducibility, a contains-alternating certificate, the square test, and
// the structural cross-check, combined into alternating/symmetric. Inside
// it: unknown with the square test as advisory, unless the run config says
// to trust the published fixtures.
galois_verdict_result galois_verdict(const glp_instance& inst);

}  // namespace lagcert

#endif
