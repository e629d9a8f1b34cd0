#ifndef LAGCERT_CERTIFY_HPP
#define LAGCERT_CERTIFY_HPP

// The irreducibility pipeline: factor-degree caps, enumeration of the hard
// degrees (everything not dismissed by the divisibility shortcut), a ladder of
// exclusion arguments driven by prime gaps and slope bounds, linear-root
// elimination through integral polygon slopes, and an independent modular
// factor-degree oracle for cross-checking.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lagcert/glp.hpp"

namespace lagcert {

// n = n0 * n1 where n0 collects the prime powers of n whose prime does not
// divide binom(n+r, r). Every factor of the polynomial has degree divisible
// by n0, which kills most degrees outright when n0 > 1.
struct split {
    mpz_class n0;
    mpz_class n1;
    bool exact = true;  // false when a prime factor of n is only probable
};
split split_n(const glp_instance& inst);

// Largest degree k >= 2 a proper factor can have, given r: a degree-k factor
// with k >= 2 forces 100r > 163k, and for r <= 104 also 100r > 342k + 100.
// Returns 1 when no k >= 2 passes. Capped at floor(n/2).
mpz_class max_factor_degree(const mpz_class& r, const mpz_class& n);

// Residues d mod p that n/p must hit when p | n, p^2 > r, and p divides
// binom(n+r, r): d in {p-1, ..., p - floor(r/p)}. Empty when floor(r/p) = 0,
// meaning such p cannot occur at all.
std::set<mpz_class> admissible_residues(const mpz_class& p, const mpz_class& r);

// A degree the divisibility shortcut cannot dismiss: n > 127, every prime
// power p^{e_p} of n is <= r, and every prime factor p > floor(100(r-1)/342)
// satisfies (n/p mod p) + floor(r/p) >= p.
struct hard_degree {
    mpz_class n;
    std::map<mpz_class, unsigned long> factors;
};

// Emits exactly the hard degrees for this r. Depth-first over primes <= r in
// descending order, exponent 0 before ascending powers, residue conditions
// checked at the leaves; the emission order is that traversal, not sorted.
void enumerate_hard_degrees(unsigned r, const std::function<void(const hard_degree&)>& sink);
std::vector<hard_degree> hard_degrees_sorted(unsigned r);

enum class evidence_kind {
    base_case,            // published irreducibility for n <= 127, r <= 103
    degree_divisibility,  // every factor degree divisible by n0
    factor_degree_cap,    // max_factor_degree bound (degrees >= 2 only)
    prev_prime_gap,       // p = largest prime <= n kills degrees above n - p
    near_prime,           // large prime divisor of n - l kills [l+1, k_n]
    single_degree,        // slope conditions at one degree i
    linear_roots,         // candidate set built from integral slopes, evaluated
    oracle_only           // modular cross-check only, never primary
};

// One evidence entry covering the inclusive degree range [lo, hi]. The
// witness map carries everything needed to re-check the entry without
// re-running any search; keys are kind-specific and fixed by the report
// format (see report.cpp).
struct degree_evidence {
    evidence_kind kind;
    mpz_class lo;
    mpz_class hi;
    std::map<std::string, std::string> witness;
};

enum class certificate_status { complete, residual, unsupported };

struct exclusion_certificate {
    mpz_class n;
    mpz_class r;
    certificate_status status = certificate_status::unsupported;
    std::vector<degree_evidence> evidence;
    std::vector<mpz_class> uncovered;  // degrees left open (residual only)
    std::string note;
};

// Replays every evidence entry from its stored witnesses and verifies the
// ranges cover [1, floor(n/2)]. Throws nothing; false means the certificate
// does not stand on its own.
bool check_certificate(const exclusion_certificate& cert);

// p = largest prime <= n (n >= 2). When r + (n - p) < p, no factor has
// degree above k_n = n - p. Stores p, k_n and the primality strength.
std::optional<degree_evidence> prev_prime_exclusion(const glp_instance& inst);

// Least l in [1, k_n] such that some prime q | (n - l) has q > k_n and
// nu_q(binom(n+r, r)) = 0; that q kills every degree in [l+1, k_n].
std::optional<degree_evidence> near_prime_exclusion(const glp_instance& inst,
                                                    const mpz_class& k_n);

// No factor of degree exactly i, certified by a prime p dividing
// n(n-1)...(n-i+1) (r+1)...(r+i) with either (a) u = 0 and p > i, or
// (b) u > 0, p > 2 and max{(u+1)/p, (nu_p(n+r-z0) - nu_p(n))/(z0+1)} < 1/i,
// where u = nu_p(binom(n+r, r)) and z0 = (n+r) mod p. Primes are tried in
// descending order, condition (a) before (b); the first hit is stored.
std::optional<degree_evidence> single_degree_exclusion(const glp_instance& inst,
                                                       const mpz_class& i);

// True when (p-1) nu_p(binom(n+r, r)) < (p-2) j + sigma_p(j), which makes
// the closed-form envelope for mu_j drop below 1 at this j and all larger j.
bool slope_envelope_check(const glp_instance& inst, const mpz_class& p, const mpz_class& j);

// Linear-root elimination. For every prime p <= n+r the valuation of a root
// candidate a must be an integral slope of the polygon at p; primes certified
// slope-free by closed bounds contribute only the zero exponent, the rest get
// exact polygons. Candidates are all products prod p^{e_p}; each is tested by
// exact evaluation at -a.
struct linear_elimination {
    bool eliminated = false;
    std::vector<mpz_class> candidates;   // ascending; empty is a valid outcome
    std::vector<mpz_class> roots_found;  // nonempty would disprove irreducibility
    std::optional<mpz_class> empty_slope_witness;  // prime admitting no exponent
    std::map<mpz_class, std::set<unsigned long>> slope_sets;  // exact polygons built
    std::uint64_t bounded_primes = 0;    // primes closed by the cheap tier
};
linear_elimination eliminate_linear(const glp_instance& inst);

// The full pipeline for one instance: base case for n <= 127 and r <= 103,
// the ladder for 23 <= r <= 60, Unsupported otherwise.
exclusion_certificate certify_irreducible(const glp_instance& inst);

struct scan_row {
    unsigned r;
    std::uint64_t hard_count = 0;
    std::vector<mpz_class> residual;  // hard degrees needing full linear elimination
};

struct scan_report {
    unsigned r_lo = 0;
    unsigned r_hi = 0;
    std::vector<scan_row> rows;
    std::vector<std::pair<mpz_class, unsigned>> residual_pairs;  // (n, r), r-major order
    bool all_residuals_eliminated = false;
};

// Runs the ladder over every hard degree for each r in [r_lo, r_hi], then
// eliminates the residual pairs by candidate evaluation. Deterministic
// regardless of worker count.
scan_report scan_range(unsigned r_lo, unsigned r_hi);

// Independent cross-check: factors the polynomial modulo several primes
// exceeding n + r (so none divides the discriminant), intersects the
// achievable factor-degree subset sums, and returns every degree in
// [1, k_max] provably unachievable. Sound but deliberately incomplete.
std::set<mpz_class> factor_degree_oracle(const glp_instance& inst, const mpz_class& k_max);

}  // namespace lagcert

#endif
