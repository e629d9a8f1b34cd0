#ifndef LAGCERT_PRIMES_HPP
#define LAGCERT_PRIMES_HPP

// Primality testing, sieving, prime-gap verifiers and the Dusart bound.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace lagcert {

enum class primality { composite, prime, probably_prime };

struct primality_verdict {
    primality kind;
    unsigned witnesses = 0;  // Miller-Rabin rounds carried out
    bool exact() const { return kind != primality::probably_prime; }
};

// Deterministic Miller-Rabin. Schedule "mr-fixed-v1": bases = the first 12
// primes (exact for all m < 3.3e24, hence for everything below 2^64), plus 28
// fixed pseudo-random bases for larger inputs, reported as probably_prime.
// composite verdicts are always exact.
primality_verdict is_prime(const mpz_class& m);
bool is_prime_ui(std::uint64_t m);

// Largest prime <= m (nullopt for m < 2) / smallest prime > m, by stepping
// with is_prime; no sieve needed, any size.
std::optional<mpz_class> prev_prime(const mpz_class& m);
mpz_class next_prime_above(const mpz_class& m);

// Eratosthenes with block-cumulative counts so prime_count is O(1) lookups.
// Construction is single-threaded; a completed sieve is immutable.
class sieve {
public:
    explicit sieve(std::uint64_t limit);  // inclusive
    std::uint64_t limit() const { return limit_; }
    bool contains(std::uint64_t m) const;                 // m <= limit
    std::uint64_t count_up_to(std::uint64_t x) const;     // pi(min(x, limit))
    std::optional<std::uint64_t> next(std::uint64_t m) const;  // least p > m within limit
    std::optional<std::uint64_t> prev(std::uint64_t m) const;  // greatest p <= m
    std::vector<std::uint64_t> to_vector() const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> odd_bits_;  // bit i <-> number 2i+1 is composite
    std::vector<std::uint64_t> cum_;       // primes among odds below each word
    bool odd_composite(std::uint64_t m) const;
};

// All primes <= x. Guarded by the configured sieve limit; beyond it this is an
// explicit resource error, never a truncated answer.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

// pi(x), x within the configured sieve limit.
std::uint64_t prime_count(std::uint64_t x);

// Upper bound (x / log x)(1 + 1.2762 / log x) for pi(x), x > 1, evaluated with
// MPFR directed rounding so the returned rational is a true upper bound.
mpq_class dusart_upper_bound(const mpq_class& x);

// Is there a prime in the interval with the given end openness? Searches the
// local sieve when the range is small, otherwise steps with is_prime.
std::optional<mpz_class> exists_prime_in(const mpz_class& lo, const mpz_class& hi,
                                         bool open_lo, bool open_hi);

// Every run of `window` consecutive positive integers ending at or below
// `limit` contains a prime.
bool verify_window_lemma(std::uint64_t limit = 1148, std::uint64_t window = 20);

enum class hk_variant { six_fifths, eleven_tenths };

// Bertrand-type check on the integer grid: for every integer x in
// [x_lo, x_hi], a prime p with x < p < (6/5)x (variant six_fifths) or
// x < p <= (11/10)x (variant eleven_tenths). Checking the open interval at
// every integer m also covers real x in [m, m+1) (p >= m+1 > x, and the upper
// bound at m is the worst case over that bucket), so the integer grid check
// is the conservative reduction of the real-x statement.
bool verify_harborth_kemnitz(std::uint64_t x_lo, std::uint64_t x_hi, hk_variant variant);

// Deterministic factorization: trial division by sieved primes, then Pollard
// rho (fixed parameter schedule) with Miller-Rabin splitting. Factors above
// 2^64 inherit probably_prime labeling; `exact` reports whether every prime
// factor was certified.
struct factorization {
    std::map<mpz_class, unsigned long> factors;  // prime -> exponent
    bool exact = true;
};
factorization factorize(const mpz_class& m);

}  // namespace lagcert

#endif
