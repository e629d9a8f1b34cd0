#include "lagcert/primes.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"

namespace lagcert {

namespace {

constexpr unsigned long fixed_bases[12] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
// Exactness threshold for the 12-prime base set (Sorenson-Webster); 2^64 is
// far below it, and we only claim exactness below 2^64 anyway.
constexpr unsigned extra_rounds = 28;

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// one strong-probable-prime round; false means m is certainly composite
bool sprp_round(const mpz_class& m, const mpz_class& m1, const mpz_class& d,
                unsigned long s, const mpz_class& base) {
    mpz_class a = base % m;
    if (a == 0) return true;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (x == 1 || x == m1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % m;
        if (x == m1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace

primality_verdict is_prime(const mpz_class& m) {
    if (m < 2) return {primality::composite, 0};
    for (unsigned long p : fixed_bases) {
        if (m == p) return {primality::prime, 0};
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return {primality::composite, 0};
    }
    mpz_class m1 = m - 1, d = m1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    unsigned rounds = 0;
    for (unsigned long b : fixed_bases) {
        ++rounds;
        if (!sprp_round(m, m1, d, s, mpz_class(b))) return {primality::composite, rounds};
    }
    if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 64) return {primality::prime, rounds};
    std::uint64_t seed = 0x1a62b0c5u;  // fixed schedule: reproducible across runs
    for (unsigned i = 0; i < extra_rounds; ++i) {
        ++rounds;
        mpz_class b = mpz_class(splitmix64(seed) | 2u);
        if (!sprp_round(m, m1, d, s, b)) return {primality::composite, rounds};
    }
    return {primality::probably_prime, rounds};
}

bool is_prime_ui(std::uint64_t m) { return is_prime(mpz_class(static_cast<unsigned long>(m))).kind == primality::prime; }

std::optional<mpz_class> prev_prime(const mpz_class& m) {
    if (m < 2) return std::nullopt;
    if (m == 2) return mpz_class(2);
    mpz_class c = m;
    if (mpz_even_p(c.get_mpz_t())) --c;
    for (; c >= 3; c -= 2)
        if (is_prime(c).kind != primality::composite) return c;
    return mpz_class(2);
}

mpz_class next_prime_above(const mpz_class& m) {
    if (m < 2) return mpz_class(2);
    mpz_class c = m + 1;
    if (mpz_even_p(c.get_mpz_t())) ++c;
    for (;; c += 2)
        if (is_prime(c).kind != primality::composite) return c;
}

// ---------------------------------------------------------------- sieve

sieve::sieve(std::uint64_t limit) : limit_(limit) {
    std::uint64_t n_odds = limit_ / 2 + 1;  // odd numbers 1,3,...,<=limit
    odd_bits_.assign((n_odds + 63) / 64, 0);
    auto set_composite = [&](std::uint64_t idx) { odd_bits_[idx >> 6] |= 1ull << (idx & 63); };
    set_composite(0);  // 1
    for (std::uint64_t p = 3; p * p <= limit_; p += 2) {
        if (odd_bits_[(p >> 1) >> 6] >> ((p >> 1) & 63) & 1) continue;
        for (std::uint64_t q = p * p; q <= limit_; q += 2 * p) set_composite(q >> 1);
    }
    // clear padding bits past the last valid odd index so popcounts are exact
    std::uint64_t tail = n_odds & 63;
    if (tail != 0) odd_bits_.back() |= ~0ull << tail;
    cum_.assign(odd_bits_.size() + 1, 0);
    for (std::size_t w = 0; w < odd_bits_.size(); ++w)
        cum_[w + 1] = cum_[w] + std::popcount(~odd_bits_[w]);
}

bool sieve::odd_composite(std::uint64_t m) const {
    std::uint64_t i = m >> 1;
    return odd_bits_[i >> 6] >> (i & 63) & 1;
}

bool sieve::contains(std::uint64_t m) const {
    if (m > limit_) throw std::out_of_range("sieve::contains beyond limit");
    if (m == 2) return true;
    if (m < 2 || m % 2 == 0) return false;
    return !odd_composite(m);
}

std::uint64_t sieve::count_up_to(std::uint64_t x) const {
    if (x > limit_) x = limit_;
    if (x < 2) return 0;
    if (x == 2) return 1;
    std::uint64_t idx = (x - 1) / 2;  // largest odd index with value <= x
    std::uint64_t word = idx >> 6, bit = idx & 63;
    std::uint64_t odd_primes = cum_[word];
    std::uint64_t mask = bit == 63 ? ~0ull : ((1ull << (bit + 1)) - 1);
    odd_primes += std::popcount(~odd_bits_[word] & mask);
    return odd_primes + 1;  // + the prime 2
}

std::optional<std::uint64_t> sieve::next(std::uint64_t m) const {
    if (m < 2) {
        if (limit_ >= 2) return 2;
        m = 2;
    }
    std::uint64_t c = m + 1;
    if (c % 2 == 0) ++c;
    for (; c <= limit_; c += 2)
        if (!odd_composite(c)) return c;
    return std::nullopt;
}

std::optional<std::uint64_t> sieve::prev(std::uint64_t m) const {
    if (m > limit_) m = limit_;
    if (m < 2) return std::nullopt;
    if (m == 2) return 2;
    std::uint64_t c = m % 2 == 0 ? m - 1 : m;
    for (; c >= 3; c -= 2)
        if (!odd_composite(c)) return c;
    return 2;
}

std::vector<std::uint64_t> sieve::to_vector() const {
    std::vector<std::uint64_t> out;
    if (limit_ >= 2) out.push_back(2);
    for (std::uint64_t c = 3; c <= limit_; c += 2)
        if (!odd_composite(c)) out.push_back(c);
    return out;
}

namespace {

std::mutex g_sieve_mutex;
std::shared_ptr<const sieve> g_sieve;

std::shared_ptr<const sieve> shared_sieve(std::uint64_t min_limit) {
    std::lock_guard<std::mutex> lk(g_sieve_mutex);
    if (!g_sieve || g_sieve->limit() < min_limit) {
        std::uint64_t lim = std::max<std::uint64_t>(min_limit, 1 << 16);
        if (g_sieve) lim = std::max(lim, g_sieve->limit() * 2);
        g_sieve = std::make_shared<const sieve>(lim);
    }
    return g_sieve;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
    if (x > global_config().sieve_limit)
        throw resource_error("primes_up_to(" + std::to_string(x) + ") beyond sieve limit " +
                             std::to_string(global_config().sieve_limit));
    sieve s(x);
    return s.to_vector();
}

std::uint64_t prime_count(std::uint64_t x) {
    if (x > global_config().sieve_limit)
        throw resource_error("prime_count beyond sieve limit");
    return shared_sieve(x)->count_up_to(x);
}

namespace {

mpq_class mpfr_to_mpq(mpfr_t x) {
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e >= 0) {
        mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), e);
    } else {
        mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), -e);
    }
    q.canonicalize();
    return q;
}

}  // namespace

mpq_class dusart_upper_bound(const mpq_class& x) {
    if (x <= 1) throw std::invalid_argument("dusart_upper_bound needs x > 1");
    mpfr_prec_t prec = global_config().mpfr_precision;
    mpfr_t xf_d, lg, t, num, out;
    mpfr_inits2(prec, xf_d, lg, t, num, out, (mpfr_ptr) nullptr);
    // log rounded down (x rounded down first; log is increasing)
    mpfr_set_q(xf_d, x.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lg, xf_d, MPFR_RNDD);
    // 1 + 1.2762/log x, rounded up
    mpq_class c(12762, 10000);
    c.canonicalize();
    mpfr_set_q(t, c.get_mpq_t(), MPFR_RNDU);
    mpfr_div(t, t, lg, MPFR_RNDU);
    mpfr_add_ui(t, t, 1, MPFR_RNDU);
    // x / log x rounded up
    mpfr_set_q(num, x.get_mpq_t(), MPFR_RNDU);
    mpfr_div(num, num, lg, MPFR_RNDU);
    mpfr_mul(out, num, t, MPFR_RNDU);
    mpq_class result = mpfr_to_mpq(out);
    mpfr_clears(xf_d, lg, t, num, out, (mpfr_ptr) nullptr);
    return result;
}

std::optional<mpz_class> exists_prime_in(const mpz_class& lo, const mpz_class& hi,
                                         bool open_lo, bool open_hi) {
    mpz_class a = lo + (open_lo ? 1 : 0);
    mpz_class b = hi - (open_hi ? 1 : 0);
    if (a < 2) a = 2;
    if (b < a) return std::nullopt;
    if (b.fits_ulong_p() && b.get_ui() <= global_config().sieve_limit) {
        auto s = shared_sieve(b.get_ui());
        auto p = s->next(a.get_ui() - 1);
        if (p && *p <= b.get_ui()) return mpz_class(static_cast<unsigned long>(*p));
        return std::nullopt;
    }
    for (mpz_class c = a; c <= b; ++c)
        if (is_prime(c).kind != primality::composite) return c;
    return std::nullopt;
}

bool verify_window_lemma(std::uint64_t limit, std::uint64_t window) {
    if (window == 0 || limit < window) throw std::invalid_argument("verify_window_lemma: bad range");
    sieve s(limit);
    // walk the gap structure: every a with [a, a+window-1] <= limit needs a prime
    std::uint64_t prev = 0;  // last prime seen, 0 = none yet
    for (std::uint64_t m = 1; m <= limit; ++m) {
        if (m >= 2 && s.contains(m)) prev = m;
        // the window ending at m starts at m-window+1; it must contain a prime
        if (m >= window && (prev == 0 || prev < m - window + 1)) return false;
    }
    return true;
}

bool verify_harborth_kemnitz(std::uint64_t x_lo, std::uint64_t x_hi, hk_variant variant) {
    if (x_lo < 1 || x_hi < x_lo) throw std::invalid_argument("verify_harborth_kemnitz: bad range");
    std::uint64_t reach = variant == hk_variant::six_fifths ? (x_hi * 6) / 5 + 1 : (x_hi * 11) / 10 + 1;
    sieve s(reach);
    for (std::uint64_t m = x_lo; m <= x_hi; ++m) {
        auto p = s.next(m);
        if (!p) return false;
        bool ok = variant == hk_variant::six_fifths ? (5 * *p < 6 * m) : (10 * *p <= 11 * m);
        if (!ok) return false;
    }
    return true;
}

// ---------------------------------------------------------------- factorize

namespace {

mpz_class pollard_rho(const mpz_class& n) {
    // Brent's cycle finding, fixed schedule over the polynomial constant
    for (unsigned long c = 1;; c += 2) {
        mpz_class x = 2, y = 2, d = 1, diff;
        unsigned long power = 1, lam = 0;
        mpz_class saved_y;
        while (d == 1) {
            if (lam == power) {
                x = y;
                power *= 2;
                lam = 0;
            }
            // batch gcds in groups of 64 for speed
            mpz_class q = 1;
            unsigned long batch = std::min<unsigned long>(64, power - lam);
            saved_y = y;
            for (unsigned long i = 0; i < batch; ++i) {
                y = (y * y + c) % n;
                diff = x - y;
                q = (q * diff) % n;
            }
            lam += batch;
            mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
        // batch overshot a factor: replay one step at a time
        y = saved_y;
        d = 1;
        while (d == 1) {
            y = (y * y + c) % n;
            diff = x - y;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
        // cycle degenerated for this c; try the next constant
    }
}

void factor_rec(const mpz_class& n, factorization& out) {
    if (n == 1) return;
    auto v = is_prime(n);
    if (v.kind != primality::composite) {
        if (v.kind == primality::probably_prime) out.exact = false;
        out.factors[n] += 1;
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        for (unsigned long k = 2; k <= bits; ++k) {
            mpz_class r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                factorization sub;
                factor_rec(r, sub);
                if (!sub.exact) out.exact = false;
                for (auto& [p, e] : sub.factors) out.factors[p] += k * e;
                return;
            }
        }
        throw internal_error("perfect power without an exact root");
    }
    mpz_class d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

factorization factorize(const mpz_class& m) {
    if (m == 0) throw std::invalid_argument("factorize(0)");
    factorization out;
    mpz_class n = abs(m);
    if (n == 1) return out;
    // strip small primes first
    static const std::vector<std::uint64_t> small = sieve(1 << 16).to_vector();
    for (std::uint64_t p : small) {
        if (p * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_class rem, pz(static_cast<unsigned long>(p));
            unsigned long e = mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
            out.factors[pz] += e;
            n = rem;
            if (n == 1) return out;
        }
    }
    factor_rec(n, out);
    return out;
}

}  // namespace lagcert
