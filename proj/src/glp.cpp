#include "lagcert/glp.hpp"

#include <stdexcept>
#include <string>

#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"
#include "lagcert/padic.hpp"
#include "lagcert/primes.hpp"

namespace lagcert {

namespace {

void require_materializable(const mpz_class& n) {
    if (n > global_config().materialization_bound)
        throw resource_error("degree " + n.get_str() + " beyond materialization bound " +
                             std::to_string(global_config().materialization_bound));
}

void require_index(const glp_instance& inst, const mpz_class& j) {
    if (j < 0 || j > inst.n)
        throw std::invalid_argument("coefficient index " + j.get_str() + " outside [0, " +
                                    inst.n.get_str() + "]");
}

}  // namespace

glp_instance::glp_instance(mpz_class n_, mpz_class r_) : n(std::move(n_)), r(std::move(r_)) {
    if (n < 1) throw std::invalid_argument("glp_instance needs n >= 1");
    if (r < 0) throw std::invalid_argument("glp_instance needs r >= 0");
}

mpz_class coefficient(const glp_instance& inst, const mpz_class& j) {
    require_index(inst, j);
    require_materializable(inst.n);
    unsigned long ju = j.get_ui();
    mpz_class b;
    mpz_bin_ui(b.get_mpz_t(), inst.n.get_mpz_t(), ju);
    for (unsigned long t = 1; t <= ju; ++t) b *= inst.r + t;
    return b;
}

std::vector<mpz_class> coefficients(const glp_instance& inst) {
    require_materializable(inst.n);
    unsigned long n = inst.n.get_ui();
    std::vector<mpz_class> b(n + 1);
    b[0] = 1;
    for (unsigned long j = 1; j <= n; ++j) {
        mpz_class t = b[j - 1] * (inst.n - j + 1) * (inst.r + j);
        mpz_divexact_ui(b[j].get_mpz_t(), t.get_mpz_t(), j);
    }
    return b;
}

mpz_class coefficient_valuation(const glp_instance& inst, const mpz_class& j,
                                const mpz_class& p) {
    require_index(inst, j);
    return binomial_valuation(inst.n, j, p) + rising_factorial_valuation(inst.r, j, p);
}

mpz_class evaluate_at_negative_integer(const glp_instance& inst, const mpz_class& a) {
    if (a < 1) throw std::invalid_argument("evaluate_at_negative_integer needs a >= 1");
    std::vector<mpz_class> b = coefficients(inst);
    // f(x) = sum_j b_{n-j} x^j, so Horner runs b_0, b_1, ..., b_n
    mpz_class acc = b[0];
    for (std::size_t j = 1; j < b.size(); ++j) acc = acc * (-a) + b[j];
    return acc;
}

mpz_class discriminant(const glp_instance& inst) {
    if (inst.n == 1) return 1;
    require_materializable(inst.n);
    unsigned long n = inst.n.get_ui();
    mpz_class acc = 1, t;
    for (unsigned long j = 2; j <= n; ++j) {
        mpz_class base = mpz_class(j) - 1 - inst.n - inst.r;
        mpz_class jp;
        mpz_ui_pow_ui(jp.get_mpz_t(), j, j);
        mpz_pow_ui(t.get_mpz_t(), base.get_mpz_t(), j - 1);
        acc *= jp * t;
    }
    return acc;
}

int discriminant_sign(const glp_instance& inst) {
    unsigned long m = mpz_fdiv_ui(inst.n.get_mpz_t(), 4);
    return (m == 2 || m == 3) ? -1 : 1;
}

mpz_class discriminant_valuation_profile(const glp_instance& inst, const mpz_class& p) {
    if (p < 2) throw std::invalid_argument("discriminant_valuation_profile needs p >= 2");
    const mpz_class& n = inst.n;
    mpz_class total = 0;
    auto tri = [](const mpz_class& k) { return mpz_class(k * (k + 1) / 2); };
    // sum_{j<=n} j nu_p(j): each power p^i contributes p^i * (1+...+floor(n/p^i))
    for (mpz_class pi = p; pi <= n; pi *= p) total += pi * tri(n / pi);
    // sum over m = n+r+1-j, j in [2,n]: m runs [r+1, n+r-1] with weight n+r-m
    mpz_class lo = inst.r + 1, hi = n + inst.r - 1, nr = n + inst.r;
    for (mpz_class pi = p; pi <= hi; pi *= p) {
        mpz_class t_lo, t_hi;
        mpz_cdiv_q(t_lo.get_mpz_t(), lo.get_mpz_t(), pi.get_mpz_t());
        mpz_fdiv_q(t_hi.get_mpz_t(), hi.get_mpz_t(), pi.get_mpz_t());
        if (t_hi < t_lo) continue;
        total += (t_hi - t_lo + 1) * nr - pi * (tri(t_hi) - tri(t_lo - 1));
    }
    return total;
}

signed_factorization discriminant_factored(const glp_instance& inst) {
    signed_factorization out;
    out.sign = discriminant_sign(inst);
    if (inst.n == 1) return out;
    mpz_class reach = inst.n + inst.r;
    if (!reach.fits_ulong_p() || reach.get_ui() > global_config().sieve_limit)
        throw resource_error("discriminant_factored: n + r beyond sieve range");
    for (std::uint64_t p : primes_up_to(reach.get_ui())) {
        mpz_class e = discriminant_valuation_profile(inst, mpz_class(static_cast<unsigned long>(p)));
        if (e == 0) continue;
        if (!e.fits_ulong_p()) throw resource_error("discriminant exponent overflow");
        out.factors[mpz_class(static_cast<unsigned long>(p))] = e.get_ui();
    }
    return out;
}

squarefree_decomposition squarefree_part(const mpz_class& m, std::uint64_t factor_limit) {
    if (m == 0) throw std::invalid_argument("squarefree_part(0)");
    if (factor_limit > global_config().sieve_limit)
        throw resource_error("squarefree_part: factor limit beyond sieve range");
    signed_factorization f;
    f.sign = m < 0 ? -1 : 1;
    mpz_class v = abs(m);
    if (v > 1) {
        sieve s(factor_limit < 2 ? 2 : factor_limit);
        for (std::uint64_t p : s.to_vector()) {
            if (mpz_class(static_cast<unsigned long>(p)) * p > v) break;
            if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
                mpz_class rem, pz(static_cast<unsigned long>(p));
                unsigned long e = mpz_remove(rem.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
                f.factors[pz] = e;
                v = rem;
                if (v == 1) break;
            }
        }
        if (v > 1) {
            if (is_prime(v).kind != primality::prime)
                throw resource_error("squarefree_part: cofactor " + v.get_str() +
                                     " not factorable within limit");
            f.factors[v] += 1;
        }
    }
    return squarefree_part(f);
}

squarefree_decomposition squarefree_part(const signed_factorization& f) {
    if (f.sign != 1 && f.sign != -1)
        throw std::invalid_argument("squarefree_part: sign must be +-1");
    squarefree_decomposition d{f.sign, 1, 1};
    for (const auto& [p, e] : f.factors) {
        if (p < 2) throw std::invalid_argument("squarefree_part: factor below 2");
        if (e % 2 == 1) d.kernel *= p;
        mpz_class half;
        mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
        d.square_root_cofactor *= half;
    }
    return d;
}

}  // namespace lagcert
