#include "lagcert/certify.hpp"

#include <algorithm>
#include <stdexcept>

#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"
#include "lagcert/newton.hpp"
#include "lagcert/padic.hpp"
#include "lagcert/parallel.hpp"
#include "lagcert/primes.hpp"

namespace lagcert {

namespace {

mpz_class binom_val(const glp_instance& inst, const mpz_class& p) {
    return binomial_valuation(inst.n + inst.r, inst.r, p);
}

std::string join(const std::vector<mpz_class>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out;
}

split split_from(const glp_instance& inst, const factorization& f) {
    split sp{1, 1, f.exact};
    for (const auto& [p, e] : f.factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        if (binom_val(inst, p) == 0)
            sp.n0 *= pe;
        else
            sp.n1 *= pe;
    }
    return sp;
}

unsigned long large_prime_floor(const mpz_class& r) {
    // primes above this need the residue condition; below it they are smaller
    // than every capped factor degree anyway
    mpz_class L = (100 * (r - 1)) / 342;
    return L.get_ui();
}

// the residue condition every large prime factor of a hard degree satisfies
bool residue_condition(const mpz_class& n, const mpz_class& r, const mpz_class& p) {
    mpz_class q = n / p;
    mpz_class d = q % p;
    if (d == 0) throw internal_error("residue_condition: p^2 | n for a large prime");
    return d + r / p >= p;
}

bool is_hard_degree(const glp_instance& inst, const factorization& f) {
    if (inst.n <= 127) return false;
    unsigned long L = large_prime_floor(inst.r);
    for (const auto& [p, e] : f.factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        if (pe > inst.r) return false;
        if (p > L && !residue_condition(inst.n, inst.r, p)) return false;
    }
    return true;
}

}  // namespace

split split_n(const glp_instance& inst) { return split_from(inst, factorize(inst.n)); }

mpz_class max_factor_degree(const mpz_class& r, const mpz_class& n) {
    if (r < 3) return 1;
    mpz_class k = (100 * r - 1) / 163;
    if (r <= 104) k = std::min(k, mpz_class((100 * r - 101) / 342));
    k = std::min(k, mpz_class(n / 2));
    return k < 2 ? mpz_class(1) : k;
}

std::set<mpz_class> admissible_residues(const mpz_class& p, const mpz_class& r) {
    if (p < 2) throw std::invalid_argument("admissible_residues: p must be at least 2");
    std::set<mpz_class> out;
    mpz_class t = r / p;
    for (mpz_class i = 1; i <= t && i < p; ++i) out.insert(p - i);
    return out;
}

void enumerate_hard_degrees(unsigned r, const std::function<void(const hard_degree&)>& sink) {
    if (r < 23 || r > 60)
        throw std::invalid_argument("enumerate_hard_degrees: r outside validated range [23, 60]");
    std::vector<std::uint64_t> asc = primes_up_to(r);
    std::vector<std::uint64_t> ps(asc.rbegin(), asc.rend());
    unsigned long L = large_prime_floor(r);
    mpz_class rz(r);
    hard_degree cur;
    cur.n = 1;

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == ps.size()) {
            if (cur.n <= 127) return;
            for (const auto& [p, e] : cur.factors) {
                if (p <= L) continue;
                if (e != 1) throw internal_error("hard degree with repeated large prime");
                if (!residue_condition(cur.n, rz, p)) return;
            }
            sink(cur);
            return;
        }
        rec(i + 1);
        std::uint64_t p = ps[i];
        mpz_class saved = cur.n;
        unsigned long e = 1;
        for (std::uint64_t pw = p; pw <= r; pw *= p, ++e) {
            cur.n = saved * mpz_class(static_cast<unsigned long>(pw));
            cur.factors[mpz_class(static_cast<unsigned long>(p))] = e;
            rec(i + 1);
        }
        cur.n = saved;
        cur.factors.erase(mpz_class(static_cast<unsigned long>(p)));
    };
    rec(0);
}

std::vector<hard_degree> hard_degrees_sorted(unsigned r) {
    std::vector<hard_degree> out;
    enumerate_hard_degrees(r, [&](const hard_degree& h) { out.push_back(h); });
    std::sort(out.begin(), out.end(),
              [](const hard_degree& a, const hard_degree& b) { return a.n < b.n; });
    return out;
}

std::optional<degree_evidence> prev_prime_exclusion(const glp_instance& inst) {
    if (inst.n < 2) return std::nullopt;
    mpz_class p = *prev_prime(inst.n);
    mpz_class k_n = inst.n - p;
    if (inst.r + k_n >= p) return std::nullopt;
    degree_evidence ev;
    ev.kind = evidence_kind::prev_prime_gap;
    ev.lo = k_n + 1;
    ev.hi = inst.n / 2;
    ev.witness["p"] = p.get_str();
    ev.witness["k_n"] = k_n.get_str();
    ev.witness["prime_exact"] = is_prime(p).exact() ? "1" : "0";
    return ev;
}

std::optional<degree_evidence> near_prime_exclusion(const glp_instance& inst,
                                                    const mpz_class& k_n) {
    if (k_n < 1) throw std::invalid_argument("near_prime_exclusion: k_n must be positive");
    for (mpz_class l = 1; l <= k_n; ++l) {
        factorization f = factorize(inst.n - l);
        for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it) {
            const mpz_class& q = it->first;
            if (q <= k_n) break;
            if (binom_val(inst, q) != 0) continue;
            degree_evidence ev;
            ev.kind = evidence_kind::near_prime;
            ev.lo = l + 1;
            ev.hi = k_n;
            ev.witness["q"] = q.get_str();
            ev.witness["l"] = l.get_str();
            ev.witness["k_n"] = k_n.get_str();
            ev.witness["prime_exact"] = (f.exact || is_prime(q).exact()) ? "1" : "0";
            return ev;
        }
    }
    return std::nullopt;
}

std::optional<degree_evidence> single_degree_exclusion(const glp_instance& inst,
                                                       const mpz_class& i) {
    if (i < 1 || i > inst.n) throw std::invalid_argument("single_degree_exclusion: bad degree");
    std::set<mpz_class> primes;
    bool exact = true;
    for (mpz_class t = 0; t < i; ++t) {
        factorization f = factorize(inst.n - t);
        exact = exact && f.exact;
        for (const auto& [p, e] : f.factors) primes.insert(p);
    }
    for (mpz_class t = 1; t <= i; ++t) {
        factorization f = factorize(inst.r + t);
        exact = exact && f.exact;
        for (const auto& [p, e] : f.factors) primes.insert(p);
    }
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
        const mpz_class& p = *it;
        mpz_class u = binom_val(inst, p);
        degree_evidence ev;
        ev.kind = evidence_kind::single_degree;
        ev.lo = i;
        ev.hi = i;
        ev.witness["p"] = p.get_str();
        ev.witness["u"] = u.get_str();
        ev.witness["prime_exact"] = exact ? "1" : "0";
        if (u == 0 && p > i) {
            ev.witness["cond"] = "a";
            return ev;
        }
        if (u > 0 && p > 2) {
            mpz_class z0 = (inst.n + inst.r) % p;
            mpz_class nudiff =
                valuation(inst.n + inst.r - z0, p).finite() - valuation(inst.n, p).finite();
            mpq_class inv_i(1, i), c1(u + 1, p), c2(nudiff, z0 + 1);
            c1.canonicalize();
            c2.canonicalize();
            if (c1 < inv_i && c2 < inv_i) {
                ev.witness["cond"] = "b";
                ev.witness["z0"] = z0.get_str();
                ev.witness["nudiff"] = nudiff.get_str();
                return ev;
            }
        }
    }
    return std::nullopt;
}

bool slope_envelope_check(const glp_instance& inst, const mpz_class& p, const mpz_class& j) {
    if (p < 2 || j < 1) throw std::invalid_argument("slope_envelope_check: need p >= 2, j >= 1");
    return (p - 1) * binom_val(inst, p) < (p - 2) * j + digit_sum(j, p);
}

namespace {

// certifies that every polygon slope at p is < 1, so no positive exponent is
// admissible for a linear root; exact mu checks below the crossover index,
// the digit-sum envelope above it
bool no_positive_slope_cheaply(const glp_instance& inst, const mpz_class& p, const mpz_class& u) {
    if (u == 0) return true;
    if (p == 2) return false;
    mpz_class J = ((p - 1) * u + p - 3) / (p - 2);  // least j with (p-2)j >= (p-1)u
    if (J > inst.n) J = inst.n + 1;
    for (mpz_class j = 1; j < J; ++j)
        if (mu(inst, p, j) >= 1) return false;
    return true;
}

}  // namespace

linear_elimination eliminate_linear(const glp_instance& inst) {
    linear_elimination out;
    mpz_class reach = inst.n + inst.r;
    if (!reach.fits_ulong_p() || reach.get_ui() > global_config().sieve_limit)
        throw resource_error("eliminate_linear: n + r beyond sieve range");
    mpz_class b1 = inst.n * (inst.r + 1);
    std::vector<std::pair<mpz_class, std::vector<unsigned long>>> choices;
    bool impossible = false;
    for (std::uint64_t pu : primes_up_to(reach.get_ui())) {
        mpz_class p(static_cast<unsigned long>(pu));
        mpz_class u = binom_val(inst, p);
        if (!mpz_divisible_p(b1.get_mpz_t(), p.get_mpz_t()) &&
            no_positive_slope_cheaply(inst, p, u)) {
            ++out.bounded_primes;
            continue;
        }
        std::set<unsigned long> I = integral_slopes(inst, p);
        out.slope_sets[p] = I;
        if (I.empty()) {
            impossible = true;
            if (!out.empty_slope_witness) out.empty_slope_witness = p;
            continue;
        }
        if (I.size() == 1 && I.count(0)) continue;  // exponent 0 is the only choice
        choices.emplace_back(p, std::vector<unsigned long>(I.begin(), I.end()));
    }
    if (impossible) {
        out.eliminated = true;
        return out;
    }
    std::uint64_t total = 1;
    for (const auto& [p, es] : choices) {
        total *= es.size();
        if (total > global_config().candidate_cap)
            throw resource_error("eliminate_linear: candidate count beyond cap");
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    for (std::uint64_t c = 0; c < total; ++c) {
        mpz_class a = 1, pw;
        std::uint64_t rem = c;
        for (std::size_t k = 0; k < choices.size(); ++k) {
            std::size_t pick = rem % choices[k].second.size();
            rem /= choices[k].second.size();
            mpz_pow_ui(pw.get_mpz_t(), choices[k].first.get_mpz_t(), choices[k].second[pick]);
            a *= pw;
        }
        out.candidates.push_back(a);
    }
    std::sort(out.candidates.begin(), out.candidates.end());
    for (const mpz_class& a : out.candidates)
        if (evaluate_at_negative_integer(inst, a) == 0) out.roots_found.push_back(a);
    out.eliminated = out.roots_found.empty();
    return out;
}

namespace {

struct ladder_outcome {
    std::vector<degree_evidence> evidence;
    std::vector<mpz_class> open_degrees;
};

void clip_insert(std::vector<std::pair<mpz_class, mpz_class>>& ranges, mpz_class lo,
                 mpz_class hi, const mpz_class& top) {
    if (lo < 1) lo = 1;
    if (hi > top) hi = top;
    if (lo <= hi) ranges.emplace_back(lo, hi);
}

// the exclusion ladder over degrees [1, min(cap, n/2)]; degrees above the cap
// are closed by the factor-degree evidence
ladder_outcome run_ladder(const glp_instance& inst) {
    ladder_outcome out;
    mpz_class half = inst.n / 2;
    mpz_class cap = max_factor_degree(inst.r, inst.n);
    if (cap < half) {
        degree_evidence ev;
        ev.kind = evidence_kind::factor_degree_cap;
        ev.lo = cap + 1;
        ev.hi = half;
        ev.witness["k_max"] = cap.get_str();
        out.evidence.push_back(ev);
    }
    mpz_class top = std::min(half, cap);
    std::vector<std::pair<mpz_class, mpz_class>> covered;
    auto ev1 = prev_prime_exclusion(inst);
    mpz_class k_n = -1;
    if (ev1) {
        k_n = mpz_class(ev1->witness.at("k_n"));
        clip_insert(covered, ev1->lo, ev1->hi, top);
        out.evidence.push_back(*ev1);
    }
    if (k_n >= 1) {
        auto ev2 = near_prime_exclusion(inst, k_n);
        if (ev2) {
            clip_insert(covered, ev2->lo, ev2->hi, top);
            out.evidence.push_back(*ev2);
        }
    }
    std::sort(covered.begin(), covered.end());
    std::vector<mpz_class> gaps;
    mpz_class at = 1;
    for (const auto& [lo, hi] : covered) {
        for (; at < lo && at <= top; ++at) gaps.push_back(at);
        if (hi >= at) at = hi + 1;
    }
    for (; at <= top; ++at) gaps.push_back(at);
    for (const mpz_class& i : gaps) {
        auto ev = single_degree_exclusion(inst, i);
        if (ev)
            out.evidence.push_back(*ev);
        else
            out.open_degrees.push_back(i);
    }
    return out;
}

degree_evidence linear_evidence(const linear_elimination& lin) {
    degree_evidence ev;
    ev.kind = evidence_kind::linear_roots;
    ev.lo = 1;
    ev.hi = 1;
    ev.witness["candidates"] = join(lin.candidates);
    std::string signs;
    for (std::size_t i = 0; i < lin.candidates.size(); ++i) {
        if (i) signs += ",";
        signs += "+";  // all candidate evaluations verified nonzero
    }
    ev.witness["nonzero"] = signs;
    if (lin.empty_slope_witness)
        ev.witness["empty_slope_prime"] = lin.empty_slope_witness->get_str();
    ev.witness["bounded_primes"] = std::to_string(lin.bounded_primes);
    ev.witness["exact_polygons"] = std::to_string(lin.slope_sets.size());
    return ev;
}

}  // namespace

exclusion_certificate certify_irreducible(const glp_instance& inst) {
    exclusion_certificate cert;
    cert.n = inst.n;
    cert.r = inst.r;
    mpz_class half = inst.n / 2;
    if (half == 0) {
        cert.status = certificate_status::complete;
        cert.note = "degree 1 has no proper factor";
        return cert;
    }
    if (inst.n <= 127 && inst.r <= 103) {
        degree_evidence ev;
        ev.kind = evidence_kind::base_case;
        ev.lo = 1;
        ev.hi = half;
        cert.evidence.push_back(ev);
        cert.status = certificate_status::complete;
        return cert;
    }
    if (inst.r < 23 || inst.r > 60) {
        cert.status = certificate_status::unsupported;
        cert.note = "r outside the validated range and no base case applies";
        return cert;
    }
    factorization f = factorize(inst.n);
    if (!is_hard_degree(inst, f)) {
        split sp = split_from(inst, f);
        mpz_class cap = max_factor_degree(inst.r, inst.n);
        if (sp.n0 <= cap) throw internal_error("divisibility shortcut inapplicable off the hard set");
        degree_evidence dv;
        dv.kind = evidence_kind::degree_divisibility;
        dv.lo = 1;
        dv.hi = std::min(mpz_class(sp.n0 - 1), half);
        dv.witness["n0"] = sp.n0.get_str();
        dv.witness["exact"] = sp.exact ? "1" : "0";
        cert.evidence.push_back(dv);
        if (cap < half) {
            degree_evidence ck;
            ck.kind = evidence_kind::factor_degree_cap;
            ck.lo = cap + 1;
            ck.hi = half;
            ck.witness["k_max"] = cap.get_str();
            cert.evidence.push_back(ck);
        } else if (sp.n0 <= half) {
            throw internal_error("divisibility coverage gap");
        }
        cert.status = certificate_status::complete;
        return cert;
    }
    ladder_outcome lad = run_ladder(inst);
    cert.evidence = std::move(lad.evidence);
    std::vector<mpz_class> open;
    for (const mpz_class& d : lad.open_degrees) {
        if (d == 1) {
            linear_elimination lin = eliminate_linear(inst);
            if (lin.eliminated) {
                cert.evidence.push_back(linear_evidence(lin));
                continue;
            }
        }
        open.push_back(d);
    }
    if (open.empty()) {
        cert.status = certificate_status::complete;
    } else {
        cert.status = certificate_status::residual;
        cert.uncovered = std::move(open);
    }
    return cert;
}

namespace {

bool check_one(const exclusion_certificate& cert, const degree_evidence& ev) {
    glp_instance inst(cert.n, cert.r);
    mpz_class half = cert.n / 2;
    switch (ev.kind) {
        case evidence_kind::base_case:
            return cert.n <= 127 && cert.r <= 103 && ev.lo == 1 && ev.hi == half;
        case evidence_kind::degree_divisibility: {
            mpz_class n0(ev.witness.at("n0"));
            if (n0 < 2 || !mpz_divisible_p(cert.n.get_mpz_t(), n0.get_mpz_t())) return false;
            factorization f = factorize(n0);
            for (const auto& [p, e] : f.factors) {
                if (valuation(cert.n, p).finite() != e) return false;  // full prime power of n
                if (binom_val(inst, p) != 0) return false;
            }
            return ev.lo == 1 && ev.hi <= n0 - 1 && ev.hi <= half;
        }
        case evidence_kind::factor_degree_cap: {
            mpz_class k(ev.witness.at("k_max"));
            return k == max_factor_degree(cert.r, cert.n) && ev.lo == k + 1 && ev.hi == half &&
                   ev.lo >= 2;
        }
        case evidence_kind::prev_prime_gap: {
            mpz_class p(ev.witness.at("p")), k_n(ev.witness.at("k_n"));
            if (is_prime(p).kind == primality::composite) return false;
            return p + k_n == cert.n && cert.r + k_n < p && ev.lo == k_n + 1 && ev.hi == half;
        }
        case evidence_kind::near_prime: {
            mpz_class q(ev.witness.at("q")), l(ev.witness.at("l")), k_n(ev.witness.at("k_n"));
            if (is_prime(q).kind == primality::composite) return false;
            if (!mpz_divisible_p(mpz_class(cert.n - l).get_mpz_t(), q.get_mpz_t())) return false;
            return q > k_n && binom_val(inst, q) == 0 && ev.lo == l + 1 && ev.hi == k_n;
        }
        case evidence_kind::single_degree: {
            mpz_class p(ev.witness.at("p")), u(ev.witness.at("u"));
            const mpz_class& i = ev.lo;
            if (ev.hi != i) return false;
            if (is_prime(p).kind == primality::composite) return false;
            bool divides = false;
            for (mpz_class t = 0; t < i && !divides; ++t)
                divides = mpz_divisible_p(mpz_class(cert.n - t).get_mpz_t(), p.get_mpz_t());
            for (mpz_class t = 1; t <= i && !divides; ++t)
                divides = mpz_divisible_p(mpz_class(cert.r + t).get_mpz_t(), p.get_mpz_t());
            if (!divides || binom_val(inst, p) != u) return false;
            if (ev.witness.at("cond") == "a") return u == 0 && p > i;
            mpz_class z0(ev.witness.at("z0")), nudiff(ev.witness.at("nudiff"));
            if (z0 != (cert.n + cert.r) % p || u == 0 || p <= 2) return false;
            mpz_class check =
                valuation(cert.n + cert.r - z0, p).finite() - valuation(cert.n, p).finite();
            if (check != nudiff) return false;
            mpq_class inv_i(1, i), c1(u + 1, p), c2(nudiff, z0 + 1);
            inv_i.canonicalize();
            c1.canonicalize();
            c2.canonicalize();
            return c1 < inv_i && c2 < inv_i;
        }
        case evidence_kind::linear_roots: {
            if (ev.lo != 1 || ev.hi != 1) return false;
            auto it = ev.witness.find("empty_slope_prime");
            if (it != ev.witness.end()) {
                mpz_class p(it->second);
                return integral_slopes(inst, p).empty();
            }
            const std::string& cs = ev.witness.at("candidates");
            if (cs.empty()) return false;  // no witness prime and nothing evaluated
            std::size_t pos = 0;
            while (pos <= cs.size()) {
                std::size_t comma = cs.find(',', pos);
                std::string tok = cs.substr(pos, comma == std::string::npos ? comma : comma - pos);
                if (evaluate_at_negative_integer(inst, mpz_class(tok)) == 0) return false;
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return true;
        }
        case evidence_kind::oracle_only:
            return false;  // advisory entries never carry a certificate
    }
    return false;
}

}  // namespace

bool check_certificate(const exclusion_certificate& cert) {
    if (cert.status == certificate_status::unsupported) return false;
    mpz_class half = cert.n / 2;
    std::vector<std::pair<mpz_class, mpz_class>> covered;
    try {
        for (const auto& ev : cert.evidence) {
            if (!check_one(cert, ev)) return false;
            if (ev.lo <= ev.hi) covered.emplace_back(ev.lo, ev.hi);
        }
    } catch (const std::exception&) {
        return false;
    }
    for (const mpz_class& d : cert.uncovered)
        covered.emplace_back(d, d);  // residual certificates leave these open but accounted
    std::sort(covered.begin(), covered.end());
    mpz_class at = 1;
    for (const auto& [lo, hi] : covered) {
        if (lo > at) return false;
        if (hi >= at) at = hi + 1;
    }
    bool full = at > half;
    if (cert.status == certificate_status::complete)
        return full && cert.uncovered.empty();
    return full && !cert.uncovered.empty();
}

scan_report scan_range(unsigned r_lo, unsigned r_hi) {
    if (r_lo < 23 || r_hi > 60 || r_lo > r_hi)
        throw std::invalid_argument("scan_range: need 23 <= r_lo <= r_hi <= 60");
    scan_report rep;
    rep.r_lo = r_lo;
    rep.r_hi = r_hi;
    bool all_ok = true;
    for (unsigned r = r_lo; r <= r_hi; ++r) {
        std::vector<hard_degree> cands = hard_degrees_sorted(r);
        scan_row row;
        row.r = r;
        row.hard_count = cands.size();
        std::vector<unsigned char> flag(cands.size(), 0);
        run_indexed(cands.size(), [&](std::size_t i) {
            glp_instance inst(cands[i].n, mpz_class(r));
            ladder_outcome lad = run_ladder(inst);
            if (lad.open_degrees.empty())
                flag[i] = 0;
            else if (lad.open_degrees.size() == 1 && lad.open_degrees[0] == 1)
                flag[i] = 1;
            else
                flag[i] = 2;
        });
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (flag[i] == 0) continue;
            row.residual.push_back(cands[i].n);
            rep.residual_pairs.emplace_back(cands[i].n, r);
            if (flag[i] == 2) all_ok = false;  // degrees beyond 1 left open
        }
        rep.rows.push_back(std::move(row));
    }
    std::vector<unsigned char> ok(rep.residual_pairs.size(), 0);
    run_indexed(rep.residual_pairs.size(), [&](std::size_t i) {
        glp_instance inst(rep.residual_pairs[i].first, mpz_class(rep.residual_pairs[i].second));
        linear_elimination lin = eliminate_linear(inst);
        ok[i] = lin.eliminated ? 1 : 0;
    });
    for (unsigned char o : ok) all_ok = all_ok && o == 1;
    rep.all_residuals_eliminated = all_ok;
    return rep;
}

// ------------------------------------------------- modular factor oracle

namespace {

using poly = std::vector<std::uint64_t>;  // coefficients ascending, mod q

void trim(poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t degree(const poly& a) { return static_cast<std::int64_t>(a.size()) - 1; }

std::uint64_t power_mod(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
    std::uint64_t acc = 1 % q;
    b %= q;
    while (e) {
        if (e & 1) acc = acc * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return acc;
}

poly poly_mul(const poly& a, const poly& b, std::uint64_t q) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
    }
    poly out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = acc[k] % q;
    trim(out);
    return out;
}

// remainder of a by monic f
poly poly_rem(poly a, const poly& f, std::uint64_t q) {
    trim(a);
    std::int64_t df = degree(f);
    while (degree(a) >= df) {
        std::uint64_t c = a.back();
        std::size_t shift = a.size() - f.size();
        if (c != 0)
            for (std::size_t j = 0; j < f.size(); ++j) {
                std::uint64_t sub = c * f[j] % q;
                a[shift + j] = (a[shift + j] + q - sub) % q;
            }
        a.pop_back();
        trim(a);
    }
    return a;
}

poly poly_divexact(poly a, const poly& g, std::uint64_t q) {
    // both monic; quotient of an exact division
    trim(a);
    std::int64_t dg = degree(g);
    poly quot(a.size() - g.size() + 1, 0);
    while (degree(a) >= dg) {
        std::uint64_t c = a.back();
        std::size_t shift = a.size() - g.size();
        quot[shift] = c;
        if (c != 0)
            for (std::size_t j = 0; j < g.size(); ++j) {
                std::uint64_t sub = c * g[j] % q;
                a[shift + j] = (a[shift + j] + q - sub) % q;
            }
        a.pop_back();
        trim(a);
    }
    if (!a.empty()) throw internal_error("factor oracle: inexact polynomial division");
    return quot;
}

void make_monic(poly& a, std::uint64_t q) {
    if (a.empty()) return;
    std::uint64_t inv = power_mod(a.back(), q - 2, q);
    for (auto& c : a) c = c * inv % q;
}

poly poly_gcd(poly a, poly b, std::uint64_t q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        make_monic(b, q);
        poly r = poly_rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a, q);
    return a;
}

poly poly_pow_q(const poly& base, std::uint64_t q, const poly& f, std::uint64_t qmod) {
    poly acc{1};
    poly b = poly_rem(base, f, qmod);
    std::uint64_t e = q;
    while (e) {
        if (e & 1) acc = poly_rem(poly_mul(acc, b, qmod), f, qmod);
        b = poly_rem(poly_mul(b, b, qmod), f, qmod);
        e >>= 1;
    }
    return acc;
}

// degrees (with multiplicity) of the irreducible factors of f of degree
// <= kmax; larger factors are dropped (they cannot join any small subset sum)
std::vector<std::uint64_t> small_factor_degrees(poly f, std::uint64_t q, std::uint64_t kmax) {
    std::vector<std::uint64_t> degs;
    poly x{0, 1};
    poly h = poly_rem(x, f, q);
    for (std::uint64_t d = 1; d <= kmax; ++d) {
        if (degree(f) < static_cast<std::int64_t>(2 * d)) {
            std::int64_t df = degree(f);
            if (df > 0 && df <= static_cast<std::int64_t>(kmax))
                degs.push_back(static_cast<std::uint64_t>(df));
            return degs;
        }
        h = poly_pow_q(h, q, f, q);
        poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + q - 1) % q;
        trim(diff);
        poly g = poly_gcd(diff, f, q);
        if (degree(g) > 0) {
            std::uint64_t copies = static_cast<std::uint64_t>(degree(g)) / d;
            for (std::uint64_t c = 0; c < copies; ++c) degs.push_back(d);
            f = poly_divexact(f, g, q);
            h = poly_rem(h, f, q);
        }
    }
    return degs;
}

std::uint64_t discriminant_mod(const glp_instance& inst, std::uint64_t q) {
    std::uint64_t n = inst.n.get_ui();
    mpz_class nr1 = inst.n + inst.r + 1;
    std::uint64_t acc = 1;
    for (std::uint64_t j = 2; j <= n; ++j) {
        acc = acc * power_mod(j % q, j, q) % q;
        std::uint64_t base = mpz_fdiv_ui(mpz_class(nr1 - j).get_mpz_t(), q);
        acc = acc * power_mod(base, j - 1, q) % q;
    }
    return acc;
}

}  // namespace

std::set<mpz_class> factor_degree_oracle(const glp_instance& inst, const mpz_class& k_max) {
    std::set<mpz_class> out;
    mpz_class keff = std::min(k_max, mpz_class(inst.n - 1));
    if (keff < 1) return out;
    std::vector<mpz_class> coeffs = coefficients(inst);
    std::uint64_t n = inst.n.get_ui();
    std::uint64_t kmax = keff.get_ui();

    // moduli above n+r cannot divide the discriminant (all its prime factors
    // are at most n+r); the residue check below re-verifies that anyway
    mpz_class reach = inst.n + inst.r;
    std::uint64_t bound = std::min<std::uint64_t>(global_config().oracle_modulus_bound, 65535);
    std::vector<std::uint64_t> moduli;
    for (mpz_class qz = next_prime_above(reach); moduli.size() < 3; qz = next_prime_above(qz)) {
        if (qz > bound) break;
        std::uint64_t q = qz.get_ui();
        if (discriminant_mod(inst, q) == 0)
            throw internal_error("factor oracle: discriminant vanished above n+r");
        moduli.push_back(q);
    }
    if (moduli.size() < 3)
        throw resource_error("factor_degree_oracle: fewer than 3 moduli below bound");

    for (std::uint64_t q : moduli) {
        poly f(n + 1);
        for (std::uint64_t j = 0; j <= n; ++j)
            f[j] = mpz_fdiv_ui(coeffs[n - j].get_mpz_t(), q);  // coefficient of x^j is b_{n-j}
        std::vector<std::uint64_t> degs = small_factor_degrees(f, q, kmax);
        std::vector<bool> ach(kmax + 1, false);
        ach[0] = true;
        for (std::uint64_t d : degs)
            for (std::uint64_t k = kmax; k >= d; --k)
                if (ach[k - d]) ach[k] = true;
        for (std::uint64_t k = 1; k <= kmax; ++k)
            if (!ach[k]) out.insert(mpz_class(static_cast<unsigned long>(k)));
    }
    return out;
}

}  // namespace lagcert
