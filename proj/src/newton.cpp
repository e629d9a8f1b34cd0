#include "lagcert/newton.hpp"

#include <algorithm>
#include <stdexcept>

#include "lagcert/config.hpp"
#include "lagcert/errors.hpp"
#include "lagcert/primes.hpp"

namespace lagcert {

namespace {

mpq_class make_slope(const mpz_class& rise, const mpz_class& run) {
    mpq_class s(rise, run);
    s.canonicalize();
    return s;
}

void push_hull(std::vector<std::pair<mpz_class, mpz_class>>& hull, const mpz_class& x,
               const mpz_class& y) {
    // pop while the middle point sits on or above the chord to the new point
    while (hull.size() >= 2) {
        const auto& [x1, y1] = hull[hull.size() - 2];
        const auto& [x2, y2] = hull[hull.size() - 1];
        if ((x2 - x1) * (y - y1) <= (y2 - y1) * (x - x1))
            hull.pop_back();
        else
            break;
    }
    hull.emplace_back(x, y);
}

std::vector<polygon_edge> edges_of(const std::vector<std::pair<mpz_class, mpz_class>>& verts) {
    std::vector<polygon_edge> out;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        mpz_class run = verts[i].first - verts[i - 1].first;
        mpz_class rise = verts[i].second - verts[i - 1].second;
        out.push_back({run, rise, make_slope(rise, run)});
    }
    return out;
}

unsigned long checked_degree(const glp_instance& inst, const char* what) {
    if (inst.n > global_config().materialization_bound)
        throw resource_error(std::string(what) + ": degree " + inst.n.get_str() +
                             " beyond materialization bound");
    return inst.n.get_ui();
}

}  // namespace

newton_polygon build(const mpz_class& p, const std::vector<valuation_t>& vals) {
    if (p < 2) throw std::invalid_argument("build: p must be at least 2");
    if (vals.empty()) throw std::invalid_argument("build: empty valuation sequence");
    if (vals.front().is_infinite() || vals.back().is_infinite())
        throw std::invalid_argument("build: endpoint valuation must be finite");
    newton_polygon np;
    np.p = p;
    for (std::size_t u = 0; u < vals.size(); ++u) {
        np.points.emplace_back(mpz_class(static_cast<unsigned long>(u)), vals[u]);
        if (vals[u].is_infinite()) continue;
        push_hull(np.vertices, np.points.back().first, vals[u].finite());
    }
    np.edges = edges_of(np.vertices);
    return np;
}

mpq_class mu(const glp_instance& inst, const mpz_class& p, const mpz_class& j) {
    if (j < 1 || j > inst.n) throw std::invalid_argument("mu: j outside [1, n]");
    mpz_class vn = coefficient_valuation(inst, inst.n, p);
    mpz_class vnj = coefficient_valuation(inst, inst.n - j, p);
    return make_slope(vn - vnj, j);
}

slope_bound_report max_slope(const glp_instance& inst, const mpz_class& p, slope_method mode) {
    if (p < 2) throw std::invalid_argument("max_slope: p must be at least 2");
    if (mode == slope_method::closed_form_bound) {
        mpz_class u = binomial_valuation(inst.n + inst.r, inst.r, p);
        mpq_class best(u);
        mpq_class t2 = make_slope(u + 1, p);
        if (t2 > best) best = t2;
        mpq_class t3 = make_slope(1, p - 1) + make_slope(u, p * p);
        if (t3 > best) best = t3;
        return {p, best, 0, mode};
    }
    unsigned long n = checked_degree(inst, "max_slope");
    mpz_class vn = coefficient_valuation(inst, inst.n, p);
    mpq_class best;
    mpz_class best_j = 0;
    for (unsigned long j = 1; j <= n; ++j) {
        mpz_class vnj = coefficient_valuation(inst, inst.n - j, p);
        mpq_class s = make_slope(vn - vnj, j);
        if (best_j == 0 || s > best) {
            best = s;
            best_j = j;
        }
    }
    return {p, best, best_j, mode};
}

std::set<unsigned long> integral_slopes(const glp_instance& inst, const mpz_class& p) {
    unsigned long n = checked_degree(inst, "integral_slopes");
    std::vector<valuation_t> vals;
    vals.reserve(n + 1);
    for (unsigned long j = 0; j <= n; ++j)
        vals.emplace_back(coefficient_valuation(inst, j, p));
    newton_polygon np = build(p, vals);
    std::set<unsigned long> out;
    for (const auto& e : np.edges) {
        if (e.slope < 0 || e.slope.get_den() != 1) continue;
        out.insert(mpz_class(e.slope.get_num()).get_ui());
    }
    bool has_zero = out.count(0) != 0;
    bool coprime = !mpz_divisible_p(inst.n.get_mpz_t(), p.get_mpz_t()) &&
                   !mpz_divisible_p(mpz_class(inst.r + 1).get_mpz_t(), p.get_mpz_t());
    if (has_zero != coprime)
        throw internal_error("integral_slopes: slope-0 divisibility criterion violated at p=" +
                             p.get_str());
    return out;
}

bool filaseta_excludes(const glp_instance& inst, const mpz_class& p, const mpz_class& l,
                       const mpz_class& k) {
    if (l < 0 || k <= l) throw std::invalid_argument("filaseta_excludes: need 0 <= l < k");
    checked_degree(inst, "filaseta_excludes");
    if (coefficient_valuation(inst, 0, p) != 0) return false;
    for (mpz_class j = l + 1; j <= inst.n; ++j)
        if (coefficient_valuation(inst, j, p) == 0) return false;
    slope_bound_report rep = max_slope(inst, p, slope_method::exhaustive);
    return rep.max_slope < make_slope(1, k);
}

newton_polygon dumas_compose(const newton_polygon& a, const newton_polygon& b) {
    if (a.p != b.p) throw std::invalid_argument("dumas_compose: prime mismatch");
    if (a.vertices.empty() || b.vertices.empty())
        throw std::invalid_argument("dumas_compose: degenerate polygon");
    std::vector<polygon_edge> merged = a.edges;
    merged.insert(merged.end(), b.edges.begin(), b.edges.end());
    std::sort(merged.begin(), merged.end(),
              [](const polygon_edge& x, const polygon_edge& y) { return x.slope < y.slope; });
    newton_polygon np;
    np.p = a.p;
    mpz_class x = 0, y = a.vertices.front().second + b.vertices.front().second;
    np.vertices.emplace_back(x, y);
    for (std::size_t i = 0; i < merged.size(); ++i) {
        x += merged[i].run;
        y += merged[i].rise;
        if (i + 1 < merged.size() && merged[i + 1].slope == merged[i].slope) continue;
        np.vertices.emplace_back(x, y);
    }
    np.edges = edges_of(np.vertices);
    return np;
}

mpz_class newton_index(const glp_instance& inst, const std::vector<mpz_class>& primes) {
    unsigned long n = checked_degree(inst, "newton_index");
    mpz_class idx = 1;
    for (const mpz_class& p : primes) {
        std::vector<valuation_t> vals;
        vals.reserve(n + 1);
        for (unsigned long j = 0; j <= n; ++j)
            vals.emplace_back(coefficient_valuation(inst, j, p));
        newton_polygon np = build(p, vals);
        for (const auto& e : np.edges)
            mpz_lcm(idx.get_mpz_t(), idx.get_mpz_t(), e.slope.get_den().get_mpz_t());
    }
    return idx;
}

mpz_class newton_index(const glp_instance& inst) {
    mpz_class reach = inst.n + inst.r;
    if (!reach.fits_ulong_p() || reach.get_ui() > global_config().sieve_limit)
        throw resource_error("newton_index: n + r beyond sieve range");
    std::vector<mpz_class> ps;
    for (std::uint64_t p : primes_up_to(reach.get_ui()))
        ps.emplace_back(static_cast<unsigned long>(p));
    return newton_index(inst, ps);
}

}  // namespace lagcert
