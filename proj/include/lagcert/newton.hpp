#ifndef LAGCERT_NEWTON_HPP
#define LAGCERT_NEWTON_HPP

// Exact Newton polygons: lower hulls over valuation sequences, slope algebra,
// product composition, factor-degree exclusion, and closed-form slope bounds.
// No floating point anywhere; slopes are rationals in lowest terms.

#include <gmpxx.h>

#include <set>
#include <utility>
#include <vector>

#include "lagcert/glp.hpp"
#include "lagcert/padic.hpp"

namespace lagcert {

struct polygon_edge {
    mpz_class run;    // positive
    mpz_class rise;   // may be negative
    mpq_class slope;  // rise/run, lowest terms
    bool operator==(const polygon_edge& o) const {
        return run == o.run && rise == o.rise && slope == o.slope;
    }
};

// Lower convex hull of the points (u, vals[u]). Index u corresponds to the
// coefficient of x^{n-u}, i.e. vals runs from the leading coefficient down to
// the constant term. Collinear points are merged, so edge slopes strictly
// increase left to right. Infinite points (zero coefficients) are skipped.
struct newton_polygon {
    mpz_class p;
    std::vector<std::pair<mpz_class, valuation_t>> points;  // as given
    std::vector<std::pair<mpz_class, mpz_class>> vertices;  // minimal hull chain
    std::vector<polygon_edge> edges;

    // shape equality: hull and prime only; the point cloud is not compared
    // (polygons made by dumas_compose carry no underlying points)
    bool operator==(const newton_polygon& o) const {
        return p == o.p && vertices == o.vertices && edges == o.edges;
    }
};

// Build from the valuation sequence. Both endpoints must be finite.
newton_polygon build(const mpz_class& p, const std::vector<valuation_t>& vals);

// mu_j = (nu_p(b_n) - nu_p(b_{n-j})) / j, 1 <= j <= n. Valuation-only.
mpq_class mu(const glp_instance& inst, const mpz_class& p, const mpz_class& j);

enum class slope_method { exhaustive, closed_form_bound };

struct slope_bound_report {
    mpz_class p;
    mpq_class max_slope;   // exact max for exhaustive, certified upper bound otherwise
    mpz_class attaining_j; // least attaining index; 0 in bound mode
    slope_method method;
};

// Right-most slope of the polygon, M_p = max_j mu_j. Exhaustive mode scans
// every j (needs n within the materialization bound). Bound mode returns
//   max{ u, (u+1)/p, 1/(p-1) + u/p^2 }   with u = nu_p(binom(n+r, r)),
// an upper envelope valid for any n: the three terms dominate mu_j on the
// ranges j < p, p <= j < p^2, and j >= p^2 respectively.
slope_bound_report max_slope(const glp_instance& inst, const mpz_class& p, slope_method mode);

// The non-negative integral edge slopes of the polygon. Asserts the
// divisibility criterion "slope 0 occurs iff p does not divide n(r+1)" as an
// internal cross-check.
std::set<unsigned long> integral_slopes(const glp_instance& inst, const mpz_class& p);

// Factor-degree exclusion: true when (i) p does not divide the leading
// coefficient, (ii) p divides b_j for every j in [l+1, n], and (iii) the
// right-most slope is < 1/k. Then no factor has degree in [l+1, k].
bool filaseta_excludes(const glp_instance& inst, const mpz_class& p, const mpz_class& l,
                       const mpz_class& k);

// Polygon of a product: union of the two edge multisets sorted by slope,
// starting at (0, sum of the leading valuations).
newton_polygon dumas_compose(const newton_polygon& a, const newton_polygon& b);

// lcm of the denominators of all edge slopes across the given primes
// (default: all p <= n+r; larger p give flat polygons).
mpz_class newton_index(const glp_instance& inst, const std::vector<mpz_class>& primes);
mpz_class newton_index(const glp_instance& inst);

}  // namespace lagcert

#endif
