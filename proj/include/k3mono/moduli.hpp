#pragma once

// Moduli arithmetic for M- and M_n-polarized K3 families.
//
// Coordinates (a,b,d) live on the locus d != 0 of a weighted projective
// space, with rescaling (a,b,d) ~ (l^2 a, l^3 b, l^6 d).  On the d = 1 slice
// the invariants are sigma = a^3 - b^2 + 1 and pi = a^3, and the pair of
// cubics 4x^3 - 3ax - b = +-1 carries the fibre data for the alternate
// elliptic fibrations.  The one-parameter M1 family and the generalized
// functional invariant maps lambda = A u^{i+j} / (t^i (u-t)^j) live here too.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "polyroots.hpp"

namespace k3mono {

constexpr double kRootResidualTol = 1e-10;  // |cubic(root)| acceptance
constexpr double kDegTol = 1e-8;            // scaled discriminant threshold

struct MPoint {
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
    cplx d{1.0, 0.0};
};

// integer powers by repeated multiplication; no pow() branch-cut surprises
inline cplx cpow(cplx z, int k) {
    cplx acc{1.0, 0.0};
    for (int i = 0; i < k; ++i) acc *= z;
    return acc;
}

// principal l = d^(-1/6) lands on the d = 1 slice
inline MPoint normalize(const MPoint& p) {
    if (std::abs(p.d) == 0.0) throw k3err("normalize: d must be nonzero");
    const cplx lam = std::pow(p.d, cplx{-1.0 / 6.0, 0.0});
    return MPoint{lam * lam * p.a, lam * lam * lam * p.b, cplx{1.0, 0.0}};
}

inline void require_normalized(const MPoint& p, const char* who) {
    if (std::abs(p.d - cplx{1.0, 0.0}) > 1e-12)
        throw k3err(std::string(who) + ": point must be normalized (d = 1)");
}

struct SigmaPi {
    cplx sigma{0.0, 0.0};
    cplx pi{0.0, 0.0};
    std::array<cplx, 2> j_roots{};  // roots of j^2 - sigma j + pi, sorted (re, im)
};

inline SigmaPi sigma_pi(cplx a, cplx b) {
    SigmaPi out;
    out.sigma = a * a * a - b * b + cplx{1.0, 0.0};
    out.pi = a * a * a;
    std::vector<cplx> r = poly_roots({out.pi, -out.sigma, cplx{1.0, 0.0}});
    sort_roots(r);
    out.j_roots = {r[0], r[1]};
    return out;
}

inline SigmaPi sigma_pi(const MPoint& p) {
    require_normalized(p, "sigma_pi");
    return sigma_pi(p.a, p.b);
}

// roots of 4x^3 - 3ax - b = s, i.e. of the cubic 4x^3 - 3ax - (b+s)
inline std::vector<cplx> fibre_level_roots(cplx a, cplx b, double s) {
    return poly_roots({-(b + s), -3.0 * a, cplx{0.0, 0.0}, cplx{4.0, 0.0}});
}

// scale-aware test for a^3 = (b+s)^2; that is exactly when the cubic above
// picks up a repeated root
inline bool side_degenerate(cplx a, cplx b, double s, double tol = kDegTol) {
    const cplx a3 = a * a * a;
    const cplx c2 = (b + s) * (b + s);
    const double scale = std::max({1.0, std::abs(a3), std::abs(c2)});
    return std::abs(a3 - c2) <= tol * scale;
}

struct FibreRoots {
    std::array<cplx, 3> minus{};      // roots of P(x) - 1, P(x) = 4x^3 - 3ax - b
    std::array<cplx, 3> plus{};       // roots of P(x) + 1
    bool minus_degenerate = false;    // a^3 = (b+1)^2
    bool plus_degenerate = false;     // a^3 = (b-1)^2
    bool degenerate() const { return minus_degenerate || plus_degenerate; }
};

inline FibreRoots alternate_fibre_roots(cplx a, cplx b, double tol = kDegTol) {
    FibreRoots out;
    std::vector<cplx> rm = fibre_level_roots(a, b, +1.0);
    std::vector<cplx> rp = fibre_level_roots(a, b, -1.0);
    sort_roots(rm);
    sort_roots(rp);
    std::copy(rm.begin(), rm.end(), out.minus.begin());
    std::copy(rp.begin(), rp.end(), out.plus.begin());
    out.minus_degenerate = side_degenerate(a, b, +1.0, tol);
    out.plus_degenerate = side_degenerate(a, b, -1.0, tol);
    return out;
}

inline FibreRoots alternate_fibre_roots(const MPoint& p, double tol = kDegTol) {
    require_normalized(p, "alternate_fibre_roots");
    return alternate_fibre_roots(p.a, p.b, tol);
}

// ---------------------------------------------------------------------------
// the one-parameter M1 family

struct M1Point {
    MPoint point;          // (1, gamma+1, gamma^2), deliberately unnormalized
    cplx gamma{0.0, 0.0};
    bool smooth = true;    // false over gamma in {0, -1}; gamma = inf is the pole
};

inline M1Point m1_family(cplx alpha, cplx beta) {
    const cplx den = 4.0 * beta - cplx{1.0, 0.0};
    if (std::abs(den) == 0.0) throw k3err("m1_family: pole at beta = 1/4");
    const cplx gamma = 1728.0 * alpha / (den * den * den);
    M1Point out;
    out.gamma = gamma;
    out.point = MPoint{cplx{1.0, 0.0}, gamma + cplx{1.0, 0.0}, gamma * gamma};
    out.smooth = std::abs(gamma) > kDegTol && std::abs(gamma + cplx{1.0, 0.0}) > kDegTol;
    return out;
}

// ---------------------------------------------------------------------------
// generalized functional invariants

struct FunctionalInvariant {
    int i = 1;
    int j = 1;
    cplx A{1.0, 0.0};            // deformation parameter
    int n = 1;                   // target curve level; 0 means the sigma = 1 locus
    bool toric = true;
    std::string classification;  // "Arithmetic" or "Thin"
};

// thin exactly when neither branching order equals 2
inline bool thin_predicate(int i, int j) { return i != 2 && j != 2; }
inline bool thin_predicate(const FunctionalInvariant& fi) {
    return thin_predicate(fi.i, fi.j);
}

struct LambdaValue {
    cplx value{0.0, 0.0};
    bool infinite = false;
};

// lambda = A u^{i+j} / (t^i (u-t)^j); poles reported as infinite values
inline LambdaValue functional_invariant_map(const FunctionalInvariant& fi, cplx t, cplx u) {
    if (fi.i < 1 || fi.j < 1) throw k3err("functional_invariant_map: need i, j >= 1");
    if (std::abs(t) == 0.0 && std::abs(u) == 0.0)
        throw k3err("functional_invariant_map: (t,u) = (0,0) is not a point");
    const cplx den = cpow(t, fi.i) * cpow(u - t, fi.j);
    if (std::abs(den) == 0.0)
        return {cplx{std::numeric_limits<double>::infinity(), 0.0}, true};
    return {fi.A * cpow(u, fi.i + fi.j) / den, false};
}

struct RamPoint {
    cplx t{0.0, 0.0};            // point (t : u) on the source P^1
    cplx u{1.0, 0.0};
    cplx lambda{0.0, 0.0};       // target value (ignored when infinite)
    bool lambda_infinite = false;
    int order = 1;               // local branching order
};

struct RamificationProfile {
    int i = 1;
    int j = 1;
    cplx A{1.0, 0.0};
    cplx critical_value{0.0, 0.0};  // lambda at the unique simple critical point
    std::vector<RamPoint> points;   // full fibres over lambda = inf, 0, critical_value

    // local orders over each target value must sum to the degree i+j
    bool orders_consistent() const {
        long long inf_sum = 0, zero_sum = 0, crit_sum = 0;
        for (const auto& p : points) {
            if (p.lambda_infinite) inf_sum += p.order;
            else if (std::abs(p.lambda) <= 1e-9 * (1.0 + std::abs(critical_value)))
                zero_sum += p.order;
            else crit_sum += p.order;
        }
        const long long deg = i + j;
        return inf_sum == deg && zero_sum == deg && crit_sum == deg;
    }
};

namespace detail {
inline double binom(int n, int k) {
    double acc = 1.0;
    for (int m = 1; m <= k; ++m) acc = acc * double(n - k + m) / double(m);
    return acc;
}
}  // namespace detail

// Branch points of lambda: t = 0 to order i and t = u to order j over
// lambda = inf, the point (1:0) to full order i+j over lambda = 0, and one
// simple critical point t* = iu/(i+j) over A (i+j)^{i+j} / (i^i j^j).  The
// remaining i+j-2 preimages of the critical value are simple and are listed
// so that fibre orders always sum to the degree.
inline RamificationProfile ramification_profile(const FunctionalInvariant& fi) {
    const int i = fi.i, j = fi.j;
    if (i < 1 || j < 1) throw k3err("ramification_profile: need i, j >= 1");
    if (i + j > 12) throw k3err("ramification_profile: degree i+j must be <= 12");

    RamificationProfile out;
    out.i = i;
    out.j = j;
    out.A = fi.A;

    const double ii = std::pow(double(i), double(i));
    const double jj = std::pow(double(j), double(j));
    const double nn = std::pow(double(i + j), double(i + j));
    out.critical_value = fi.A * nn / (ii * jj);

    out.points.push_back({cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}, true, i});
    out.points.push_back({cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}, true, j});
    out.points.push_back({cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, false, i + j});

    const cplx tstar{double(i) / double(i + j), 0.0};
    out.points.push_back({tstar, cplx{1.0, 0.0}, out.critical_value, false, 2});

    // simple preimages of the critical value: the other roots of
    // t^i (1-t)^j - i^i j^j / (i+j)^{i+j}  (the A's cancel)
    if (i + j > 2) {
        std::vector<cplx> coeff(std::size_t(i + j) + 1, cplx{0.0, 0.0});
        for (int m = 0; m <= j; ++m)
            coeff[std::size_t(i + m)] += detail::binom(j, m) * ((m % 2 == 0) ? 1.0 : -1.0);
        coeff[0] -= ii * jj / nn;
        std::vector<cplx> roots = poly_roots(coeff);

        // the double root at t* shows up twice; drop the two nearest copies
        for (int drop = 0; drop < 2; ++drop) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < roots.size(); ++k)
                if (std::abs(roots[k] - tstar) < std::abs(roots[best] - tstar)) best = k;
            if (std::abs(roots[best] - tstar) > 1e-5)
                throw k3err("ramification_profile: lost track of the double root");
            roots.erase(roots.begin() + long(best));
        }
        sort_roots(roots);
        for (const cplx& r : roots) {
            const LambdaValue lv = functional_invariant_map(fi, r, cplx{1.0, 0.0});
            if (lv.infinite ||
                std::abs(lv.value - out.critical_value) >
                    1e-9 * (1.0 + std::abs(out.critical_value)))
                throw k3err("ramification_profile: simple preimage failed verification");
            out.points.push_back({r, cplx{1.0, 0.0}, lv.value, false, 1});
        }
    }

    // cross-check the critical value against a direct evaluation at t*
    const LambdaValue at_star = functional_invariant_map(fi, tstar, cplx{1.0, 0.0});
    if (at_star.infinite ||
        std::abs(at_star.value - out.critical_value) >
            1e-9 * (1.0 + std::abs(out.critical_value)))
        throw k3err("ramification_profile: critical value failed verification");

    return out;
}

}  // namespace k3mono
