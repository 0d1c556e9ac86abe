#pragma once

// Deterministic complex root finding for the small polynomials that show up
// here (cubics for the fibre equations, degree <= 12 for ramification data).
//
// Durand-Kerner simultaneous iteration from a fixed seed spiral, followed by
// a few Newton polish steps.  No randomness anywhere, so repeated runs give
// bit-identical output.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lattice.hpp"

namespace k3mono {

using cplx = std::complex<double>;

// coefficients ascending: c[0] + c[1] z + c[2] z^2 + ...
inline cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline std::vector<cplx> poly_derivative(const std::vector<cplx>& c) {
    std::vector<cplx> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(double(k) * c[k]);
    if (d.empty()) d.push_back(cplx{0.0, 0.0});
    return d;
}

// All roots, in the order the iteration produces them (stable across runs).
inline std::vector<cplx> poly_roots(std::vector<cplx> coeff, double tol = 1e-13) {
    while (coeff.size() > 1 && std::abs(coeff.back()) == 0.0) coeff.pop_back();
    if (coeff.size() <= 1) throw k3err("poly_roots: degree must be >= 1");
    const std::size_t deg = coeff.size() - 1;
    if (deg > 24) throw k3err("poly_roots: degree too large");

    const cplx lead = coeff.back();
    for (auto& c : coeff) c /= lead;

    // seeds (0.4+0.9i)^(k+1); not a root of unity, spreads nicely
    std::vector<cplx> z(deg);
    const cplx seed{0.4, 0.9};
    cplx p = seed;
    for (std::size_t k = 0; k < deg; ++k) { z[k] = p; p *= seed; }

    const int kMaxIter = 600;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            cplx denom{1.0, 0.0};
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) == 0.0) denom = cplx{tol, tol};
            const cplx step = poly_eval(coeff, z[i]) / denom;
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (worst < tol) break;
    }

    // polish; keep a step only if it actually lowers the residual
    const std::vector<cplx> dc = poly_derivative(coeff);
    for (auto& r : z) {
        for (int k = 0; k < 4; ++k) {
            const cplx pv = poly_eval(coeff, r);
            const cplx dv = poly_eval(dc, r);
            if (std::abs(dv) == 0.0) break;
            const cplx cand = r - pv / dv;
            if (std::abs(poly_eval(coeff, cand)) <= std::abs(pv)) r = cand;
            else break;
        }
    }
    return z;
}

// lexicographic by (re, im); deterministic even for conjugate pairs
inline void sort_roots(std::vector<cplx>& v) {
    std::sort(v.begin(), v.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

} // namespace k3mono
