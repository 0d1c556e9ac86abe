#pragma once

// Numerical monodromy of the six roots of 4x^3 - 3ax - b = +-1 along loops
// in the (a,b) moduli coordinates.
//
// A loop may close on the nose, or close only up to the residual rescaling
// (a,b) ~ (a,-b); in the latter case the two root triples are exchanged as
// sets (roots of P_{a,-b} -+ 1 are the negatives of the roots of
// P_{a,b} +- 1), which is what the `swapped` flag records.  Tracking is
// nearest-neighbour continuation with adaptive midpoint refinement, so the
// only knobs are a matching tolerance and a refinement budget.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "group.hpp"
#include "moduli.hpp"

namespace k3mono {

constexpr double kTrackTol = 1e-9;

struct LoopPath {
    std::vector<std::array<double, 4>> samples;  // re a, im a, re b, im b
    long long refinement_limit = 1 << 20;        // total samples processed
    std::string label;

    cplx a(std::size_t k) const { return {samples[k][0], samples[k][1]}; }
    cplx b(std::size_t k) const { return {samples[k][2], samples[k][3]}; }

    static LoopPath from_points(const std::vector<std::pair<cplx, cplx>>& pts,
                                std::string label = "") {
        LoopPath lp;
        lp.label = std::move(label);
        for (const auto& [a, b] : pts)
            lp.samples.push_back({a.real(), a.imag(), b.real(), b.imag()});
        return lp;
    }
};

enum class LoopClosure { Closed, Twisted };

// closure is decided by exact endpoint comparison; anything else is an error
inline LoopClosure loop_closure(const LoopPath& lp) {
    if (lp.samples.size() < 2) throw k3err("loop must have at least two samples");
    const auto& f = lp.samples.front();
    const auto& l = lp.samples.back();
    if (f[0] == l[0] && f[1] == l[1] && f[2] == l[2] && f[3] == l[3])
        return LoopClosure::Closed;
    if (f[0] == l[0] && f[1] == l[1] && f[2] == -l[2] && f[3] == -l[3])
        return LoopClosure::Twisted;
    throw k3err("loop is not closed, even up to (a,b) ~ (a,-b)");
}

// permutations of {0,1,2} rendered in 1-based cycle notation
inline std::string s3_cycle_string(const std::array<int, 3>& p) {
    const bool f0 = p[0] == 0, f1 = p[1] == 1, f2 = p[2] == 2;
    if (f0 && f1 && f2) return "()";
    if (f2 && !f0) return "(12)";
    if (f1 && !f0) return "(13)";
    if (f0 && !f1) return "(23)";
    return p[0] == 1 ? "(123)" : "(132)";
}

struct MonodromyStep {
    std::array<int, 3> sigma_minus{0, 1, 2};
    std::array<int, 3> sigma_plus{0, 1, 2};
    bool swapped = false;

    // positions 0..2 = labels of the roots of P-1 at the basepoint,
    // positions 3..5 = labels of the roots of P+1; entry k is where the root
    // starting at reference slot k ends up
    ActionTable to_s6() const {
        ActionTable t(6);
        for (int k = 0; k < 3; ++k) {
            t[std::size_t(k)] = swapped ? 3 + sigma_minus[std::size_t(k)]
                                        : sigma_minus[std::size_t(k)];
            t[std::size_t(3 + k)] = swapped ? sigma_plus[std::size_t(k)]
                                            : 3 + sigma_plus[std::size_t(k)];
        }
        return t;
    }

    static MonodromyStep from_s6(const ActionTable& t) {
        if (t.size() != 6) throw k3err("monodromy step wants a 6-table");
        MonodromyStep s;
        s.swapped = t[0] >= 3;
        for (int k = 0; k < 3; ++k) {
            const int im = t[std::size_t(k)], ip = t[std::size_t(3 + k)];
            if (s.swapped ? (im < 3 || ip >= 3) : (im >= 3 || ip < 3))
                throw k3err("monodromy step does not preserve the two-set partition");
            s.sigma_minus[std::size_t(k)] = s.swapped ? im - 3 : im;
            s.sigma_plus[std::size_t(k)] = s.swapped ? ip : ip - 3;
        }
        return s;
    }

    MonodromyStep inverse() const { return from_s6(invert_table(to_s6())); }

    // `then` applied after *this (left-to-right path concatenation)
    MonodromyStep compose_after(const MonodromyStep& then) const {
        return from_s6(compose_tables(then.to_s6(), to_s6()));
    }

    bool is_identity() const {
        return !swapped && sigma_minus == std::array<int, 3>{0, 1, 2} &&
               sigma_plus == std::array<int, 3>{0, 1, 2};
    }

    std::string str() const {
        std::string out = "(" + s3_cycle_string(sigma_minus) + ", " +
                          s3_cycle_string(sigma_plus) + ")";
        if (swapped) out += " * swap";
        return out;
    }

    // labeling-independent summary: cycle type of the 6-element action
    std::string cycle_type() const {
        ActionTable t = to_s6();
        std::vector<int> lens;
        std::array<bool, 6> seen{};
        for (int k = 0; k < 6; ++k) {
            if (seen[std::size_t(k)]) continue;
            int len = 0, c = k;
            while (!seen[std::size_t(c)]) { seen[std::size_t(c)] = true; c = t[std::size_t(c)]; ++len; }
            lens.push_back(len);
        }
        std::sort(lens.rbegin(), lens.rend());
        std::string out = "[";
        for (std::size_t k = 0; k < lens.size(); ++k)
            out += (k ? "," : "") + std::to_string(lens[k]);
        return out + "]";
    }
};

namespace detail {

struct TriState {
    std::array<cplx, 3> r{};
};

inline TriState solve_side(cplx a, cplx b, double s) {
    std::vector<cplx> roots = fibre_level_roots(a, b, s);
    TriState st;
    std::copy(roots.begin(), roots.end(), st.r.begin());
    return st;
}

inline double min_gap(const TriState& st) {
    double g = std::abs(st.r[0] - st.r[1]);
    g = std::min(g, std::abs(st.r[0] - st.r[2]));
    g = std::min(g, std::abs(st.r[1] - st.r[2]));
    return g;
}

// nearest-neighbour matching of the tracked triple onto the new triple;
// fails (returns false) when a root has two nearly equidistant candidates
inline bool match_triple(const TriState& cur, const TriState& nxt, double tol,
                         std::array<int, 3>& out) {
    std::array<bool, 3> used{};
    for (int k = 0; k < 3; ++k) {
        double d0 = -1.0, d1 = -1.0;  // best and runner-up over all candidates
        int best = -1;
        for (int m = 0; m < 3; ++m) {
            const double d = std::abs(cur.r[std::size_t(k)] - nxt.r[std::size_t(m)]);
            if (d0 < 0.0 || d < d0) {
                d1 = d0;
                d0 = d;
                best = m;
            } else if (d1 < 0.0 || d < d1) {
                d1 = d;
            }
        }
        if (d1 - d0 <= 10.0 * tol) return false;  // ambiguous
        if (used[std::size_t(best)]) return false;
        used[std::size_t(best)] = true;
        out[std::size_t(k)] = best;
    }
    return true;
}

}  // namespace detail

// Continue the two root triples along the loop and report the permutation
// picked up on return to the basepoint.
inline MonodromyStep track_loop(const LoopPath& loop, double tol = kTrackTol) {
    const LoopClosure closure = loop_closure(loop);

    // reference labels come from the canonically sorted basepoint roots
    std::vector<cplx> rm0v = fibre_level_roots(loop.a(0), loop.b(0), +1.0);
    std::vector<cplx> rp0v = fibre_level_roots(loop.a(0), loop.b(0), -1.0);
    sort_roots(rm0v);
    sort_roots(rp0v);
    detail::TriState rm0, rp0;
    std::copy(rm0v.begin(), rm0v.end(), rm0.r.begin());
    std::copy(rp0v.begin(), rp0v.end(), rp0.r.begin());

    detail::TriState cur_m = rm0, cur_p = rp0;
    long long budget = loop.refinement_limit;
    if (budget < (long long)loop.samples.size()) budget = (long long)loop.samples.size();
    long long processed = 0;

    // advance cur_m/cur_p from moduli point (pa,pb) to (qa,qb), splitting the
    // segment whenever matching is ambiguous or the roots moved too far
    struct Walker {
        double tol;
        long long budget;
        long long* processed;

        void check_point(cplx a, cplx b) const {
            if (side_degenerate(a, b, +1.0) || side_degenerate(a, b, -1.0))
                throw k3err("track_loop: degenerate point on path");
        }

        void advance(cplx pa, cplx pb, cplx qa, cplx qb, detail::TriState& cur_m,
                     detail::TriState& cur_p, int depth) const {
            if (++*processed > budget)
                throw k3err("track_loop: refinement limit exceeded (near-degenerate loop)");
            if (depth > 60) throw k3err("track_loop: segment refinement failed to settle");
            check_point(qa, qb);

            const detail::TriState nm = detail::solve_side(qa, qb, +1.0);
            const detail::TriState np = detail::solve_side(qa, qb, -1.0);

            std::array<int, 3> mm{}, mp{};
            bool ok = detail::match_triple(cur_m, nm, tol, mm) &&
                      detail::match_triple(cur_p, np, tol, mp);
            if (ok) {
                // refine when any root moved further than a third of the
                // smallest gap on its side
                double motion_m = 0.0, motion_p = 0.0;
                for (int k = 0; k < 3; ++k) {
                    motion_m = std::max(motion_m,
                                        std::abs(cur_m.r[std::size_t(k)] - nm.r[std::size_t(mm[std::size_t(k)])]));
                    motion_p = std::max(motion_p,
                                        std::abs(cur_p.r[std::size_t(k)] - np.r[std::size_t(mp[std::size_t(k)])]));
                }
                const double gate_m = std::min(detail::min_gap(cur_m), detail::min_gap(nm)) / 3.0;
                const double gate_p = std::min(detail::min_gap(cur_p), detail::min_gap(np)) / 3.0;
                if (motion_m <= gate_m && motion_p <= gate_p) {
                    detail::TriState nxt_m, nxt_p;
                    for (int k = 0; k < 3; ++k) {
                        nxt_m.r[std::size_t(k)] = nm.r[std::size_t(mm[std::size_t(k)])];
                        nxt_p.r[std::size_t(k)] = np.r[std::size_t(mp[std::size_t(k)])];
                    }
                    cur_m = nxt_m;
                    cur_p = nxt_p;
                    return;
                }
            }
            const cplx ma = (pa + qa) / 2.0, mb = (pb + qb) / 2.0;
            advance(pa, pb, ma, mb, cur_m, cur_p, depth + 1);
            advance(ma, mb, qa, qb, cur_m, cur_p, depth + 1);
        }
    } walker{tol, budget, &processed};

    walker.check_point(loop.a(0), loop.b(0));
    for (std::size_t k = 0; k + 1 < loop.samples.size(); ++k)
        walker.advance(loop.a(k), loop.b(k), loop.a(k + 1), loop.b(k + 1), cur_m,
                       cur_p, 0);

    // close up: match the tracked roots back onto the reference labels
    MonodromyStep step;
    std::array<int, 3> mm{}, mp{};
    if (closure == LoopClosure::Closed) {
        if (!detail::match_triple(cur_m, rm0, tol, mm) ||
            !detail::match_triple(cur_p, rp0, tol, mp))
            throw k3err("track_loop: ambiguous closure matching");
        step.swapped = false;
    } else {
        // endpoint is (a,-b): its P-1 roots are the negated P+1 roots of the
        // basepoint and vice versa, so match across the two sets
        detail::TriState neg_rp0, neg_rm0;
        for (int k = 0; k < 3; ++k) {
            neg_rp0.r[std::size_t(k)] = -rp0.r[std::size_t(k)];
            neg_rm0.r[std::size_t(k)] = -rm0.r[std::size_t(k)];
        }
        if (!detail::match_triple(cur_m, neg_rp0, tol, mm) ||
            !detail::match_triple(cur_p, neg_rm0, tol, mp))
            throw k3err("track_loop: ambiguous closure matching");
        step.swapped = true;
    }
    step.sigma_minus = mm;
    step.sigma_plus = mp;
    return step;
}

struct CoverReport {
    std::vector<MonodromyStep> steps;                          // one per loop
    std::vector<std::pair<std::string, std::string>> H;       // set-preserving part
    long long H_order = 1;
    long long G_order = 1;
    bool has_swap = false;
    std::string exact_sequence_note;
};

// Close the group generated by the tracked steps inside S6 and split off the
// set-preserving subgroup H; |G| is the degree of the cover that kills the
// monodromy.
inline CoverReport fundamental_group_run(const std::vector<LoopPath>& loops,
                                         double tol = kTrackTol) {
    if (loops.empty()) throw k3err("fundamental_group_run: need at least one loop");
    for (const auto& lp : loops) {
        if (lp.samples.empty()) throw k3err("fundamental_group_run: empty loop");
        for (int c = 0; c < 4; ++c)
            if (std::abs(lp.samples.front()[std::size_t(c)] -
                         loops.front().samples.front()[std::size_t(c)]) > 1e-12)
                throw k3err("fundamental_group_run: loops must share a basepoint");
    }

    CoverReport rep;
    std::vector<ActionTable> gens;
    for (const auto& lp : loops) {
        rep.steps.push_back(track_loop(lp, tol));
        gens.push_back(rep.steps.back().to_s6());
    }

    const GeneratedGroup G = close(gens, 128);
    rep.G_order = G.order();
    for (const auto& t : G.elements) {
        if (t[0] >= 3) {
            rep.has_swap = true;
            continue;
        }
        const MonodromyStep s = MonodromyStep::from_s6(t);
        rep.H.emplace_back(s3_cycle_string(s.sigma_minus), s3_cycle_string(s.sigma_plus));
    }
    rep.H_order = (long long)rep.H.size();
    rep.exact_sequence_note =
        rep.has_swap
            ? "set-exchanging loops present: H (set-preserving pairs) sits with index 2 in G"
            : "no set exchange observed: G equals the set-preserving group H";
    return rep;
}

// ---------------------------------------------------------------------------
// canned loops (closure is forced exactly by construction)

// circle of radius (ra, rb) about (a0, b0); a(0) = a0 and b(0) = b0 exactly
inline LoopPath make_circle_loop(cplx a0, cplx b0, double ra, double rb, int n,
                                 std::string label = "circle") {
    LoopPath lp;
    lp.label = std::move(label);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * 3.14159265358979323846 * double(k) / double(n);
        const cplx w{std::cos(th) - 1.0, std::sin(th)};  // e^{i th} - 1, zero at th = 0
        const cplx a = a0 + ra * w, b = b0 + rb * w;
        lp.samples.push_back({a.real(), a.imag(), b.real(), b.imag()});
    }
    lp.samples.push_back(lp.samples.front());
    return lp;
}

// the sigma = 1 locus (a,b) = (s^2, s^3) with s on a circle of the given
// radius about cbrt(1/2) + radius; the start point is to the right of the
// enclosed zero of 2s^3 - 1
inline LoopPath make_sigma1_loop(double radius = 0.05, int n = 256) {
    LoopPath lp;
    lp.label = "sigma1";
    const double s_star = std::cbrt(0.5);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * 3.14159265358979323846 * double(k) / double(n);
        const cplx s = s_star + radius * cplx{std::cos(th), std::sin(th)};
        const cplx a = s * s, b = s * s * s;
        lp.samples.push_back({a.real(), a.imag(), b.real(), b.imag()});
    }
    lp.samples.push_back(lp.samples.front());
    return lp;
}

// half turn of b about 0 at a = 0; ends at (a, -b), i.e. a twisted closure
inline LoopPath make_swap_loop(double b0 = 10.0, int n = 128) {
    LoopPath lp;
    lp.label = "swap";
    for (int k = 0; k < n; ++k) {
        const double th = 3.14159265358979323846 * double(k) / double(n);
        const cplx b = b0 * cplx{std::cos(th), std::sin(th)};
        lp.samples.push_back({0.0, 0.0, b.real(), b.imag()});
    }
    lp.samples.push_back({0.0, 0.0, -lp.samples.front()[2], -lp.samples.front()[3]});
    return lp;
}

// full turn of b about 0 at a = 0; an honest closed loop at the same basepoint
inline LoopPath make_full_b_loop(double b0 = 10.0, int n = 256) {
    LoopPath lp;
    lp.label = "full-b";
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * 3.14159265358979323846 * double(k) / double(n);
        const cplx b = b0 * cplx{std::cos(th), std::sin(th)};
        lp.samples.push_back({0.0, 0.0, b.real(), b.imag()});
    }
    lp.samples.push_back(lp.samples.front());
    return lp;
}

// doubling the sample count of a polyline keeps the same homotopy class
inline LoopPath refine_loop(const LoopPath& lp) {
    LoopPath out;
    out.label = lp.label;
    out.refinement_limit = lp.refinement_limit;
    for (std::size_t k = 0; k + 1 < lp.samples.size(); ++k) {
        const auto& p = lp.samples[k];
        const auto& q = lp.samples[k + 1];
        out.samples.push_back(p);
        out.samples.push_back({(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0,
                               (p[2] + q[2]) / 2.0, (p[3] + q[3]) / 2.0});
    }
    out.samples.push_back(lp.samples.back());
    return out;
}

// ---------------------------------------------------------------------------
// applicability of the six-fibre method along a sampled family

struct AssumptionReport {
    bool ok = true;
    bool identically_degenerate = false;
    long long first_bad_index = -1;
    std::string message;
};

inline AssumptionReport assumption_check(const std::vector<MPoint>& path) {
    AssumptionReport rep;
    if (path.empty()) return rep;
    std::size_t bad = 0, first_bad = path.size();
    for (std::size_t k = 0; k < path.size(); ++k) {
        const MPoint q = normalize(path[k]);
        if (side_degenerate(q.a, q.b, +1.0) || side_degenerate(q.a, q.b, -1.0)) {
            ++bad;
            if (first_bad == path.size()) first_bad = k;
        }
    }
    if (bad == 0) return rep;
    rep.ok = false;
    rep.first_bad_index = (long long)first_bad;
    if (bad == path.size() && path.size() >= 2) {
        rep.identically_degenerate = true;
        rep.message =
            "method inapplicable: family lies in the degenerate locus; "
            "use the two-parameter M1 covering route";
    } else {
        rep.message = "degenerate point on path (index " + std::to_string(first_bad) + ")";
    }
    return rep;
}

}  // namespace k3mono
