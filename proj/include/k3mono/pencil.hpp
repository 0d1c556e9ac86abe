#pragma once

// The double Kummer pencil: twenty-four (-2)-curves G_0..G_3, H_0..H_3,
// E_00..E_33, extended by the fibre components F_3..F_8 of the alternate
// elliptic fibration (F_1 = E_02 and F_2 = E_03 are already in the pencil).
// On top of that: the constraint checker for monodromy permutations, the
// enumeration of all accepted permutations, and the Nikulin lattice
// generated by F_1..F_8 together with the half-sum B.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "disc_form.hpp"
#include "group.hpp"
#include "lattice.hpp"

namespace k3mono {

struct PencilGraph {
    std::vector<std::string> names;
    IntMat gram;

    int index_of(const std::string& name) const {
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == name) return int(k);
        throw k3err("pencil: unknown curve '" + name + "'");
    }
};

// vertex layout: G0..G3 = 0..3, H0..H3 = 4..7, E_ij = 8 + 4i + j,
// F3..F8 = 24..29; F1 and F2 are the vertices E02 = 10 and E03 = 11
constexpr int kPencilF1 = 10;
constexpr int kPencilF2 = 11;
inline int pencil_e_index(int i, int j) { return 8 + 4 * i + j; }
inline int pencil_f_index(int k) {  // k = 1..8
    if (k == 1) return kPencilF1;
    if (k == 2) return kPencilF2;
    return 21 + k;  // F3 -> 24 ... F8 -> 29
}

inline PencilGraph build_pencil() {
    PencilGraph g;
    for (int k = 0; k < 4; ++k) g.names.push_back("G" + std::to_string(k));
    for (int k = 0; k < 4; ++k) g.names.push_back("H" + std::to_string(k));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g.names.push_back("E" + std::to_string(i) + std::to_string(j));
    g.gram = zero_mat(24, 24);
    for (int k = 0; k < 24; ++k) g.gram[k][k] = -2;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            g.gram[i][pencil_e_index(i, j)] = 1;  // G_k . E_ij = delta_ik
            g.gram[pencil_e_index(i, j)][i] = 1;
            g.gram[4 + j][pencil_e_index(i, j)] = 1;  // H_k . E_ij = delta_jk
            g.gram[pencil_e_index(i, j)][4 + j] = 1;
        }
    return g;
}

// the pencil plus the six extra fibre components and the section incidences
inline PencilGraph build_extended_pencil() {
    PencilGraph g = build_pencil();
    for (int k = 3; k <= 8; ++k) g.names.push_back("F" + std::to_string(k));
    IntMat big = zero_mat(30, 30);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) big[i][j] = g.gram[i][j];
    for (int k = 24; k < 30; ++k) big[k][k] = -2;
    for (int k = 3; k <= 8; ++k) {  // the section G3 meets every fibre component
        big[3][pencil_f_index(k)] = 1;
        big[pencil_f_index(k)][3] = 1;
    }
    for (int k = 3; k <= 5; ++k) {  // H2 meets the triple attached to F1
        big[6][pencil_f_index(k)] = 1;
        big[pencil_f_index(k)][6] = 1;
    }
    for (int k = 6; k <= 8; ++k) {  // H3 meets the triple attached to F2
        big[7][pencil_f_index(k)] = 1;
        big[pencil_f_index(k)][7] = 1;
    }
    g.gram = std::move(big);
    return g;
}

struct AltLabels {
    std::vector<std::pair<std::string, std::string>> labels;  // R/S/F name -> curve
    std::vector<std::pair<std::string, std::string>> edges;   // section incidences
    std::string f_triple_convention;
};

inline AltLabels alternate_fibration_labels() {
    AltLabels out;
    out.labels = {
        {"R1", "G2"},  {"R2", "E20"}, {"R3", "H0"},  {"R4", "E30"},
        {"R5", "E10"}, {"R6", "G1"},  {"R7", "E11"}, {"R8", "H1"},
        {"R9", "E01"}, {"S~1", "G0"}, {"F1", "E02"}, {"F2", "E03"},
    };
    for (int k = 3; k <= 8; ++k) out.edges.emplace_back("G3", "F" + std::to_string(k));
    out.edges.emplace_back("H2", "F1");
    for (int k = 3; k <= 5; ++k) out.edges.emplace_back("H2", "F" + std::to_string(k));
    out.edges.emplace_back("H3", "F2");
    for (int k = 6; k <= 8; ++k) out.edges.emplace_back("H3", "F" + std::to_string(k));
    out.f_triple_convention =
        "labeling convention: the triple {F3,F4,F5} is attached to the fibration "
        "side carrying F1 = E02 (all meet H2); {F6,F7,F8} to the side carrying "
        "F2 = E03 (all meet H3)";
    return out;
}

struct ConstraintResult {
    bool ok = true;
    std::vector<std::string> violations;
};

// A candidate monodromy action on the 30 curves is admissible iff it fixes
// the nine R-curves and the section pointwise, fixes G3, preserves the
// intersection form, and moves F1..F8 in one of the two allowed shapes:
// everything set-wise fixed, or the full exchange F1<->F2, H2<->H3,
// {F3,F4,F5} <-> {F6,F7,F8}.
inline ConstraintResult check_monodromy_constraints(const PencilGraph& g,
                                                    const ActionTable& perm) {
    ConstraintResult res;
    auto flag = [&res](const std::string& v) {
        res.ok = false;
        res.violations.push_back(v);
    };

    if (g.names.size() != 30 || g.gram.size() != 30)
        throw k3err("check_monodromy_constraints: wants the 30-vertex extended pencil");
    if (perm.size() != 30) throw k3err("check_monodromy_constraints: permutation must have 30 entries");
    std::vector<bool> hit(30, false);
    for (int v : perm) {
        if (v < 0 || v >= 30 || hit[std::size_t(v)])
            throw k3err("check_monodromy_constraints: not a permutation");
        hit[std::size_t(v)] = true;
    }

    // curve types must be preserved (G to G, H to H, E to E, F to F)
    for (int k = 0; k < 30; ++k)
        if (g.names[std::size_t(k)][0] != g.names[std::size_t(perm[std::size_t(k)])][0]) {
            flag("curve types not preserved (" + g.names[std::size_t(k)] + " -> " +
                 g.names[std::size_t(perm[std::size_t(k)])] + ")");
            break;
        }

    const std::array<int, 10> fixed10 = {0, 1, 2, 4, 5,
                                         pencil_e_index(0, 1), pencil_e_index(1, 0),
                                         pencil_e_index(1, 1), pencil_e_index(2, 0),
                                         pencil_e_index(3, 0)};
    for (int idx : fixed10)
        if (perm[std::size_t(idx)] != idx) {
            flag("must fix the curve " + g.names[std::size_t(idx)]);
        }
    if (perm[3] != 3) flag("must fix the section G3");

    bool form_ok = true;
    for (int i = 0; i < 30 && form_ok; ++i)
        for (int j = 0; j < 30; ++j)
            if (g.gram[std::size_t(perm[std::size_t(i)])][std::size_t(perm[std::size_t(j)])] !=
                g.gram[std::size_t(i)][std::size_t(j)]) {
                flag("intersection form not preserved (" + g.names[std::size_t(i)] + "." +
                     g.names[std::size_t(j)] + ")");
                form_ok = false;
                break;
            }

    auto maps_set = [&perm](const std::array<int, 3>& from, const std::array<int, 3>& to) {
        std::array<int, 3> img{perm[std::size_t(from[0])], perm[std::size_t(from[1])],
                               perm[std::size_t(from[2])]};
        std::array<int, 3> want = to;
        std::sort(img.begin(), img.end());
        std::sort(want.begin(), want.end());
        return img == want;
    };
    const std::array<int, 3> tripA = {24, 25, 26}, tripB = {27, 28, 29};
    const bool plain = perm[kPencilF1] == kPencilF1 && perm[kPencilF2] == kPencilF2 &&
                       maps_set(tripA, tripA) && maps_set(tripB, tripB);
    const bool full_swap = perm[kPencilF1] == kPencilF2 && perm[kPencilF2] == kPencilF1 &&
                           perm[6] == 7 && perm[7] == 6 && maps_set(tripA, tripB) &&
                           maps_set(tripB, tripA);
    if (!plain && !full_swap)
        flag("F-action matches neither admissible shape (fix F1,F2 and both triples, "
             "or exchange F1<->F2, H2<->H3 and the triples)");

    return res;
}

// All admissible actions.  The candidate space: the 720 ways to permute
// F3..F8, times the choice of exchanging the two fibrations; the exchange
// forces H2<->H3 and the column swap E_i2 <-> E_i3 on the pencil.
inline std::vector<ActionTable> enumerate_accepted(const PencilGraph& g) {
    std::vector<ActionTable> accepted;
    for (int swap = 0; swap < 2; ++swap) {
        ActionTable base(30);
        for (int k = 0; k < 30; ++k) base[std::size_t(k)] = k;
        if (swap) {
            std::swap(base[6], base[7]);  // H2 <-> H3
            for (int i = 0; i < 4; ++i)
                std::swap(base[std::size_t(pencil_e_index(i, 2))],
                          base[std::size_t(pencil_e_index(i, 3))]);
        }
        std::array<int, 6> targets = {24, 25, 26, 27, 28, 29};
        std::sort(targets.begin(), targets.end());
        do {
            ActionTable cand = base;
            for (int k = 0; k < 6; ++k) cand[std::size_t(24 + k)] = targets[std::size_t(k)];
            if (check_monodromy_constraints(g, cand).ok) accepted.push_back(cand);
        } while (std::next_permutation(targets.begin(), targets.end()));
    }
    return accepted;
}

// restriction of a set-preserving action to the six extra fibre components
inline ActionTable restrict_to_f_triples(const ActionTable& perm) {
    ActionTable t(6);
    for (int k = 0; k < 6; ++k) {
        const int img = perm[std::size_t(24 + k)];
        if (img < 24) throw k3err("restrict_to_f_triples: action moves F-curves off the F-set");
        t[std::size_t(k)] = img - 24;
    }
    return t;
}

// ---------------------------------------------------------------------------
// the Nikulin lattice on basis {F1..F7, B}, where 2B = F1 + ... + F8

inline Lattice build_nikulin() {
    Lattice L;
    L.label = "Nikulin";
    L.gram = zero_mat(8, 8);
    for (int k = 0; k < 7; ++k) L.gram[k][k] = -2;
    L.gram[7][7] = -4;
    for (int k = 0; k < 7; ++k) {
        L.gram[k][7] = -1;
        L.gram[7][k] = -1;
    }
    return L;
}

// F8 = 2B - (F1 + ... + F7) in the chosen basis
inline std::vector<BigInt> nikulin_f_vector(int k) {  // k = 1..8
    std::vector<BigInt> v(8, 0);
    if (k >= 1 && k <= 7) {
        v[std::size_t(k - 1)] = 1;
    } else if (k == 8) {
        for (int i = 0; i < 7; ++i) v[std::size_t(i)] = -1;
        v[7] = 2;
    } else {
        throw k3err("nikulin_f_vector: k must be 1..8");
    }
    return v;
}

// count the vectors of square -2 with all coordinates in [-box, box];
// the sixteen +-F_i are the only ones for box = 3
inline long long nikulin_minus2_count(int box = 3) {
    long long count = 0;
    std::array<int, 8> c{};
    // Q(c) = -2*(c1^2+..+c7^2) - 4*c8^2 - 2*c8*(c1+..+c7)
    std::function<void(int, long long, long long)> rec = [&](int pos, long long s, long long q) {
        if (pos == 7) {
            for (int c8 = -box; c8 <= box; ++c8)
                if (-2 * q - 4 * (long long)c8 * c8 - 2 * (long long)c8 * s == -2) ++count;
            return;
        }
        for (int v = -box; v <= box; ++v) {
            c[std::size_t(pos)] = v;
            rec(pos + 1, s + v, q + (long long)v * v);
        }
    };
    rec(0, 0, 0);
    return count;
}

// An admissible action permutes F1..F8; send each basis vector to the image
// F-vector and keep B fixed (B is half the sum, so any F-permutation fixes it).
inline IntMat nikulin_isometry_from_action(const ActionTable& perm) {
    if (perm.size() != 30) throw k3err("nikulin_isometry_from_action: wants a 30-vertex action");
    std::array<int, 8> image{};  // permutation of {1..8}
    for (int k = 1; k <= 8; ++k) {
        const int img = perm[std::size_t(pencil_f_index(k))];
        int m = 0;
        for (m = 1; m <= 8; ++m)
            if (pencil_f_index(m) == img) break;
        if (m > 8) throw k3err("nikulin_isometry_from_action: action does not preserve {F1..F8}");
        image[std::size_t(k - 1)] = m;
    }
    IntMat M = zero_mat(8, 8);
    for (int j = 0; j < 7; ++j) {
        const std::vector<BigInt> v = nikulin_f_vector(image[std::size_t(j)]);
        for (int r = 0; r < 8; ++r) M[std::size_t(r)][std::size_t(j)] = v[std::size_t(r)];
    }
    M[7][7] = 1;  // B -> B
    return M;
}

}  // namespace k3mono
