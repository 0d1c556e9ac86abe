#pragma once

// JSON (de)serialization for the CLI and the test harness.  Complex numbers
// travel as [re, im]; loops as flat 4-tuples per sample; permutations of the
// pencil curves in name-based cycle notation.

#include <string>
#include <vector>

#include "json.hpp"
#include "lattice.hpp"
#include "monodromy.hpp"
#include "pencil.hpp"

namespace k3mono {

using ojson = nlohmann::ordered_json;

inline ojson cplx_to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw k3err("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ojson lattice_to_json(const Lattice& L) {
    ojson g = ojson::array();
    for (const auto& row : L.gram) {
        ojson r = ojson::array();
        for (const auto& v : row) r.push_back((long long)v);
        g.push_back(std::move(r));
    }
    return ojson{{"gram", std::move(g)}, {"label", L.label}};
}

inline IntMat intmat_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw k3err("expected a nonempty matrix");
    IntMat m;
    for (const auto& row : j) {
        if (!row.is_array()) throw k3err("matrix rows must be arrays");
        std::vector<BigInt> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw k3err("matrix entries must be integers");
            r.emplace_back(v.get<long long>());
        }
        m.push_back(std::move(r));
    }
    return m;
}

inline Lattice lattice_from_json(const nlohmann::json& j) {
    Lattice L;
    L.gram = intmat_from_json(j.at("gram"));
    if (j.contains("label")) L.label = j.at("label").get<std::string>();
    return L;
}

inline ojson loop_to_json(const LoopPath& lp) {
    ojson samples = ojson::array();
    for (const auto& s : lp.samples)
        samples.push_back(ojson::array({s[0], s[1], s[2], s[3]}));
    return ojson{{"samples", std::move(samples)}, {"label", lp.label}};
}

inline LoopPath loop_from_json(const nlohmann::json& j) {
    LoopPath lp;
    for (const auto& s : j.at("samples")) {
        if (!s.is_array() || s.size() != 4)
            throw k3err("loop samples must be [re_a, im_a, re_b, im_b]");
        lp.samples.push_back({s[0].get<double>(), s[1].get<double>(),
                              s[2].get<double>(), s[3].get<double>()});
    }
    if (j.contains("label")) lp.label = j.at("label").get<std::string>();
    if (j.contains("refinement_limit"))
        lp.refinement_limit = j.at("refinement_limit").get<long long>();
    return lp;
}

inline ojson cover_report_to_json(const CoverReport& rep) {
    ojson H = ojson::array();
    for (const auto& [m, p] : rep.H) H.push_back(ojson::array({m, p}));
    return ojson{{"H", std::move(H)}, {"G_order", rep.G_order}, {"has_swap", rep.has_swap}};
}

// name-based cycle notation over a fixed vertex list, e.g. "(F1 F2)(H2 H3)"
inline ActionTable perm_from_cycles(const std::vector<std::string>& names,
                                    const std::string& text) {
    ActionTable t(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) t[k] = int(k);
    auto index_of = [&names](const std::string& nm) {
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == nm) return int(k);
        throw k3err("cycle notation names unknown curve '" + nm + "'");
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace((unsigned char)text[pos])) { ++pos; continue; }
        if (text[pos] != '(') throw k3err("cycle notation: expected '('");
        const std::size_t close = text.find(')', pos);
        if (close == std::string::npos) throw k3err("cycle notation: unbalanced '('");
        std::vector<int> cyc;
        std::string cur;
        for (std::size_t q = pos + 1; q <= close; ++q) {
            if (q == close || std::isspace((unsigned char)text[q]) || text[q] == ',') {
                if (!cur.empty()) { cyc.push_back(index_of(cur)); cur.clear(); }
            } else {
                cur += text[q];
            }
        }
        for (std::size_t q = 0; q + 1 < cyc.size(); ++q)
            t[std::size_t(cyc[q])] = cyc[q + 1];
        if (cyc.size() > 1) t[std::size_t(cyc.back())] = cyc.front();
        pos = close + 1;
    }
    std::vector<bool> hit(names.size(), false);
    for (int v : t) {
        if (hit[std::size_t(v)]) throw k3err("cycle notation: repeated curve");
        hit[std::size_t(v)] = true;
    }
    return t;
}

inline std::string perm_to_cycles(const std::vector<std::string>& names,
                                  const ActionTable& t) {
    std::string out;
    std::vector<bool> seen(t.size(), false);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (seen[k] || t[k] == int(k)) continue;
        out += "(";
        std::size_t c = k;
        bool first = true;
        while (!seen[c]) {
            seen[c] = true;
            out += (first ? "" : " ") + names[c];
            first = false;
            c = std::size_t(t[c]);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

}  // namespace k3mono
