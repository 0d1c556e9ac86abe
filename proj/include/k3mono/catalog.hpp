#pragma once

// The fibration catalog: which Calabi-Yau threefolds carry M_n- or
// M-polarized K3 fibrations, with branching orders (i,j), the torically
// induced flag, and the arithmetic/thin classification; plus the five
// two-parameter (alpha, beta) maps realizing the M1 rows.
//
// The rows live in data/catalog.jsonl; an identical embedded copy is used
// when the file is not reachable (installed binaries, bare test runs).

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "moduli.hpp"

namespace k3mono {

struct CatalogRow {
    std::string lattice;    // "M1".."M4" or "M"
    std::string threefold;  // label as printed, e.g. "WP(1,1,1,1,2)[6]"
    FunctionalInvariant fi;
};

// one row of the (alpha, beta) table; gamma must equal 1728*alpha/(4*beta-1)^3
struct M1MapRow {
    std::string threefold;
    std::string alpha_str, beta_str, gamma_str;
    std::function<cplx(cplx A, cplx t, cplx u, cplx k)> alpha, beta, gamma;
};

struct Catalog {
    std::vector<CatalogRow> rows;
    std::vector<M1MapRow> m1_maps;
};

namespace detail {

// numeric evaluators for the five m1_map rows, keyed by the threefold label
inline bool attach_m1_evaluators(M1MapRow& r) {
    using F = std::function<cplx(cplx, cplx, cplx, cplx)>;
    auto cube = [](cplx z) { return z * z * z; };
    if (r.threefold == "WP(1,1,1,1,2)[6]") {
        r.alpha = F([cube](cplx A, cplx t, cplx u, cplx) { return A * cube(t + u) / (t * u * u); });
        r.beta = F([](cplx, cplx, cplx, cplx) { return cplx{0.0, 0.0}; });
        r.gamma = F([cube](cplx A, cplx t, cplx u, cplx) { return -1728.0 * A * cube(t + u) / (t * u * u); });
        return true;
    }
    if (r.threefold == "WP(1,1,1,1,4)[8]") {
        r.alpha = F([](cplx A, cplx t, cplx u, cplx) { return A * u / t; });
        r.beta = F([](cplx, cplx t, cplx u, cplx) { return t / u; });
        r.gamma = F([cube](cplx A, cplx t, cplx u, cplx) { return 1728.0 * A * cpow(u, 4) / (t * cube(4.0 * t - u)); });
        return true;
    }
    if (r.threefold == "WP(1,1,1,2,5)[10]") {
        r.alpha = F([](cplx A, cplx t, cplx u, cplx) { return A * u * u / (t * t); });
        r.beta = F([](cplx, cplx t, cplx u, cplx) { return t / u; });
        r.gamma = F([cube](cplx A, cplx t, cplx u, cplx) { return 1728.0 * A * cpow(u, 5) / (t * t * cube(4.0 * t - u)); });
        return true;
    }
    if (r.threefold == "WP(1,1,1,1,1,3)[2,6]*") {
        r.alpha = F([](cplx A, cplx t, cplx u, cplx) { return -A * u * u / (t * (t + u)); });
        r.beta = F([](cplx, cplx, cplx, cplx k) { return k; });
        r.gamma = F([cube](cplx A, cplx t, cplx u, cplx k) {
            return -1728.0 * A * u * u / (cube(4.0 * k - 1.0) * t * (t + u));
        });
        return true;
    }
    if (r.threefold == "WP(1,1,1,2,2,3)[4,6]*") {
        r.alpha = F([](cplx A, cplx t, cplx u, cplx) { return A * cpow(u, 4) / (t * t * (t + u) * (t + u)); });
        r.beta = F([](cplx, cplx, cplx, cplx k) { return k; });
        r.gamma = F([cube](cplx A, cplx t, cplx u, cplx k) {
            return 1728.0 * A * cpow(u, 4) / (cube(4.0 * k - 1.0) * t * t * (t + u) * (t + u));
        });
        return true;
    }
    return false;
}

inline int lattice_level(const std::string& lattice) {
    if (lattice == "M") return 0;
    if (lattice.size() == 2 && lattice[0] == 'M' && lattice[1] >= '1' && lattice[1] <= '4')
        return lattice[1] - '0';
    throw k3err("catalog: unknown lattice label '" + lattice + "'");
}

}  // namespace detail

inline Catalog parse_catalog(const std::string& text) {
    Catalog cat;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
        nlohmann::json rec = nlohmann::json::parse(line);
        const std::string kind = rec.at("kind").get<std::string>();
        if (kind == "fibration") {
            CatalogRow row;
            row.lattice = rec.at("lattice").get<std::string>();
            row.threefold = rec.at("threefold").get<std::string>();
            row.fi.i = rec.at("i").get<int>();
            row.fi.j = rec.at("j").get<int>();
            row.fi.n = detail::lattice_level(row.lattice);
            row.fi.toric = rec.at("toric").get<bool>();
            row.fi.classification = rec.at("classification").get<std::string>();
            if (row.fi.i < 1 || row.fi.j < 1) throw k3err("catalog: need i, j >= 1");
            if (row.fi.classification != "Arithmetic" && row.fi.classification != "Thin")
                throw k3err("catalog: bad classification '" + row.fi.classification + "'");
            cat.rows.push_back(std::move(row));
        } else if (kind == "m1_map") {
            M1MapRow row;
            row.threefold = rec.at("threefold").get<std::string>();
            row.alpha_str = rec.at("alpha").get<std::string>();
            row.beta_str = rec.at("beta").get<std::string>();
            row.gamma_str = rec.at("gamma").get<std::string>();
            if (!detail::attach_m1_evaluators(row))
                throw k3err("catalog: no evaluator for m1_map row '" + row.threefold + "'");
            cat.m1_maps.push_back(std::move(row));
        } else {
            throw k3err("catalog: unknown record kind '" + kind + "'");
        }
        } catch (const nlohmann::json::exception& e) {
            throw k3err("catalog: line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cat;
}

// byte-identical to data/catalog.jsonl (checked by the test suite)
inline const char* embedded_catalog_text() {
    return R"CAT(# K3 fibration catalog: one JSON record per line; '#' starts a comment line.
# kind=fibration: polarizing lattice, mirror threefold label, whether the
#   fibration is torically induced, the branching orders (i,j) of its
#   generalized functional invariant, and the monodromy classification.
# kind=m1_map: the (alpha, beta) parameter maps realizing the M1 rows, with
#   gamma = 1728*alpha/(4*beta-1)^3; A is the deformation parameter and k is
#   a constant with k != 0, 1/4.
{"kind":"fibration","lattice":"M1","threefold":"WP(1,1,1,1,2)[6]","toric":true,"i":1,"j":2,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M1","threefold":"WP(1,1,1,1,4)[8]","toric":true,"i":1,"j":3,"classification":"Thin"}
{"kind":"fibration","lattice":"M1","threefold":"WP(1,1,1,2,5)[10]","toric":true,"i":2,"j":3,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M1","threefold":"WP(1,1,1,1,1,3)[2,6]*","toric":true,"i":1,"j":1,"classification":"Thin"}
{"kind":"fibration","lattice":"M1","threefold":"WP(1,1,1,2,2,3)[4,6]*","toric":true,"i":2,"j":2,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M2","threefold":"P4[5]","toric":true,"i":1,"j":4,"classification":"Thin"}
{"kind":"fibration","lattice":"M2","threefold":"WP(1,1,1,1,2)[6]","toric":true,"i":2,"j":4,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M2","threefold":"WP(1,1,1,1,4)[8]","toric":true,"i":4,"j":4,"classification":"Thin"}
{"kind":"fibration","lattice":"M2","threefold":"P5[2,4]","toric":true,"i":1,"j":1,"classification":"Thin"}
{"kind":"fibration","lattice":"M2","threefold":"WP(1,1,1,1,2,2)[4,4]","toric":true,"i":2,"j":2,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M3","threefold":"P4[5]","toric":false,"i":2,"j":3,"classification":"Thin"}
{"kind":"fibration","lattice":"M3","threefold":"P5[2,4]","toric":false,"i":1,"j":3,"classification":"Thin"}
{"kind":"fibration","lattice":"M3","threefold":"P5[3,3]","toric":true,"i":1,"j":2,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M3","threefold":"WP(1,1,1,1,1,2)[3,4]*","toric":true,"i":2,"j":2,"classification":"Arithmetic"}
{"kind":"fibration","lattice":"M3","threefold":"P6[2,2,3]","toric":true,"i":1,"j":1,"classification":"Thin"}
{"kind":"fibration","lattice":"M4","threefold":"P5[2,4]","toric":false,"i":2,"j":2,"classification":"Thin"}
{"kind":"fibration","lattice":"M4","threefold":"P6[2,2,3]","toric":false,"i":1,"j":2,"classification":"Thin"}
{"kind":"fibration","lattice":"M4","threefold":"P7[2,2,2,2]","toric":true,"i":1,"j":1,"classification":"Thin"}
{"kind":"fibration","lattice":"M","threefold":"WP(1,1,1,1,4,6)[2,12]","toric":true,"i":1,"j":1,"classification":"Thin"}
{"kind":"m1_map","threefold":"WP(1,1,1,1,2)[6]","alpha":"A*(t+u)^3/(t*u^2)","beta":"0","gamma":"-1728*A*(t+u)^3/(t*u^2)"}
{"kind":"m1_map","threefold":"WP(1,1,1,1,4)[8]","alpha":"A*u/t","beta":"t/u","gamma":"1728*A*u^4/(t*(4*t-u)^3)"}
{"kind":"m1_map","threefold":"WP(1,1,1,2,5)[10]","alpha":"A*u^2/t^2","beta":"t/u","gamma":"1728*A*u^5/(t^2*(4*t-u)^3)"}
{"kind":"m1_map","threefold":"WP(1,1,1,1,1,3)[2,6]*","alpha":"-A*u^2/(t*(t+u))","beta":"k","gamma":"-1728*A*u^2/((4*k-1)^3*t*(t+u))"}
{"kind":"m1_map","threefold":"WP(1,1,1,2,2,3)[4,6]*","alpha":"A*u^4/(t^2*(t+u)^2)","beta":"k","gamma":"1728*A*u^4/((4*k-1)^3*t^2*(t+u)^2)"}
)CAT";
}

// explicit path, then $K3MONO_DATA/data/catalog.jsonl, then the embedded copy
inline Catalog load_catalog(const std::string& path = "") {
    auto try_file = [](const std::string& p, Catalog& out) {
        std::ifstream in(p);
        if (!in) return false;
        std::stringstream ss;
        ss << in.rdbuf();
        out = parse_catalog(ss.str());
        return true;
    };
    Catalog cat;
    if (!path.empty()) {
        if (!try_file(path, cat)) throw k3err("catalog: cannot read '" + path + "'");
        return cat;
    }
    if (const char* root = std::getenv("K3MONO_DATA")) {
        if (try_file(std::string(root) + "/data/catalog.jsonl", cat)) return cat;
    }
    return parse_catalog(embedded_catalog_text());
}

}  // namespace k3mono
