// k3mono: command-line front end for the M_n-polarized K3 toolkit.
//
// One process, JSON in/out (tables are a derived human view), deterministic
// under a fixed --seed.  Exit codes: 0 success, 1 a requested check failed,
// 2 malformed input or unknown subcommand.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k3mono/catalog.hpp"
#include "k3mono/checks.hpp"
#include "k3mono/json_io.hpp"

using namespace k3mono;

namespace {

int g_exit = 0;

cplx parse_cplx(const std::string& s) {
    const std::size_t comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw k3err("cannot parse complex number '" + s + "' (want re or re,im)");
    }
}

ojson read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw k3err("cannot read '" + path + "'");
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw k3err(path + ": " + e.what());
    }
}

Lattice lattice_by_name(const std::string& name) {
    if (name == "H") return lat_H();
    if (name == "E8") return lat_E8();
    if (name == "nikulin") return build_nikulin();
    if (name.size() == 2 && name[0] == 'N' && name[1] >= '1' && name[1] <= '4')
        return lat_N(name[1] - '0');
    if (name.size() == 2 && name[0] == 'M' && name[1] >= '1' && name[1] <= '4')
        return lat_Mn(name[1] - '0');
    throw k3err("unknown lattice '" + name + "' (want H, E8, N1..N4, M1..M4, nikulin)");
}

bool scalar_array(const ojson& a) {
    for (const auto& v : a)
        if (v.is_object() || v.is_array()) return false;
    return true;
}

void print_table(const ojson& j, int indent) {
    const std::string pad(std::size_t(indent), ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !scalar_array(v))) {
                std::cout << pad << k << ":\n";
                print_table(v, indent + 2);
            } else {
                std::cout << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || (v.is_array() && !scalar_array(v))) {
                std::cout << pad << "-\n";
                print_table(v, indent + 2);
            } else {
                std::cout << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        std::cout << pad << j.dump() << "\n";
    }
}

void emit(const ojson& j, const std::string& format) {
    if (format == "table")
        print_table(j, 0);
    else
        std::cout << j.dump(2) << "\n";
}

ojson spectrum_json(const std::map<int, int>& sp) {
    ojson out = ojson::object();
    for (const auto& [ord, cnt] : sp) out[std::to_string(ord)] = cnt;
    return out;
}

ojson group_json(const GeneratedGroup& G) {
    return ojson{{"order", (long long)G.order()},
                 {"name", identify(G)},
                 {"spectrum", spectrum_json(G.spectrum())}};
}

ojson ram_list_json(const std::vector<CoverRam>& rams) {
    ojson out = ojson::array();
    for (const auto& r : rams) out.push_back(ojson{{"over", r.over}, {"profile", r.profile}});
    return out;
}

ojson curve_json(const GroupSpec& g, const CurveData& cd) {
    return ojson{{"group", g.str()},           {"index", cd.index},
                 {"cusp_widths", cd.cusp_widths}, {"nu2", cd.nu2},
                 {"nu3", cd.nu3},               {"genus", cd.genus},
                 {"cusps", cd.cusps()}};
}

std::vector<std::string> split_detail(const std::string& detail) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos < detail.size()) {
        const std::size_t nxt = detail.find("; ", pos);
        if (nxt == std::string::npos) {
            parts.push_back(detail.substr(pos));
            break;
        }
        parts.push_back(detail.substr(pos, nxt - pos));
        pos = nxt + 2;
    }
    return parts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"M_n-polarized K3 families: lattices, modular curves, monodromy"};
    app.require_subcommand(1);

    std::string format = "json";
    unsigned long long seed = 20260815ull;
    double tol = kTrackTol;
    long long bound = 20;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", seed, "seed for randomized checks");

    // ---- lattice ----
    auto* lat = app.add_subcommand("lattice", "even lattices and their invariants")->fallthrough();
    lat->require_subcommand(1);
    auto* lat_info = lat->add_subcommand("info", "rank, determinant, signature, disc factors")->fallthrough();
    std::string lat_name = "H";
    std::string lat_file;
    long long lat_twist = 1;
    lat_info->add_option("--name", lat_name, "H, E8, N1..N4, M1..M4, nikulin");
    lat_info->add_option("--file", lat_file, "lattice JSON {\"gram\": [[..]], \"label\": str}");
    lat_info->add_option("--twist", lat_twist, "rescale the form by an integer");
    lat_info->callback([&] {
        Lattice L = lat_file.empty() ? lattice_by_name(lat_name)
                                     : lattice_from_json(read_json_file(lat_file));
        if (lat_twist != 1) L = twist(L, lat_twist);
        const auto sig = signature(L);
        DiscForm f = discriminant_form(L);
        ojson factors = ojson::array();
        for (const auto& v : f.factors) factors.push_back((long long)v);
        ojson out{{"label", L.label},
                  {"rank", L.rank()},
                  {"even", L.is_even()},
                  {"det", (long long)L.det()},
                  {"signature", ojson::array({sig.first, sig.second})},
                  {"disc_factors", std::move(factors)},
                  {"gram", lattice_to_json(L)["gram"]}};
        emit(out, format);
    });

    // ---- groups ----
    auto* grp = app.add_subcommand("groups", "discriminant-form symmetry groups")->fallthrough();
    grp->require_subcommand(1);
    auto* grp_id = grp->add_subcommand("identify", "group generated on disc(N(n)(2))")->fallthrough();
    int grp_n = 1;
    grp_id->add_option("--n", grp_n, "polarization index 1..4")->required()->check(CLI::Range(1, 4));
    grp_id->callback([&] { emit(group_json(mn_disc_group(grp_n)), format); });
    auto* grp_full = grp->add_subcommand("full-aut", "all form-preserving symmetries")->fallthrough();
    std::string grp_lat_file;
    std::string grp_lat_name;
    grp_full->add_option("--lattice", grp_lat_file, "lattice JSON file");
    grp_full->add_option("--name", grp_lat_name, "built-in lattice name");
    grp_full->callback([&] {
        if (grp_lat_file.empty() && grp_lat_name.empty())
            throw k3err("full-aut: need --lattice <file> or --name <builtin>");
        Lattice L = grp_lat_file.empty() ? lattice_by_name(grp_lat_name)
                                         : lattice_from_json(read_json_file(grp_lat_file));
        emit(group_json(full_aut(discriminant_form(L))), format);
    });

    // ---- modular ----
    auto* mod = app.add_subcommand("modular", "congruence subgroups and the covering tower")->fallthrough();
    mod->require_subcommand(1);
    auto* mod_data = mod->add_subcommand("data", "index, cusps, elliptic counts, genus")->fallthrough();
    std::string mod_group = "gamma0:1";
    mod_data->add_option("--group", mod_group, "gamma0:N, gamma:N, c:N (= Gamma(2) cap Gamma0(N))");
    mod_data->callback([&] {
        const GroupSpec g = parse_group_spec(mod_group);
        emit(curve_json(g, curve_data(g)), format);
    });
    auto* mod_rn = mod->add_subcommand("verify-rn", "trivial disc action exactly on the lemma group")->fallthrough();
    int mod_n = 1;
    mod_rn->add_option("--n", mod_n, "polarization index 1..4")->required()->check(CLI::Range(1, 4));
    mod_rn->add_option("--bound", bound, "entry bound for the matrix sweep");
    mod_rn->callback([&] {
        const ModularLemmaReport rep = verify_modular_lemma(mod_n, bound);
        ojson out{{"n", rep.n},
                  {"bound", rep.bound},
                  {"checked", rep.checked},
                  {"in_subgroup", rep.in_subgroup},
                  {"in_o_star", rep.in_o_star},
                  {"mismatches", rep.mismatches}};
        if (rep.counterexample)
            out["counterexample"] = ojson::array({(long long)rep.counterexample->a,
                                                  (long long)rep.counterexample->b,
                                                  (long long)rep.counterexample->c,
                                                  (long long)rep.counterexample->d});
        emit(out, format);
        if (rep.mismatches != 0) g_exit = 1;
    });
    auto* mod_cov = mod->add_subcommand("covers", "degrees and fibres of the covering tower")->fallthrough();
    int cov_n = 1;
    mod_cov->add_option("--n", cov_n, "polarization index 1..4")->required()->check(CLI::Range(1, 4));
    mod_cov->callback([&] {
        const CoverFixtures cf = cover_fixtures(cov_n);
        ojson stages = ojson::array();
        for (const auto& st : cf.stages)
            stages.push_back(ojson{{"name", st.name},
                                   {"degree", st.degree},
                                   {"target", st.target},
                                   {"ramification", ram_list_json(st.ramification)}});
        ojson out{{"n", cf.n},
                  {"stages", std::move(stages)},
                  {"f_degree", cf.f_degree},
                  {"deck_label_f", cf.deck_label_f},
                  {"has_extra_double_cover", cf.has_extra_double_cover},
                  {"total_degree", cf.total_degree},
                  {"deck_label_total", cf.deck_label_total},
                  {"base_points", cf.base_points},
                  {"base_elliptic_orders", cf.base_elliptic_orders},
                  {"f_ramification", ram_list_json(cf.f_ramification)},
                  {"total_ramification", ram_list_json(cf.total_ramification)},
                  {"curve", curve_json(GroupSpec{GroupKind::Cap2Gamma0, 2 * cf.n}, cf.curve)}};
        emit(out, format);
    });

    // ---- k3 ----
    auto* k3 = app.add_subcommand("k3", "moduli points, fibre roots, branching data")->fallthrough();
    k3->require_subcommand(1);
    std::string opt_a = "0", opt_b = "10", opt_A = "1";
    auto* k3_sp = k3->add_subcommand("sigma-pi", "trace/product invariants and their roots")->fallthrough();
    k3_sp->add_option("--a", opt_a, "complex a as re or re,im");
    k3_sp->add_option("--b", opt_b, "complex b as re or re,im");
    k3_sp->callback([&] {
        const cplx a = parse_cplx(opt_a), b = parse_cplx(opt_b);
        const SigmaPi sp = sigma_pi(a, b);
        emit(ojson{{"a", cplx_to_json(a)},
                   {"b", cplx_to_json(b)},
                   {"sigma", cplx_to_json(sp.sigma)},
                   {"pi", cplx_to_json(sp.pi)},
                   {"j_roots", ojson::array({cplx_to_json(sp.j_roots[0]),
                                             cplx_to_json(sp.j_roots[1])})}},
             format);
    });
    auto* k3_roots = k3->add_subcommand("roots", "the two root triples at a moduli point")->fallthrough();
    k3_roots->add_option("--a", opt_a, "complex a as re or re,im");
    k3_roots->add_option("--b", opt_b, "complex b as re or re,im");
    k3_roots->callback([&] {
        const FibreRoots fr = alternate_fibre_roots(parse_cplx(opt_a), parse_cplx(opt_b));
        ojson minus = ojson::array(), plus = ojson::array();
        for (const auto& z : fr.minus) minus.push_back(cplx_to_json(z));
        for (const auto& z : fr.plus) plus.push_back(cplx_to_json(z));
        emit(ojson{{"minus", std::move(minus)},
                   {"plus", std::move(plus)},
                   {"minus_degenerate", fr.minus_degenerate},
                   {"plus_degenerate", fr.plus_degenerate}},
             format);
    });
    auto* k3_ram = k3->add_subcommand("ramify", "branching profile of the (i,j) covering map")->fallthrough();
    int ram_i = 1, ram_j = 1;
    k3_ram->add_option("--i", ram_i, "left branching order")->required();
    k3_ram->add_option("--j", ram_j, "right branching order")->required();
    k3_ram->add_option("--A", opt_A, "deformation parameter as re or re,im");
    k3_ram->callback([&] {
        FunctionalInvariant fi;
        fi.i = ram_i;
        fi.j = ram_j;
        fi.A = parse_cplx(opt_A);
        const RamificationProfile rp = ramification_profile(fi);
        ojson pts = ojson::array();
        for (const auto& p : rp.points) {
            ojson e{{"t", cplx_to_json(p.t)}, {"u", cplx_to_json(p.u)}, {"order", p.order}};
            if (p.lambda_infinite)
                e["lambda"] = "infinite";
            else
                e["lambda"] = cplx_to_json(p.lambda);
            pts.push_back(std::move(e));
        }
        emit(ojson{{"i", rp.i},
                   {"j", rp.j},
                   {"A", cplx_to_json(rp.A)},
                   {"degree", rp.i + rp.j},
                   {"critical_value", cplx_to_json(rp.critical_value)},
                   {"points", std::move(pts)},
                   {"orders_consistent", rp.orders_consistent()}},
             format);
    });
    auto* k3_cat = k3->add_subcommand("catalog", "the bundled fibration table")->fallthrough();
    bool check_thin = false;
    std::string cat_path;
    k3_cat->add_flag("--check-thin", check_thin, "fail (exit 1) if a toric row contradicts the criterion");
    k3_cat->add_option("--data", cat_path, "explicit catalog file (default: K3MONO_DATA, then embedded)");
    k3_cat->callback([&] {
        const Catalog cat = load_catalog(cat_path);
        ojson rows = ojson::array();
        long long toric_rows = 0, toric_agree = 0;
        ojson nontoric_differ = ojson::array();
        for (const auto& row : cat.rows) {
            const bool listed_thin = row.fi.classification == "Thin";
            const bool pred = thin_predicate(row.fi);
            const bool agrees = listed_thin == pred;
            if (row.fi.toric) {
                ++toric_rows;
                if (agrees) ++toric_agree;
            } else if (!agrees) {
                nontoric_differ.push_back(row.lattice + "/" + row.threefold);
            }
            rows.push_back(ojson{{"lattice", row.lattice},
                                 {"threefold", row.threefold},
                                 {"i", row.fi.i},
                                 {"j", row.fi.j},
                                 {"n", row.fi.n},
                                 {"toric", row.fi.toric},
                                 {"classification", row.fi.classification},
                                 {"thin_by_criterion", pred},
                                 {"agrees", agrees}});
        }
        ojson out{{"fibrations", (long long)cat.rows.size()},
                  {"m1_maps", (long long)cat.m1_maps.size()},
                  {"toric_rows", toric_rows},
                  {"toric_agree", toric_agree},
                  {"nontoric_differ", std::move(nontoric_differ)},
                  {"rows", std::move(rows)}};
        emit(out, format);
        if (check_thin && toric_agree != toric_rows) g_exit = 1;
    });

    // ---- monodromy ----
    auto* mono = app.add_subcommand("monodromy", "root tracking along loops in the (a,b) plane")->fallthrough();
    mono->require_subcommand(1);
    auto* mono_track = mono->add_subcommand("track", "track loops and report the covering group")->fallthrough();
    std::string loops_file;
    mono_track->add_option("--loops", loops_file, "JSON: a loop, an array of loops, or {\"loops\": [..]}")
        ->required();
    mono_track->add_option("--tol", tol, "root-matching tolerance");
    mono_track->callback([&] {
        ojson j = read_json_file(loops_file);
        std::vector<LoopPath> loops;
        if (j.is_object() && j.contains("loops")) j = j["loops"];
        if (j.is_array() && (j.empty() || !j[0].is_number())) {
            for (const auto& item : j) loops.push_back(loop_from_json(item));
        } else {
            loops.push_back(loop_from_json(j));
        }
        if (loops.empty()) throw k3err("no loops in '" + loops_file + "'");
        emit(cover_report_to_json(fundamental_group_run(loops, tol)), format);
    });

    // ---- pencil ----
    auto* pen = app.add_subcommand("pencil", "the 30-curve configuration and its symmetries")->fallthrough();
    pen->require_subcommand(1);
    auto* pen_check = pen->add_subcommand("check", "test a named-cycle permutation for admissibility")->fallthrough();
    std::string perm_file;
    pen_check->add_option("--perm", perm_file, "JSON {\"perm\": \"(H2 H3)(E02 E03)...\"}")->required();
    pen_check->callback([&] {
        const ojson j = read_json_file(perm_file);
        if (!j.contains("perm") || !j["perm"].is_string())
            throw k3err(perm_file + ": want {\"perm\": \"(..)(..)\"} in cycle notation");
        const PencilGraph g = build_extended_pencil();
        const ActionTable t = perm_from_cycles(g.names, j["perm"].get<std::string>());
        const ConstraintResult res = check_monodromy_constraints(g, t);
        ojson out{{"perm", perm_to_cycles(g.names, t)},
                  {"ok", res.ok},
                  {"violations", res.violations}};
        if (res.ok)
            out["nikulin_isometry"] =
                is_isometry(build_nikulin(), nikulin_isometry_from_action(t));
        emit(out, format);
        if (!res.ok) g_exit = 1;
    });

    // ---- paper-check ----
    auto* pc = app.add_subcommand("paper-check", "run the bundled verification suite")->fallthrough();
    std::string section;
    pc->add_option("--section", section, "run a single check by id (e.g. MnG, covers, nikulin)");
    auto* fmt_opt = app.get_option("--format");
    pc->callback([&] {
        std::vector<CheckResult> results = run_all_checks(seed, section);
        long long passed = 0;
        for (const auto& r : results) passed += r.pass ? 1 : 0;
        const long long failed = (long long)results.size() - passed;
        if (fmt_opt->count() > 0 && format == "json") {
            ojson out{{"seed", seed}};
            ojson arr = ojson::array();
            for (const auto& r : results)
                arr.push_back(ojson{{"id", r.id}, {"title", r.title}, {"pass", r.pass},
                                    {"detail", r.detail}});
            out["results"] = std::move(arr);
            out["passed"] = passed;
            out["failed"] = failed;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "seed " << seed << "\n";
            for (const auto& r : results) {
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " — " << r.title
                          << " (" << r.ms << " ms)\n";
                for (const auto& part : split_detail(r.detail))
                    std::cout << "    " << part << "\n";
            }
            std::cout << passed << "/" << results.size() << " checks passed";
            if (failed > 0) std::cout << ", " << failed << " failed";
            std::cout << "\n";
        }
        if (failed > 0) g_exit = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const k3err& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
