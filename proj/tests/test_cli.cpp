#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "k3mono/json_io.hpp"

using nlohmann::json;

namespace {

std::string bin_path() {
    const char* b = std::getenv("K3MONO_BIN");
    REQUIRE(b != nullptr);
    return b;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = bin_path() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult res;
    char buf[4096];
    while (std::fgets(buf, sizeof(buf), p)) res.out += buf;
    const int st = pclose(p);
    res.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return res;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("cli_tmp_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli: group identification round trip") {
    RunResult r = run_cli("groups identify --n 2");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["order"] == 8);
    CHECK(j["name"] == "D8");
    CHECK(j.contains("spectrum"));

    RunResult r3 = run_cli("groups identify --n 3");
    REQUIRE(r3.code == 0);
    CHECK(json::parse(r3.out)["order"] == 12);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("frobnicate").code == 2);             // unknown subcommand
    CHECK(run_cli("groups identify").code == 2);        // missing required option
    CHECK(run_cli("groups identify --n 9").code == 2);  // out of range
    CHECK(run_cli("k3 ramify --i 9 --j 9").code == 2);  // degree cap
    CHECK(run_cli("modular data --group gamma5:1").code == 2);
    CHECK(run_cli("paper-check --section no-such-check").code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("cli: byte-identical output on repeated runs") {
    const std::string cmd = "modular covers --n 3 --format json";
    RunResult a = run_cli(cmd), b = run_cli(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const std::string pc = "paper-check --section nikulin --format json --seed 123";
    RunResult c = run_cli(pc), d = run_cli(pc);
    REQUIRE(c.code == 0);
    CHECK(c.out == d.out);
    json j = json::parse(c.out);
    CHECK(j["seed"] == 123);
    CHECK(j["passed"] == 1);
    CHECK(j["failed"] == 0);
}

TEST_CASE("cli: modular curve data and the lemma sweep") {
    RunResult r = run_cli("modular data --group c:8 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["index"] == 24);
    CHECK(j["genus"] == 0);
    CHECK(j["cusp_widths"] == json::array({8, 8, 2, 2, 2, 2}));

    RunResult v = run_cli("modular verify-rn --n 1 --bound 6 --format json");
    REQUIRE(v.code == 0);
    json jv = json::parse(v.out);
    CHECK(jv["mismatches"] == 0);
    CHECK(jv["in_subgroup"] == 66);
    CHECK(jv["in_o_star"] == 66);
}

TEST_CASE("cli: lattice info") {
    RunResult r = run_cli("lattice info --name N2 --twist 2 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["rank"] == 3);
    CHECK(j["det"] == 32);
    CHECK(j["even"] == true);
    CHECK(j["signature"] == json::array({1, 2}));
    CHECK(j["disc_factors"] == json::array({2, 2, 8}));

    CHECK(run_cli("lattice info --name Z7").code == 2);
}

TEST_CASE("cli: moduli point invariants") {
    RunResult r = run_cli("k3 sigma-pi --a 1 --b 1 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["sigma"][0].get<double>() == Catch::Approx(1.0));
    CHECK(j["sigma"][1].get<double>() == Catch::Approx(0.0).margin(1e-12));
    CHECK(j["pi"][0].get<double>() == Catch::Approx(1.0));

    RunResult q = run_cli("k3 ramify --i 1 --j 4 --format json");
    REQUIRE(q.code == 0);
    json jq = json::parse(q.out);
    CHECK(jq["degree"] == 5);
    CHECK(jq["critical_value"][0].get<double>() == Catch::Approx(3125.0 / 256.0));
    CHECK(jq["orders_consistent"] == true);
    CHECK(jq["points"].size() == 7);
}

TEST_CASE("cli: catalog thin check passes on the toric rows") {
    RunResult r = run_cli("k3 catalog --check-thin --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["fibrations"] == 19);
    CHECK(j["m1_maps"] == 5);
    CHECK(j["toric_rows"] == 15);
    CHECK(j["toric_agree"] == 15);
    CHECK(j["nontoric_differ"].size() == 3);
}

TEST_CASE("cli: pencil permutation checking") {
    TempFile good("perm_good.json",
                  "{\"perm\": \"(H2 H3)(E02 E03)(E12 E13)(E22 E23)(E32 E33)"
                  "(F3 F6)(F4 F7)(F5 F8)\"}");
    RunResult r = run_cli("pencil check --perm " + good.path + " --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["violations"].empty());
    CHECK(j["nikulin_isometry"] == true);

    TempFile bad("perm_bad.json", "{\"perm\": \"(G0 G1)\"}");
    RunResult rb = run_cli("pencil check --perm " + bad.path + " --format json");
    CHECK(rb.code == 1);
    CHECK(json::parse(rb.out)["ok"] == false);

    TempFile junk("perm_junk.json", "this is not json");
    CHECK(run_cli("pencil check --perm " + junk.path).code == 2);
    CHECK(run_cli("pencil check --perm no_such_file.json").code == 2);
}

TEST_CASE("cli: loop tracking from a file") {
    k3mono::ojson loops = k3mono::ojson::array();
    loops.push_back(k3mono::loop_to_json(k3mono::make_swap_loop(10.0, 64)));
    loops.push_back(k3mono::loop_to_json(k3mono::make_full_b_loop(10.0, 128)));
    TempFile f("loops.json", loops.dump());

    RunResult r = run_cli("monodromy track --loops " + f.path + " --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["has_swap"] == true);
    CHECK(j["G_order"] == 2 * j["H"].size());
    CHECK(run_cli("monodromy track --loops no_such_file.json").code == 2);
}

TEST_CASE("cli: check suite table output") {
    RunResult r = run_cli("paper-check --section MnG");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("[PASS] MnG") != std::string::npos);
    for (int n = 1; n <= 4; ++n)
        CHECK(r.out.find("n=" + std::to_string(n) + ":") != std::string::npos);
    CHECK(r.out.find("1/1 checks passed") != std::string::npos);
}
