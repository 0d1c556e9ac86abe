#include <catch2/catch_amalgamated.hpp>

#include "k3mono/group.hpp"
#include "k3mono/modular.hpp"

using namespace k3mono;

TEST_CASE("group spec parsing") {
    CHECK(parse_group_spec("gamma0:6").kind == GroupKind::Gamma0);
    CHECK(parse_group_spec("gamma0:6").N == 6);
    CHECK(parse_group_spec("gamma:2").kind == GroupKind::GammaFull);
    CHECK(parse_group_spec("gamma0+:3").kind == GroupKind::Gamma0Plus);
    CHECK(parse_group_spec("c:8").kind == GroupKind::Cap2Gamma0);
    CHECK(parse_group_spec("c:8").str() == "c:8");
    CHECK_THROWS_AS(parse_group_spec("gamma0"), k3err);
    CHECK_THROWS_AS(parse_group_spec("gamma0:x"), k3err);
    CHECK_THROWS_AS(parse_group_spec("gamma0:0"), k3err);
    CHECK_THROWS_AS(parse_group_spec("weird:5"), k3err);
}

TEST_CASE("membership in the congruence subgroups") {
    CHECK(member({GroupKind::Gamma0, 4}, SL2{1, 1, 4, 5}));
    CHECK_FALSE(member({GroupKind::Gamma0, 4}, SL2{1, 0, 2, 1}));
    CHECK(member({GroupKind::GammaFull, 2}, SL2{1, 2, 2, 5}));
    CHECK_FALSE(member({GroupKind::GammaFull, 2}, sl2_T()));
    CHECK(member({GroupKind::Cap2Gamma0, 8}, SL2{3, 4, 8, 11}));
    CHECK_FALSE(member({GroupKind::Cap2Gamma0, 8}, SL2{1, 1, 8, 9}));  // b odd
    // Fricke: scaled form allowed, det must be 1 or N
    CHECK(member({GroupKind::Gamma0Plus, 3}, SL2{0, -1, 3, 0}));
    CHECK(member({GroupKind::Gamma0Plus, 3}, SL2{1, 0, 3, 1}));
    CHECK_FALSE(member({GroupKind::Gamma0Plus, 3}, SL2{0, -1, 1, 0}));
    CHECK_THROWS_AS(member({GroupKind::Gamma0, 4}, SL2{1, 0, 0, 2}), k3err);
}

TEST_CASE("coset counts match the curve indices") {
    CHECK(coset_enumerate({GroupKind::Gamma0, 1}, 16).size() == 1);
    CHECK(coset_enumerate({GroupKind::Gamma0, 2}, 16).size() == 3);
    CHECK(coset_enumerate({GroupKind::GammaFull, 2}, 16).size() == 6);
    CHECK(coset_enumerate({GroupKind::Cap2Gamma0, 8}, 64).size() == 24);
    CHECK_THROWS_AS(coset_enumerate({GroupKind::Gamma0, 8}, 4), k3err);
    CHECK_THROWS_AS(coset_enumerate({GroupKind::Gamma0Plus, 2}, 16), k3err);
}

TEST_CASE("curve data: index, cusp widths, elliptic counts, genus") {
    auto row = [](const CurveData& c) {
        return std::tuple<long long, std::vector<long long>, long long, long long,
                          long long>{c.index, c.cusp_widths, c.nu2, c.nu3, c.genus};
    };
    using T = std::tuple<long long, std::vector<long long>, long long, long long,
                         long long>;
    CHECK(row(curve_data({GroupKind::Gamma0, 1})) == T{1, {1}, 1, 1, 0});
    CHECK(row(curve_data({GroupKind::Gamma0, 2})) == T{3, {2, 1}, 1, 0, 0});
    CHECK(row(curve_data({GroupKind::Gamma0, 3})) == T{4, {3, 1}, 0, 1, 0});
    CHECK(row(curve_data({GroupKind::Gamma0, 4})) == T{6, {4, 1, 1}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::Gamma0, 6})) == T{12, {6, 3, 2, 1}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::Gamma0, 8})) == T{12, {8, 2, 1, 1}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::GammaFull, 2})) == T{6, {2, 2, 2}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::Cap2Gamma0, 2})) == T{6, {2, 2, 2}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::Cap2Gamma0, 4})) == T{12, {4, 4, 2, 2}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::Cap2Gamma0, 6})) ==
          T{24, {6, 6, 6, 2, 2, 2}, 0, 0, 0});
    CHECK(row(curve_data({GroupKind::Cap2Gamma0, 8})) ==
          T{24, {8, 8, 2, 2, 2, 2}, 0, 0, 0});
    CHECK_THROWS_AS(curve_data({GroupKind::Gamma0Plus, 2}), k3err);
}

TEST_CASE("R_n: values, contravariance, isometry") {
    // R_n(T) is the unipotent generator printed for each n
    for (long long n = 1; n <= 4; ++n) {
        IntMat rt = r_map(n, sl2_T());
        IntMat want = {{1, 0, 0}, {n, 1, 2 * n}, {1, 0, 1}};
        CHECK(rt == want);
        CHECK(is_isometry(lat_N((int)n), rt));
    }

    // order of the two factors reverses through R_n
    for (long long n = 1; n <= 4; ++n) {
        SL2 m1{1, 2, 0, 1};                 // T^2
        SL2 m2{1, 0, 2 * n, 1};             // lower unipotent at level 2n
        CHECK(r_map(n, m1 * m2) == mat_mul(r_map(n, m2), r_map(n, m1)));
        CHECK(r_map(n, m2 * m1) == mat_mul(r_map(n, m1), r_map(n, m2)));
    }
    CHECK_THROWS_AS(r_map(2, SL2{1, 0, 1, 1}), k3err);   // c not divisible by n
    CHECK_THROWS_AS(r_map(1, SL2{1, 0, 0, 2}), k3err);   // det != 1

    // scaled variant on the Fricke element
    for (long long n = 1; n <= 4; ++n) {
        IntMat w = r_map_scaled(n, SL2{0, -1, n, 0}, n);
        CHECK(w == IntMat{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}});
        CHECK(is_isometry(lat_N((int)n), w));
    }
    CHECK_THROWS_AS(r_map_scaled(2, SL2{0, -1, 2, 0}, 3), k3err);
}

TEST_CASE("trivial discriminant action exactly on Gamma(2) ∩ Gamma0(2n)") {
    const long long want_members[4] = {66, 34, 22, 14};
    for (long long n = 1; n <= 4; ++n) {
        ModularLemmaReport rep = verify_modular_lemma(n, 6);
        CHECK(rep.mismatches == 0);
        CHECK_FALSE(rep.counterexample.has_value());
        CHECK(rep.in_subgroup == want_members[n - 1]);
        CHECK(rep.in_o_star == rep.in_subgroup);
        CHECK(rep.checked > rep.in_subgroup);
    }
    CHECK_THROWS_AS(verify_modular_lemma(5, 6), k3err);
    CHECK_THROWS_AS(verify_modular_lemma(1, 60), k3err);
}

TEST_CASE("cover fixtures: degrees, fibres, deck groups") {
    const int want_total[4] = {12, 8, 12, 8};
    const char* want_deck[4] = {"S3×C2", "D8", "D12", "D8"};
    for (int n = 1; n <= 4; ++n) {
        CoverFixtures cf = cover_fixtures(n);
        REQUIRE(cf.stages.size() == 3);

        int prod = 1;
        for (const auto& st : cf.stages) {
            prod *= st.degree;
            for (const auto& rp : st.ramification) {
                int s = 0;
                for (int e : rp.profile) s += e;
                CHECK(s == st.degree);  // complete fibres
            }
        }
        CHECK(prod == cf.f_degree);
        CHECK(cf.total_degree == (cf.has_extra_double_cover ? 2 : 1) * cf.f_degree);
        CHECK(cf.total_degree == want_total[n - 1]);
        CHECK(cf.has_extra_double_cover == (n == 1));
        CHECK(cf.deck_label_total == want_deck[n - 1]);

        // Riemann-Hurwitz for the genus-0 tower: sum of (e-1) = 2 deg - 2
        long long rh = 0;
        for (const auto& rp : cf.total_ramification) {
            int s = 0;
            for (int e : rp.profile) {
                rh += e - 1;
                s += e;
            }
            CHECK(s == cf.total_degree);
        }
        CHECK(rh == 2 * cf.total_degree - 2);

        // the deck group of the tower is the group the generators close to
        CHECK(deck_label_canonical(cf.deck_label_total) ==
              identify(mn_disc_group(n)));

        // source curve data re-derived from cosets
        CHECK(cf.curve.index ==
              curve_data({GroupKind::Cap2Gamma0, 2LL * n}).index);
        CHECK(cf.curve.genus == 0);
    }
    CHECK(deck_label_canonical("D12") == "S3xC2 (≅ D12)");
    CHECK(deck_label_canonical("S3×C2") == "S3xC2 (≅ D12)");
    CHECK(deck_label_canonical("D8") == "D8");
    CHECK_THROWS_AS(cover_fixtures(0), k3err);
}
