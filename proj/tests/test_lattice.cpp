#include <catch2/catch_amalgamated.hpp>

#include "k3mono/disc_form.hpp"
#include "k3mono/group.hpp"
#include "k3mono/lattice.hpp"

using namespace k3mono;

TEST_CASE("standard gram matrices have the expected invariants") {
    Lattice H = lat_H();
    CHECK(H.rank() == 2);
    CHECK(H.is_even());
    CHECK(H.det() == -1);
    CHECK(signature(H) == std::pair<int, int>{1, 1});

    Lattice E8 = lat_E8();
    CHECK(E8.rank() == 8);
    CHECK(E8.is_even());
    CHECK(E8.det() == 1);
    CHECK(signature(E8) == std::pair<int, int>{0, 8});

    CHECK(lat_rank1(-6).det() == -6);
    CHECK_THROWS_AS(lat_rank1(0), k3err);
    CHECK_THROWS_AS(lat_rank1(3), k3err);  // odd diagonal => not even
}

TEST_CASE("direct sums and twists") {
    // N(n) = H + <-2n>
    for (int n = 1; n <= 4; ++n) {
        Lattice N = lat_N(n);
        CHECK(N.rank() == 3);
        CHECK(N.det() == 2 * n);
        CHECK(signature(N) == std::pair<int, int>{1, 2});
    }
    CHECK(twist(lat_H(), 2).det() == -4);
    CHECK(twist(lat_N(2), 2).det() == 32);  // 2^3 * det N(2)

    Lattice M2 = lat_Mn(2);
    CHECK(M2.rank() == 19);
    CHECK(M2.det() == 4);
    CHECK(M2.is_even());
    CHECK(signature(M2) == std::pair<int, int>{1, 18});
}

TEST_CASE("discriminant groups: orders and invariant factors") {
    CHECK(discriminant_form(lat_H()).factors.empty());
    CHECK(discriminant_form(lat_E8()).factors.empty());

    DiscForm h2 = discriminant_form(twist(lat_H(), 2));
    CHECK(h2.factors == std::vector<BigInt>{2, 2});

    for (int n = 1; n <= 4; ++n) {
        DiscForm f = discriminant_form(twist(lat_N(n), 2));
        CHECK(f.factors == std::vector<BigInt>{2, 2, 4 * n});
        CHECK(f.order() == 16 * n);
        DiscForm fm = discriminant_form(lat_Mn(n));
        CHECK(fm.factors == std::vector<BigInt>{2 * n});
    }
}

TEST_CASE("discriminant form values on rank-1 lattices") {
    // <-2m>: the generator x has q(x) = -1/(2m) mod 2 and b(x,x) = -1/(2m) mod 1
    auto gen_vals = [](int k) {
        DiscForm f = discriminant_form(lat_rank1(-2 * k));
        REQUIRE(f.factors == std::vector<BigInt>{2 * k});
        DiscElem g{1};
        return std::pair<Rat, Rat>{f.b(g, g), f.q(g)};
    };
    CHECK(gen_vals(1) == std::pair<Rat, Rat>{Rat(1, 2), Rat(3, 2)});
    CHECK(gen_vals(2) == std::pair<Rat, Rat>{Rat(3, 4), Rat(7, 4)});
    CHECK(gen_vals(3) == std::pair<Rat, Rat>{Rat(5, 6), Rat(11, 6)});
    CHECK(gen_vals(4) == std::pair<Rat, Rat>{Rat(7, 8), Rat(15, 8)});

    // doubling the generator of Z/4 lands on the 2-torsion element of q = 1
    DiscForm f4 = discriminant_form(lat_rank1(-4));
    CHECK(f4.q(DiscElem{2}) == Rat(1));

    // M_n and H + <-2n> carry the same discriminant form (the unimodular
    // summands drop out)
    for (int n = 1; n <= 4; ++n) {
        DiscForm a = discriminant_form(lat_Mn(n));
        DiscForm b = discriminant_form(lat_N(n));
        REQUIRE(a.factors == b.factors);
        CHECK(a.q(DiscElem{1}) == b.q(DiscElem{1}));
    }
}

TEST_CASE("q and b satisfy the quadratic-form identities") {
    DiscForm f = discriminant_form(twist(lat_N(2), 2));
    const std::size_t N = f.num_elements();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            DiscElem x = f.elem_from_index(i), y = f.elem_from_index(j);
            // q(x+y) = q(x) + q(y) + 2 b(x,y) mod 2
            Rat lhs = f.q(f.add(x, y));
            Rat rhs = DiscForm::mod_reduce(f.q(x) + f.q(y) + 2 * f.b(x, y), 2);
            CHECK(lhs == rhs);
        }
    // coords inverts lift
    for (std::size_t i = 0; i < N; ++i)
        CHECK(f.coords(f.lift(f.elem_from_index(i))) == f.elem_from_index(i));
}

TEST_CASE("the published generator triples are isometries of N(n)") {
    for (int n = 1; n <= 4; ++n) {
        Lattice L = lat_N(n);
        auto mats = mn_generator_matrices(n);
        REQUIRE(mats.size() == 3);
        for (const auto& m : mats) CHECK(is_isometry(L, m));
        // twisting the gram does not change the isometry group
        Lattice T = twist(L, 2);
        for (const auto& m : mats) CHECK(is_isometry(T, m));
    }
    IntMat shear = {{1, 1}, {0, 1}};
    CHECK_FALSE(is_isometry(lat_H(), shear));
}

TEST_CASE("trivial discriminant action membership") {
    for (int n = 1; n <= 4; ++n) {
        Lattice L = twist(lat_N(n), 2);
        DiscForm f = discriminant_form(L);
        CHECK(is_in_O_star(L, identity_mat(3), f));
        auto mats = mn_generator_matrices(n);
        // all three act nontrivially on the discriminant
        for (const auto& m : mats) CHECK_FALSE(is_in_O_star(L, m, f));
    }
    // -Id inverts the Z/4n factor, so it is never trivial here
    Lattice L1 = twist(lat_N(1), 2);
    IntMat minus = identity_mat(3);
    for (int i = 0; i < 3; ++i) minus[i][i] = -1;
    CHECK_FALSE(is_in_O_star(L1, minus, discriminant_form(L1)));

    CHECK_THROWS_AS(is_in_O_star(lat_H(), IntMat{{1, 1}, {0, 1}}), k3err);
}

TEST_CASE("induced discriminant action respects matrix products") {
    Lattice L = twist(lat_N(2), 2);
    DiscForm f = discriminant_form(L);
    auto mats = mn_generator_matrices(2);
    for (const auto& m1 : mats)
        for (const auto& m2 : mats) {
            auto lhs = induced_disc_action(L, mat_mul(m1, m2), f);
            auto t1 = induced_disc_action(L, m1, f);
            auto t2 = induced_disc_action(L, m2, f);
            // direct action x -> m x: the table of a product composes the tables
            std::vector<int> rhs(t1.size());
            for (std::size_t i = 0; i < t1.size(); ++i)
                rhs[i] = t1[(std::size_t)t2[i]];
            CHECK(lhs == rhs);
        }
}
