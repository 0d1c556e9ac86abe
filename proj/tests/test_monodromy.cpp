#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "k3mono/json_io.hpp"
#include "k3mono/monodromy.hpp"

using namespace k3mono;

TEST_CASE("step encoding: s6 round trip, inverse, composition") {
    MonodromyStep s;
    s.sigma_minus = {1, 0, 2};
    s.sigma_plus = {1, 2, 0};
    s.swapped = false;
    CHECK(MonodromyStep::from_s6(s.to_s6()).to_s6() == s.to_s6());
    CHECK(s.str() == "((12), (123))");

    MonodromyStep t = s;
    t.swapped = true;
    CHECK(MonodromyStep::from_s6(t.to_s6()).swapped);
    CHECK(t.str() == "((12), (123)) * swap");
    CHECK(t.inverse().inverse().to_s6() == t.to_s6());
    CHECK(t.compose_after(t.inverse()).is_identity());
    CHECK(t.inverse().compose_after(t).is_identity());

    // two swapped steps compose to an unswapped one
    CHECK_FALSE(t.compose_after(t).swapped);

    // partition violations are rejected
    ActionTable bad = {0, 1, 3, 2, 4, 5};
    CHECK_THROWS_AS(MonodromyStep::from_s6(bad), k3err);
    CHECK_THROWS_AS(MonodromyStep::from_s6(ActionTable{0, 1, 2}), k3err);

    CHECK(MonodromyStep{}.cycle_type() == "[1,1,1,1,1,1]");
    CHECK(s3_cycle_string({0, 1, 2}) == "()");
    CHECK(s3_cycle_string({0, 2, 1}) == "(23)");
    CHECK(s3_cycle_string({1, 2, 0}) == "(123)");
}

TEST_CASE("loop closure detection") {
    LoopPath closed = LoopPath::from_points(
        {{cplx{0.0, 0.0}, cplx{3.0, 0.0}}, {cplx{0.0, 0.0}, cplx{3.0, 0.0}}});
    CHECK(loop_closure(closed) == LoopClosure::Closed);
    LoopPath twisted = LoopPath::from_points(
        {{cplx{0.0, 0.0}, cplx{3.0, 0.0}}, {cplx{0.0, 0.0}, cplx{-3.0, 0.0}}});
    CHECK(loop_closure(twisted) == LoopClosure::Twisted);
    LoopPath open_path = LoopPath::from_points(
        {{cplx{0.0, 0.0}, cplx{3.0, 0.0}}, {cplx{0.0, 0.0}, cplx{2.0, 0.0}}});
    CHECK_THROWS_WITH(loop_closure(open_path),
                      "loop is not closed, even up to (a,b) ~ (a,-b)");
    CHECK_THROWS_AS(loop_closure(LoopPath::from_points({{cplx{}, cplx{}}})), k3err);
}

TEST_CASE("contractible loops track to the identity") {
    const cplx a0{0.0, 0.0}, b0{10.0, 0.0};
    LoopPath constant = LoopPath::from_points({{a0, b0}, {a0, b0}, {a0, b0}});
    CHECK(track_loop(constant).is_identity());
    CHECK(track_loop(make_circle_loop(a0, b0, 0.03, 0.5, 48)).is_identity());
    // same at a generic non-degenerate basepoint
    CHECK(track_loop(make_circle_loop(cplx{0.3, 0.1}, cplx{0.2, -0.4}, 0.02, 0.02, 48))
              .is_identity());
}

TEST_CASE("the sigma = 1 loop is a one-sided transposition, stable under refinement") {
    LoopPath loop = make_sigma1_loop(0.05, 128);
    MonodromyStep s = track_loop(loop);
    CHECK_FALSE(s.swapped);
    CHECK(s.sigma_minus == std::array<int, 3>{0, 1, 2});
    CHECK(s.sigma_plus != std::array<int, 3>{0, 1, 2});
    CHECK(s.cycle_type() == "[2,1,1,1,1]");

    LoopPath r1 = refine_loop(loop);
    LoopPath r2 = refine_loop(r1);
    CHECK(r1.samples.size() == 2 * loop.samples.size() - 1);
    CHECK(track_loop(r1).to_s6() == s.to_s6());
    CHECK(track_loop(r2).to_s6() == s.to_s6());

    // a small circle next to the pinch point, not around it, does nothing
    LoopPath off = make_circle_loop(cplx{0.63, 0.0}, cplx{0.9, 0.0}, 0.01, 0.01, 32);
    CHECK(track_loop(off).is_identity());
}

TEST_CASE("the half-turn swap loop exchanges the two root sets") {
    MonodromyStep s = track_loop(make_swap_loop());
    CHECK(s.swapped);
    CHECK(table_order(s.to_s6()) == 6);
    CHECK(s.cycle_type() == "[6]");

    // its square is a pure (3-cycle, 3-cycle) pair
    MonodromyStep sq = s.compose_after(s);
    CHECK_FALSE(sq.swapped);
    CHECK(sq.cycle_type() == "[3,3]");
}

TEST_CASE("reversal gives the inverse step, concatenation the composition") {
    LoopPath g1 = make_full_b_loop();
    // encloses only the b = 1 pinch: one side turns by a 3-cycle, the other sits
    LoopPath g2 = make_circle_loop(cplx{0.0, 0.0}, cplx{10.0, 0.0}, 0.0, 5.0, 96);
    MonodromyStep s1 = track_loop(g1), s2 = track_loop(g2);
    CHECK(s1.cycle_type() == "[3,3]");
    CHECK_FALSE(s1.swapped);
    CHECK(s2.cycle_type() == "[3,1,1,1]");
    CHECK(s2.sigma_minus == std::array<int, 3>{0, 1, 2});

    LoopPath rev = g1;
    std::reverse(rev.samples.begin(), rev.samples.end());
    CHECK(track_loop(rev).to_s6() == invert_table(s1.to_s6()));

    LoopPath cat = g1;
    cat.samples.insert(cat.samples.end(), g2.samples.begin(), g2.samples.end());
    CHECK(track_loop(cat).to_s6() == s1.compose_after(s2).to_s6());
}

TEST_CASE("degenerate points on a path are refused") {
    // (a,b) = (0,1) pinches the plus-side cubic to a triple root
    LoopPath bad = LoopPath::from_points({{cplx{0.0, 0.0}, cplx{2.0, 0.0}},
                                          {cplx{0.0, 0.0}, cplx{1.0, 0.0}},
                                          {cplx{0.0, 0.0}, cplx{2.0, 0.0}}});
    CHECK_THROWS_WITH(track_loop(bad), "track_loop: degenerate point on path");
}

TEST_CASE("covering group of the standard loops") {
    CoverReport one = fundamental_group_run({make_swap_loop()});
    CHECK(one.has_swap);
    CHECK(one.G_order == 6);
    CHECK(one.H_order == 3);
    CHECK(one.G_order == 2 * one.H_order);
    CHECK(one.exact_sequence_note.find("index 2") != std::string::npos);

    CoverReport both = fundamental_group_run({make_swap_loop(), make_full_b_loop()});
    CHECK(both.has_swap);
    CHECK(both.steps.size() == 2);
    CHECK(36 % both.H_order == 0);
    CHECK(both.G_order == 2 * both.H_order);
    CHECK(both.G_order <= 72);

    CoverReport pure = fundamental_group_run({make_sigma1_loop()});
    CHECK_FALSE(pure.has_swap);
    CHECK(pure.G_order == 2);
    CHECK(pure.H_order == 2);
    CHECK(pure.exact_sequence_note.find("no set exchange") != std::string::npos);

    // loops must share a basepoint
    CHECK_THROWS_AS(
        fundamental_group_run({make_swap_loop(), make_sigma1_loop()}), k3err);
}

TEST_CASE("applicability scan along a sampled family") {
    std::vector<MPoint> good = {MPoint{cplx{0.0, 0.0}, cplx{10.0, 0.0}, 1.0},
                                MPoint{cplx{0.3, 0.1}, cplx{0.2, -0.4}, 1.0}};
    AssumptionReport g = assumption_check(good);
    CHECK(g.ok);
    CHECK(g.message.empty());

    std::vector<MPoint> one_bad = {MPoint{cplx{0.0, 0.0}, cplx{10.0, 0.0}, 1.0},
                                   MPoint{cplx{1.0, 0.0}, cplx{0.0, 0.0}, 1.0},
                                   MPoint{cplx{0.3, 0.1}, cplx{0.2, -0.4}, 1.0}};
    AssumptionReport b = assumption_check(one_bad);
    CHECK_FALSE(b.ok);
    CHECK_FALSE(b.identically_degenerate);
    CHECK(b.first_bad_index == 1);
    CHECK(b.message == "degenerate point on path (index 1)");

    std::vector<MPoint> family;
    for (int k = 1; k <= 20; ++k) {
        const cplx gamma{0.37 * k, 0.11 * k};
        family.push_back(MPoint{cplx{1.0, 0.0}, gamma + 1.0, gamma * gamma});
    }
    AssumptionReport f = assumption_check(family);
    CHECK_FALSE(f.ok);
    CHECK(f.identically_degenerate);
    CHECK(f.first_bad_index == 0);
    CHECK(f.message ==
          "method inapplicable: family lies in the degenerate locus; "
          "use the two-parameter M1 covering route");
}

TEST_CASE("json round trips for loops and reports") {
    LoopPath lp = make_sigma1_loop(0.05, 16);
    ojson j = loop_to_json(lp);
    LoopPath back = loop_from_json(j);
    CHECK(back.samples == lp.samples);
    CHECK(back.label == lp.label);

    CoverReport rep = fundamental_group_run({make_swap_loop()});
    ojson r = cover_report_to_json(rep);
    REQUIRE(r.size() == 3);  // exactly H, G_order, has_swap
    CHECK(r.contains("H"));
    CHECK(r["G_order"] == 6);
    CHECK(r["has_swap"] == true);
    CHECK(r["H"].size() == 3);
    auto it = r.begin();
    CHECK(it.key() == "H");
    CHECK((++it).key() == "G_order");
    CHECK((++it).key() == "has_swap");
}
