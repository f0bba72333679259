#include <catch2/catch_amalgamated.hpp>

#include "cclab/certificate.hpp"
#include "cclab/instance.hpp"
#include "cclab/pivot.hpp"

using namespace cclab;

TEST_CASE("e_cost formulas") {
    CHECK(e_cost(EdgeSign::Positive, 0, 0) == 0.0);
    CHECK(e_cost(EdgeSign::Negative, 0, 0) == 1.0);
    CHECK(e_cost(EdgeSign::Neutral, 0.85, 0.85) == Catch::Approx(0.2775));
    CHECK(e_cost(EdgeSign::Positive, 0.3, 0.7) == Catch::Approx(0.3 * 0.3 + 0.7 * 0.7));
}

TEST_CASE("e_lp_cc formulas") {
    CHECK(e_lp_cc(EdgeSign::Positive, 1, 0, 0) == 1.0);
    CHECK(e_lp_cc(EdgeSign::Negative, 1, 0.3, 0.9) == 0.0);
    CHECK(e_lp_cc(EdgeSign::Positive, 0.5, 0.5, 0.5) == Catch::Approx(0.375));
    CHECK_THROWS_AS(e_lp_cc(EdgeSign::Neutral, 0.5, 0, 0), std::invalid_argument);
}

TEST_CASE("e_lp_ccc_lower formulas") {
    CHECK(e_lp_ccc_lower(EdgeSign::Neutral, 1, 1, 1, 0, 0) == Catch::Approx(0.5));
    CHECK(e_lp_ccc_lower(EdgeSign::Neutral, 0.2, 0.9, 0.8, 0, 0) == Catch::Approx(0.8));
    CHECK(e_lp_ccc_lower(EdgeSign::Neutral, 0.4, 0.4, 0.4, 1, 1) == 0.0);
    // non-neutral falls back to the cc charge
    CHECK(e_lp_ccc_lower(EdgeSign::Positive, 0.5, 0, 0, 0.5, 0.5) ==
          e_lp_cc(EdgeSign::Positive, 0.5, 0.5, 0.5));
}

TEST_CASE("e_cost and e_lp symmetric in the pivot probabilities") {
    for (double pa : {0.1, 0.5, 0.9})
        for (double pb : {0.2, 0.7})
            for (EdgeSign s : {EdgeSign::Positive, EdgeSign::Negative, EdgeSign::Neutral}) {
                CHECK(e_cost(s, pa, pb) == Catch::Approx(e_cost(s, pb, pa)));
                if (s != EdgeSign::Neutral)
                    CHECK(e_lp_cc(s, 0.4, pa, pb) == Catch::Approx(e_lp_cc(s, 0.4, pb, pa)));
            }
}

namespace {

TripleConfig make_cfg(double x, double y, double z, std::array<EdgeSign, 3> signs,
                      std::array<double, 3> weights = {1, 1, 1},
                      std::array<Side, 3> sides = {Side::At, Side::At, Side::At}) {
    TripleConfig c;
    c.x = x;
    c.y = y;
    c.z = z;
    c.signs = signs;
    c.weights = weights;
    c.sides = sides;
    return c;
}

double role_gap(const RoundingScheme& s, double alpha, double x, double y, double z, int role,
                EdgeSign sign, std::array<Side, 3> sides = {Side::At, Side::At, Side::At}) {
    std::array<double, 3> w{0, 0, 0};
    w[role] = 1;
    // f+ = f- for the wcc schemes, so the other two signs do not matter
    return triple_gap(make_cfg(x, y, z, {sign, sign, sign}, w, sides), s, alpha, CertMode::Wcc);
}

} // namespace

TEST_CASE("per-role gaps reproduce sample 10/3 table entries in doubles") {
    RoundingScheme s = preset("wcc_tight");
    const double a = 10.0 / 3;
    // Region I (0, 2/5): both y and z approach 2/5 from the zero piece
    std::array<Side, 3> sidesI{Side::At, Side::Left, Side::Left};
    CHECK(role_gap(s, a, 0, 0.4, 0.4, 0, EdgeSign::Positive, sidesI) == Catch::Approx(0.0).margin(1e-12));
    CHECK(role_gap(s, a, 0, 0.4, 0.4, 1, EdgeSign::Positive, sidesI) == Catch::Approx(4.0 / 3));
    CHECK(role_gap(s, a, 0, 0.4, 0.4, 2, EdgeSign::Positive, sidesI) == Catch::Approx(4.0 / 3));
    // Region III (2/5, 2/5): x,y from the zero piece, z = 4/5 on the ramp
    std::array<Side, 3> sidesIII{Side::Left, Side::Left, Side::At};
    CHECK(role_gap(s, a, 0.4, 0.4, 0.8, 2, EdgeSign::Negative, sidesIII) ==
          Catch::Approx(-1.0 / 3));
    CHECK(role_gap(s, a, 0.4, 0.4, 0.8, 0, EdgeSign::Negative, sidesIII) == Catch::Approx(2.0));
}

TEST_CASE("per-role gaps reproduce sample alpha=6 table entries") {
    RoundingScheme s = preset("wcc_charikar_gao");
    // Region II (0, 1/3): y from the left, z = 1/3 on the ramp
    std::array<Side, 3> sides{Side::At, Side::Left, Side::At};
    CHECK(role_gap(s, 6, 0, 1.0 / 3, 1.0 / 3, 0, EdgeSign::Positive, sides) ==
          Catch::Approx(-1.0 / 3));
    CHECK(role_gap(s, 6, 0, 1.0 / 3, 1.0 / 3, 1, EdgeSign::Positive, sides) ==
          Catch::Approx(5.0 / 3));
    CHECK(role_gap(s, 6, 0, 1.0 / 3, 1.0 / 3, 2, EdgeSign::Positive, sides) == Catch::Approx(2.0));
}

TEST_CASE("gap is linear in the weights") {
    RoundingScheme s = preset("wcc_tight");
    detail::rounding_prob(s, EdgeSign::Positive, 0.5, Side::At); // sanity
    CounterRng rng(2024);
    int checked = 0;
    while (checked < 200) {
        double x = rng.next_u01(), y = rng.next_u01(), z = rng.next_u01();
        if (!triangle_ok(x, y, z)) continue;
        std::array<EdgeSign, 3> signs;
        for (auto& sg : signs)
            sg = rng.next_u01() < 0.5 ? EdgeSign::Positive : EdgeSign::Negative;
        // pseudometric weights: sums of two generator coefficients
        double a = rng.next_u01(), b = rng.next_u01(), c = rng.next_u01();
        std::array<double, 3> w{a + b, a + c, b + c};
        double whole = triple_gap(make_cfg(x, y, z, signs, w), s, 10.0 / 3, CertMode::Wcc);
        double parts =
            a * triple_gap(make_cfg(x, y, z, signs, {1, 1, 0}), s, 10.0 / 3, CertMode::Wcc) +
            b * triple_gap(make_cfg(x, y, z, signs, {1, 0, 1}), s, 10.0 / 3, CertMode::Wcc) +
            c * triple_gap(make_cfg(x, y, z, signs, {0, 1, 1}), s, 10.0 / 3, CertMode::Wcc);
        CHECK(whole == Catch::Approx(parts).margin(1e-12));
        ++checked;
    }
}

TEST_CASE("middle-band coordinates give nonnegative per-role gaps") {
    // coordinates confined to [1/alpha, 1 - 1/alpha] = [0.3, 0.7]
    RoundingScheme s = preset("wcc_tight");
    for (double x = 0.3; x <= 0.7; x += 0.05)
        for (double y = 0.3; y <= 0.7; y += 0.05)
            for (double z = 0.3; z <= 0.7; z += 0.05) {
                if (!triangle_ok(x, y, z)) continue;
                for (int role = 0; role < 3; ++role)
                    for (EdgeSign sign : {EdgeSign::Positive, EdgeSign::Negative})
                        CHECK(role_gap(s, 10.0 / 3, x, y, z, role, sign) >= -1e-12);
            }
}

TEST_CASE("certify_wcc at 10/3") {
    CertificateReport rep = certify_wcc(preset("wcc_tight"), 10.0 / 3, 0.02);
    CHECK(rep.violations.empty());
    CHECK(rep.min_gap >= -1e-9);
    CHECK(rep.min_gap <= 1e-6);
    CHECK(rep.argmin.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(rep.argmin.y == Catch::Approx(0.4).margin(1e-12));
    CHECK(rep.argmin.z == Catch::Approx(0.4).margin(1e-12));
    CHECK(rep.argmin.signs[0] == EdgeSign::Positive);
    CHECK(rep.argmin.signs[1] == EdgeSign::Positive);
    CHECK(rep.configs_checked > 10000);
}

TEST_CASE("certify_wcc gap grows with alpha") {
    double lo = certify_wcc(preset("wcc_tight"), 10.0 / 3, 0.05).min_gap;
    double hi = certify_wcc(preset("wcc_tight"), 3.5, 0.05).min_gap;
    CHECK(hi >= lo - 1e-12);
}

TEST_CASE("certify_wcc below the threshold finds violations") {
    CertificateReport rep = certify_wcc(preset("wcc_tight"), 3.0, 0.02);
    REQUIRE_FALSE(rep.violations.empty());
    for (const auto& v : rep.violations) {
        CHECK(v.gap < -1e-9);
        // the report's witness reproduces its own gap
        CHECK(triple_gap(v.config, preset("wcc_tight"), 3.0, CertMode::Wcc) ==
              Catch::Approx(v.gap));
    }
}

TEST_CASE("certify_wcc rejects bad input") {
    CHECK_THROWS_AS(certify_wcc(preset("wcc_tight"), 10.0 / 3, 0.0), std::invalid_argument);
    RoundingScheme broken = preset("wcc_tight");
    broken.fplus.pieces[0].c0 = Rat(1, 10);
    CHECK_THROWS_AS(certify_wcc(broken, 10.0 / 3, 0.1), std::invalid_argument);
}

TEST_CASE("certify_ccc at 2.15 on a coarse grid") {
    CertificateReport rep = certify_ccc(preset("ccc_neutral_scheme"), 2.15, 0.02);
    CHECK(rep.violations.empty());
    CHECK(rep.min_gap >= -1e-9);
}

TEST_CASE("certify_ccc is worker-count invariant") {
    CertificateReport a = certify_ccc(preset("ccc_neutral_scheme"), 2.15, 0.05, 1);
    CertificateReport b = certify_ccc(preset("ccc_neutral_scheme"), 2.15, 0.05, 3);
    CHECK(a.min_gap == b.min_gap);
    CHECK(a.argmin.x == b.argmin.x);
    CHECK(a.argmin.y == b.argmin.y);
    CHECK(a.argmin.z == b.argmin.z);
    CHECK(a.configs_checked == b.configs_checked);
}

TEST_CASE("certify_ccc below the lower bound finds violations") {
    CertificateReport rep = certify_ccc(preset("ccc_neutral_scheme"), 2.05, 0.05);
    REQUIRE_FALSE(rep.violations.empty());
    // hand-derived witness: (1/2, 1/2, 1) with signs (o, o, -)
    TripleConfig w = make_cfg(0.5, 0.5, 1.0,
                              {EdgeSign::Neutral, EdgeSign::Neutral, EdgeSign::Negative});
    double gap = triple_gap(w, preset("ccc_neutral_scheme"), 2.05, CertMode::Ccc);
    CHECK(gap == Catch::Approx(2.05 * 0.15 - 0.3225).margin(1e-12));
    CHECK(gap < -1e-9);
}

TEST_CASE("all-neutral triples have nonnegative gap already at alpha 2") {
    RoundingScheme s = preset("ccc_neutral_scheme");
    for (double x = 0; x <= 1.0001; x += 0.1)
        for (double y = 0; y <= 1.0001; y += 0.1)
            for (double z = 0; z <= 1.0001; z += 0.1) {
                if (!triangle_ok(x, y, z)) continue;
                TripleConfig c = make_cfg(std::min(x, 1.0), std::min(y, 1.0), std::min(z, 1.0),
                                          {EdgeSign::Neutral, EdgeSign::Neutral,
                                           EdgeSign::Neutral});
                CHECK(triple_gap(c, s, 2.0, CertMode::Ccc) >= -1e-9);
                c.signs = {EdgeSign::Neutral, EdgeSign::Negative, EdgeSign::Negative};
                CHECK(triple_gap(c, s, 2.0, CertMode::Ccc) >= -1e-9);
            }
}

TEST_CASE("violation region") {
    PiecewiseFn fplus = ccc_plus_fn();
    SECTION("the chosen f-circ stays outside at alpha 2.15") {
        PiecewiseFn fcirc = ccc_circ_fn();
        for (int i = 0; i <= 100; ++i) {
            double t = i / 200.0; // 2t spans [0,1]
            CHECK(violation_region_expr(fplus, 2.15, t, fcirc.eval(2 * t)) >= -1e-12);
        }
    }
    SECTION("slices with p_y = 1 are empty") {
        for (double t : {0.51, 0.6, 0.8, 1.0})
            for (int j = 0; j <= 50; ++j)
                CHECK(violation_region_expr(fplus, 2.15, t, j / 50.0) >= -1e-12);
    }
    SECTION("alpha 2 has a non-empty slice at t=0.25") {
        bool found = false;
        for (int j = 0; j <= 100; ++j)
            if (violation_region_expr(fplus, 2.0, 0.25, j / 100.0) < 0) found = true;
        CHECK(found);
        auto pts = violation_region(fplus, 2.0, 0.01);
        CHECK_FALSE(pts.empty());
    }
    SECTION("point list matches the expression") {
        auto pts = violation_region(fplus, 2.0, 0.05);
        for (const auto& p : pts)
            CHECK(violation_region_expr(fplus, 2.0, p.x / 2, p.p) < 0);
    }
}

TEST_CASE("wcc lower bound") {
    CHECK_FALSE(lb_wcc(3.32).feasible);
    CHECK(lb_wcc(10.0 / 3).feasible);
    CHECK(lb_wcc(3.34).feasible);
    CHECK_FALSE(lb_wcc(3.0).feasible);
    double thr = lb_bisect([](double a) { return lb_wcc(a); }, 3.0, 4.0, 1e-8);
    CHECK(thr == Catch::Approx(10.0 / 3).margin(1e-6));
    CHECK_FALSE(lb_wcc(10.0 / 3).witness.empty());
}

TEST_CASE("ccc lower bound") {
    LowerBoundReport r211 = lb_ccc(2.11);
    CHECK_FALSE(r211.feasible);
    CHECK(lb_ccc_h(std::sqrt(1 - 2.11 / 4)) == Catch::Approx(7.7e-3).margin(1e-3));
    CHECK(lb_ccc(2.15).feasible);
    CHECK(lb_ccc_h(std::sqrt(1 - 2.15 / 4)) < 0);
    double thr = lb_bisect([](double a) { return lb_ccc(a); }, 2.0, 2.5, 1e-8);
    CHECK(thr == Catch::Approx(2.1124).margin(1e-3));
    CHECK_THROWS_AS(lb_ccc(1.5), std::invalid_argument);
    CHECK_THROWS_AS(lb_ccc(4.0), std::invalid_argument);
}

namespace {

void check_rows(const std::vector<ExtremalRow>& rows,
                const std::vector<std::array<Rat, 3>>& expected) {
    REQUIRE(rows.size() == expected.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(i, rows[i].region, rows[i].x.str(), rows[i].y.str(), rows[i].z.str(),
                sign_char(rows[i].sign));
        CHECK(rows[i].gap[0] == expected[i][0]);
        CHECK(rows[i].gap[1] == expected[i][1]);
        CHECK(rows[i].gap[2] == expected[i][2]);
    }
}

} // namespace

TEST_CASE("extremal table: 10/3 scheme") {
    ExtremalTable t = extremal_tables(preset("wcc_tight"), Rat(10, 3), Appendix::B);
    const Rat z(0);
    std::vector<std::array<Rat, 3>> expected{
        {z, z, z}, {Rat(7, 3), Rat(7, 3), Rat(7, 3)},             // I (0,0)
        {z, Rat(4, 3), Rat(4, 3)}, {Rat(7, 3), Rat(1), Rat(1)},   // I (0,2/5)
        {Rat(2, 3), Rat(2, 3), Rat(4, 3)}, {Rat(5, 3), Rat(5, 3), Rat(1)}, // I (1/5,1/5)
        {Rat(-2, 3), Rat(2, 3), Rat(4, 3)}, {Rat(3), Rat(5, 3), Rat(1)},   // II (0,2/5)
        {z, z, Rat(4, 3)}, {Rat(7, 3), Rat(7, 3), Rat(1)},        // II (1/5,1/5)
        {Rat(-1, 3), Rat(1, 3), Rat(2)}, {Rat(8, 3), Rat(2), Rat(1, 3)},   // II (1/5,2/5)
        {z, z, Rat(2)}, {Rat(7, 3), Rat(7, 3), Rat(1, 3)},        // II (3/10,3/10)
        {Rat(-1, 3), Rat(1, 3), Rat(2)}, {Rat(8, 3), Rat(2), Rat(1, 3)},   // III (1/5,2/5)
        {z, z, Rat(2)}, {Rat(7, 3), Rat(7, 3), Rat(1, 3)},        // III (3/10,3/10)
        {Rat(1, 3), Rat(1, 3), Rat(8, 3)}, {Rat(2), Rat(2), Rat(-1, 3)},   // III (2/5,2/5)
        {z, Rat(1), Rat(1)}, {z, Rat(4, 3), Rat(4, 3)},           // VI (0,3/5)
        {z, Rat(7, 3), Rat(7, 3)}, {z, z, z},                     // VI (0,1)
        {z, Rat(1), Rat(7, 3)}, {z, Rat(4, 3), z},                // VI (2/5,3/5)
    };
    check_rows(t.rows, expected);

    std::vector<std::array<Rat, 3>> boundary{
        {z, z, z}, {z, z, z},                                     // (3/5,3/5,1)
        {z, Rat(7, 3), Rat(7, 3)}, {z, z, z},                     // (2/5-d,1,1)
        {z, Rat(7, 9), Rat(7, 9)}, {z, z, z},                     // (2/5+d,1,1)
        {z, z, z}, {z, z, z},                                     // (3/5,1,1)
        {z, z, z}, {z, z, z},                                     // (1,1,1)
    };
    check_rows(t.boundary_rows, boundary);
}

TEST_CASE("extremal table: alpha 6 scheme") {
    ExtremalTable t = extremal_tables(preset("wcc_charikar_gao"), Rat(6), Appendix::A);
    const Rat z(0);
    std::vector<std::array<Rat, 3>> expected{
        {z, z, z}, {Rat(5), Rat(5), Rat(5)},                      // I (0,0)
        {z, Rat(2), Rat(2)}, {Rat(5), Rat(3), Rat(3)},            // I (0,1/3)
        {Rat(1), Rat(1), Rat(2)}, {Rat(4), Rat(4), Rat(3)},       // I (1/6,1/6)
        {Rat(-1, 3), Rat(5, 3), Rat(2)}, {Rat(16, 3), Rat(10, 3), Rat(3)}, // II (0,1/3)
        // the printed source has (13/3, 1/3, 3) here, but the configuration is
        // symmetric in x and y, so the first two entries must agree: 13/3
        {Rat(2, 3), Rat(2, 3), Rat(2)}, {Rat(13, 3), Rat(13, 3), Rat(3)},  // II (1/6,1/6)
        {Rat(4, 3), Rat(4, 3), Rat(4)}, {Rat(11, 3), Rat(11, 3), Rat(1)},  // II (1/3,1/3)
        {z, Rat(3), Rat(3)}, {z, Rat(2), Rat(2)},                 // V (0,2/3)
        {z, Rat(5), Rat(5)}, {z, z, z},                           // V (0,1)
        {z, Rat(3), Rat(5)}, {z, Rat(2), z},                      // V (1/3,2/3)
    };
    check_rows(t.rows, expected);

    std::vector<std::array<Rat, 3>> boundary{
        {Rat(1), Rat(1), Rat(26, 9)}, {Rat(2, 3), Rat(2, 3), Rat(-1, 9)}, // (2/3-d,2/3-d,1)
        {z, Rat(1), Rat(5, 3)}, {z, Rat(2, 3), z},                // (2/3-d,2/3+d,1)
        {z, z, z}, {z, z, z},                                     // (2/3+d,2/3+d,1)
        {z, Rat(5), Rat(5)}, {z, z, z},                           // (1/3-d,1,1)
        {z, Rat(10, 3), Rat(10, 3)}, {z, z, z},                   // (1/3+d,1,1)
        {z, Rat(5, 3), Rat(5, 3)}, {z, z, z},                     // (2/3-d,1,1)
        {z, z, z}, {z, z, z},                                     // (2/3+d,1,1)
        {z, z, z}, {z, z, z},                                     // (1,1,1)
    };
    check_rows(t.boundary_rows, boundary);
}

TEST_CASE("ccc case minimum") {
    CaseMinimum m = ccc_case_minimum();
    CHECK(m.value >= 5e-6);
    CHECK(m.value <= 9e-6);
    CHECK(m.argmin_y == Catch::Approx(0.4788).margin(1e-3));
    CHECK(ccc_case_expr(0.19) > m.value);
    // the y < 0.19 sub-case expression at y = 0
    CHECK((129 * 0.0 - 550 * 0.0 + 230) / 200.0 == Catch::Approx(23.0 / 20));
}
