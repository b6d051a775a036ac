#include "rotdisc/body.hpp"
#include "rotdisc/errors.hpp"
#include "rotdisc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace rotdisc;

namespace {

ConvexBody unit_disc() {
    return ConvexBody({CircularPiece{{0.0, 0.0}, 1.0, 0.0, two_pi}});
}

ConvexBody unit_square() {
    return polygon_body({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

ConvexBody rect(double w, double h) {
    return polygon_body({{0, 0}, {w, 0}, {w, h}, {0, h}});
}

ConvexBody regular_ngon(int n) {
    std::vector<Vec2> vs;
    for (int k = 0; k < n; ++k) vs.push_back(dir(two_pi * k / n));
    return polygon_body(vs);
}

// two unit-radius caps joined by horizontal lines: C^1 with zero-turn joints
ConvexBody stadium() {
    return ConvexBody({
        LinePiece{{-1, -1}, {1, -1}},
        CircularPiece{{1, 0}, 1.0, -0.5 * pi, 0.5 * pi},
        LinePiece{{1, 1}, {-1, 1}},
        CircularPiece{{-1, 0}, 1.0, 0.5 * pi, 1.5 * pi},
    });
}

// the convex lens between y = x^2 and y = x; area 1/6, centroid (1/2, 2/5)
ConvexBody parabola_lens() {
    return ConvexBody({
        PowerPiece{{0, 0}, {1, 0}, {0, 1}, 2.0, 0.0, 1.0, false},
        LinePiece{{1, 1}, {0, 0}},
    });
}

// same lens mirrored across y = x, exercising a reversed power piece
ConvexBody parabola_lens_mirrored() {
    return ConvexBody({
        LinePiece{{0, 0}, {1, 1}},
        PowerPiece{{0, 0}, {0, 1}, {1, 0}, 2.0, 0.0, 1.0, true},
    });
}

// Dense boundary sampling oracle: walks raw piece parameters, so it shares no
// code with the support ladder or the chord solvers.
bool brute_chord(const ConvexBody& b, double theta, double lambda, double& out_len) {
    Vec2 u = dir(theta);
    double lo = 1e300;
    std::vector<Vec2> pts;
    for (const auto& p : b.pieces()) {
        double u0 = piece_u0(p), u1 = piece_u1(p);
        for (int k = 0; k <= 6000; ++k) {
            Vec2 v = piece_point(p, u0 + (u1 - u0) * k / 6000.0);
            pts.push_back(v);
            lo = std::min(lo, dot(v, u));
        }
    }
    double target = lo + lambda;
    std::vector<Vec2> crossings;
    for (size_t k = 0; k < pts.size(); ++k) {
        Vec2 a = pts[k], c = pts[(k + 1) % pts.size()];
        double fa = dot(a, u) - target, fc = dot(c, u) - target;
        if (fa == 0.0 || fa * fc < 0.0) {
            double w = fa / (fa - fc);
            crossings.push_back(a + w * (c - a));
        }
    }
    if (crossings.size() != 2) return false;
    out_len = norm(crossings[0] - crossings[1]);
    return true;
}

} // namespace

TEST_SUITE_BEGIN("body");

TEST_CASE("support matches closed forms") {
    auto d = unit_disc();
    auto q = unit_square();
    for (double th : {0.0, 0.3, 2.0, 4.9}) CHECK(d.support(th) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(q.support(0.0) == doctest::Approx(1.0));
    CHECK(q.support(0.25 * pi) == doctest::Approx(std::sqrt(2.0)));
    CHECK(q.support(pi) == doctest::Approx(0.0));
    CHECK(q.width(0.25 * pi) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("chord lengths on disc, square, rectangle") {
    auto d = unit_disc();
    CHECK(d.chord(0.7, 1.0).length == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.chord(2.1, 0.5).length == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    auto q = unit_square();
    CHECK(q.chord(0.25 * pi, 0.3).length == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(q.gamma(0.25 * pi, 0.1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(d.gamma(1.0, 0.5) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    auto r = rect(1.0, 2.0); // width 1 along x, height 2
    CHECK(r.gamma(0.0, 0.1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("chord agrees with dense boundary sampling") {
    std::vector<ConvexBody> zoo;
    zoo.push_back(unit_disc());
    zoo.push_back(unit_square());
    zoo.push_back(regular_ngon(6));
    zoo.push_back(stadium());
    zoo.push_back(parabola_lens());
    int checked = 0;
    for (size_t bi = 0; bi < zoo.size(); ++bi) {
        const auto& b = zoo[bi];
        for (int k = 0; k < 12; ++k) {
            double theta = rng_uniform(100 + bi, k) * two_pi;
            double w = b.width(theta);
            double lambda = (0.08 + 0.84 * rng_uniform(200 + bi, k)) * w;
            double ref = 0.0;
            if (!brute_chord(b, theta, lambda, ref)) continue;
            double got = b.chord(theta, lambda).length;
            CHECK(got == doctest::Approx(ref).epsilon(1e-6));
            ++checked;
        }
    }
    CHECK(checked > 40);
}

TEST_CASE("chord length is concave in depth") {
    std::vector<ConvexBody> zoo;
    zoo.push_back(regular_ngon(6));
    zoo.push_back(stadium());
    zoo.push_back(parabola_lens());
    for (size_t bi = 0; bi < zoo.size(); ++bi) {
        const auto& b = zoo[bi];
        for (int k = 0; k < 25; ++k) {
            double theta = rng_uniform(300 + bi, k) * two_pi;
            double w = b.width(theta);
            double l1 = rng_uniform(400 + bi, k) * w;
            double l3 = rng_uniform(500 + bi, k) * w;
            if (l1 > l3) std::swap(l1, l3);
            double mid = b.chord(theta, 0.5 * (l1 + l3)).length;
            double avg = 0.5 * (b.chord(theta, l1).length + b.chord(theta, l3).length);
            CHECK(mid >= avg - 1e-9 * b.scale());
        }
    }
}

TEST_CASE("empty and degenerate chords") {
    auto q = unit_square();
    CHECK_THROWS_AS(q.chord(0.0, 1.5), EmptyChordError);
    CHECK_THROWS_AS(q.chord(0.0, -0.2), EmptyChordError);
    // flat minimizing face at depth zero: the supporting segment
    auto c0 = q.chord(0.5 * pi, 0.0);
    CHECK(c0.length == doctest::Approx(1.0));
    CHECK(unit_disc().chord(1.3, 0.0).length == doctest::Approx(0.0).epsilon(1e-9));
    // depth equal to the width picks up the far face
    CHECK(q.chord(0.5 * pi, 1.0).length == doctest::Approx(1.0));
}

TEST_CASE("gamma symmetry and the width-ratio lower bound") {
    std::vector<ConvexBody> zoo;
    zoo.push_back(unit_disc());
    zoo.push_back(unit_square());
    zoo.push_back(rect(3.0, 1.0));
    zoo.push_back(regular_ngon(6));
    for (size_t bi = 0; bi < zoo.size(); ++bi) {
        const auto& b = zoo[bi];
        auto [L, S] = b.diameters();
        for (int k = 0; k < 20; ++k) {
            double theta = rng_uniform(600 + bi, k) * two_pi;
            double lambda = rng_uniform(700 + bi, k) * 0.9 * b.width(theta);
            // pi-periodicity up to angle-wrapping roundoff
            CHECK(b.gamma(theta, lambda) ==
                  doctest::Approx(b.gamma(theta + pi, lambda)).epsilon(1e-12));
            // chords at depth 1/rho stay above (S/L)/rho once rho >= 2/S
            double rho = (2.0 / S) * std::pow(1e4, rng_uniform(800 + bi, k));
            CHECK(b.gamma(theta, 1.0 / rho) >= (S / L) / rho * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("diameters of the standard bodies") {
    auto [lq, sq] = unit_square().diameters();
    CHECK(lq == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-6));
    auto [ld, sd] = unit_disc().diameters();
    CHECK(ld == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sd == doctest::Approx(2.0).epsilon(1e-6));
    auto [lr, sr] = rect(3.0, 1.0).diameters();
    CHECK(lr == doctest::Approx(std::sqrt(10.0)).epsilon(1e-9));
    CHECK(sr == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("normal intervals at vertices and smooth points") {
    auto q = unit_square();
    // corner (0,0) sits at arc length 0: its normals fill a quarter turn
    auto nv = q.normal_interval(0.0);
    CHECK(nv.start == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(nv.length == doctest::Approx(0.5 * pi).epsilon(1e-12));
    // corner (1,0) at arc length 1
    auto nv2 = q.normal_interval(1.0);
    CHECK(nv2.start == doctest::Approx(0.5 * pi));
    CHECK(nv2.length == doctest::Approx(0.5 * pi));
    // edge interior: degenerate interval at the inward normal
    auto ne = q.normal_interval(0.5);
    CHECK(ne.length == doctest::Approx(0.0));
    CHECK(ne.start == doctest::Approx(0.5 * pi));
    // smooth boundary: always degenerate
    auto d = unit_disc();
    auto ns = d.normal_interval(1.234);
    CHECK(ns.length == doctest::Approx(0.0));
}

TEST_CASE("angular trace and symmetric threshold") {
    // disc: no corners at all
    auto td = unit_disc().angular_trace();
    CHECK(td.trace.empty());
    CHECK(td.psi == doctest::Approx(0.0));

    // square: quarter-turn corners, overlap components of length pi/2
    auto tq = unit_square().angular_trace();
    CHECK(tq.trace.components().size() == 4);
    CHECK(tq.psi == doctest::Approx(0.5 * pi).epsilon(1e-12));

    // hexagon: the symmetric overlap is the circle minus the six edge
    // normals, so its components are pinned to the corner turn pi/3
    auto th = regular_ngon(6).angular_trace();
    CHECK(th.trace.components().size() == 6);
    CHECK(th.trace.measure() == doctest::Approx(two_pi).epsilon(1e-9));
    CHECK(th.psi == doctest::Approx(pi / 3.0).epsilon(1e-12));

    // triangle: three components of 2*pi/3 each, overlap components pi/3
    auto tt = regular_ngon(3).angular_trace();
    REQUIRE(tt.trace.components().size() == 3);
    for (const auto& c : tt.trace.components())
        CHECK(c.length == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-12));
    CHECK(tt.psi == doctest::Approx(pi / 3.0).epsilon(1e-12));

    // centrally symmetric bodies: psi equals the widest single corner cone
    for (int n : {4, 6, 8}) {
        auto t = regular_ngon(n).angular_trace();
        double widest = 0.0;
        for (const auto& j : regular_ngon(n).joints()) widest = std::max(widest, j.turn());
        CHECK(t.psi == doctest::Approx(widest).epsilon(1e-9));
    }
}

TEST_CASE("portion of perimeter") {
    auto d = unit_disc();
    CHECK(d.portion_of_perimeter({1.1, 0.5 * pi}) == doctest::Approx(0.5 * pi).epsilon(1e-9));
    CHECK(d.portion_of_perimeter({0.0, two_pi}) == doctest::Approx(two_pi).epsilon(1e-9));

    auto q = unit_square();
    // directions around 0 pin the minimum to the single left edge
    CHECK(q.portion_of_perimeter({-0.25 * pi, 0.5 * pi}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.portion_of_perimeter({0.0, two_pi}) == doctest::Approx(4.0).epsilon(1e-12));

    auto st = stadium();
    CHECK(st.portion_of_perimeter({0.0, two_pi}) == doctest::Approx(st.perimeter()).epsilon(1e-9));
    // monotone under inclusion
    for (int k = 0; k < 30; ++k) {
        double a = rng_uniform(900, k) * two_pi;
        double len = rng_uniform(901, k) * two_pi;
        double pad = rng_uniform(902, k) * (two_pi - len);
        double inner = st.portion_of_perimeter({a + 0.5 * pad, len});
        double outer = st.portion_of_perimeter({a, std::min(len + pad, two_pi)});
        CHECK(inner <= outer + 1e-9);
    }
}

TEST_CASE("corner cross-section law at a square vertex") {
    auto q = unit_square();
    // vertex (0,0) has normal cone [0, pi/2]; theta strictly inside
    for (double theta : {0.7, 0.2, 1.3}) {
        double lambda = 1e-4;
        double expect = 1.0 / std::tan(theta) + 1.0 / std::tan(0.5 * pi - theta);
        CHECK(q.chord(theta, lambda).length / lambda ==
              doctest::Approx(expect).epsilon(1e-2));
    }
}

TEST_CASE("semi-chords split symmetric configurations in half") {
    auto d = unit_disc();
    auto sc = d.semi_chords(2.3, 0.02);
    double半 = 0.0; // placeholder removed below
    (void)半;
    double expect = std::sqrt(0.02 * (2.0 - 0.02));
    CHECK(sc.left_len == doctest::Approx(expect).epsilon(1e-9));
    CHECK(sc.right_len == doctest::Approx(expect).epsilon(1e-9));

    auto q = unit_square();
    auto scq = q.semi_chords(0.25 * pi, 0.1);
    CHECK(scq.left_len == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(scq.right_len == doctest::Approx(0.1).epsilon(1e-9));

    // flat minimizing face: the split anchor is the face midpoint
    auto sce = q.semi_chords(0.5 * pi, 0.25);
    CHECK(sce.s_split == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sce.left_len == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("semi-chord parts always sum to the chord") {
    auto st = stadium();
    auto lens = parabola_lens();
    for (int k = 0; k < 40; ++k) {
        const ConvexBody& b = (k % 2) ? st : lens;
        double theta = rng_uniform(1000, k) * two_pi;
        double lambda = (0.05 + 0.9 * rng_uniform(1001, k)) * b.width(theta);
        auto sc = b.semi_chords(theta, lambda);
        CHECK(sc.left_len + sc.right_len == doctest::Approx(sc.base.length).epsilon(1e-14));
        CHECK(sc.left_len >= 0.0);
        CHECK(sc.right_len >= 0.0);
    }
}

TEST_CASE("semichord averages approach perimeter portions") {
    auto d = unit_disc();
    double got = d.semichord_average({0.0, 0.5 * pi}, 1e-3);
    CHECK(got == doctest::Approx(0.5 * pi).epsilon(0.02));

    auto q = unit_square();
    double gq = q.semichord_average({-0.25 * pi, 0.5 * pi}, 1e-3);
    CHECK(gq == doctest::Approx(1.0).epsilon(0.03));

    CHECK(q.semichord_average({1.0, 0.0}, 1e-3) == doctest::Approx(0.0));
}

TEST_CASE("area, centroid, perimeter closed forms") {
    auto d = unit_disc();
    CHECK(d.area() == doctest::Approx(pi).epsilon(1e-12));
    CHECK(d.centroid().x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.perimeter() == doctest::Approx(two_pi).epsilon(1e-12));

    auto q = unit_square();
    CHECK(q.area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.centroid().x == doctest::Approx(0.5));
    CHECK(q.centroid().y == doctest::Approx(0.5));

    auto lens = parabola_lens();
    CHECK(lens.area() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(lens.centroid().x == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(lens.centroid().y == doctest::Approx(0.4).epsilon(1e-10));
    double arc = 0.25 * (2.0 * std::sqrt(5.0) + std::log(2.0 + std::sqrt(5.0)));
    CHECK(lens.perimeter() == doctest::Approx(arc + std::sqrt(2.0)).epsilon(1e-10));

    auto mir = parabola_lens_mirrored();
    CHECK(mir.area() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(mir.centroid().x == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(mir.centroid().y == doctest::Approx(0.5).epsilon(1e-10));

    auto st = stadium();
    CHECK(st.area() == doctest::Approx(4.0 + pi).epsilon(1e-12));
    CHECK(st.perimeter() == doctest::Approx(4.0 + two_pi).epsilon(1e-12));
}

TEST_CASE("boundary parameterization round trips") {
    auto d = unit_disc();
    for (double s : {0.0, 1.0, 3.9, 6.0}) {
        Vec2 p = d.boundary_point(s);
        CHECK(p.x == doctest::Approx(std::cos(s)).epsilon(1e-10));
        CHECK(p.y == doctest::Approx(std::sin(s)).epsilon(1e-10));
    }
    auto q = unit_square();
    Vec2 mid = q.boundary_point(2.5);
    CLOSE: ;
    CHECK(mid.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mid.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat faces resolve first and last support positions") {
    auto q = unit_square();
    auto first = q.position_at_tangent(0.0, false);
    auto last = q.position_at_tangent(0.0, true);
    Vec2 pf = piece_point(q.pieces()[first.piece], first.u);
    Vec2 pl = piece_point(q.pieces()[last.piece], last.u);
    CHECK(pf.x == doctest::Approx(0.0));
    CHECK(pl.x == doctest::Approx(1.0));
    CHECK(pf.y == doctest::Approx(0.0));
    CHECK(pl.y == doctest::Approx(0.0));
}

TEST_CASE("membership tests with polar acceleration") {
    auto d = unit_disc();
    CHECK(d.contains({0.3, -0.4}));
    CHECK(!d.contains({0.8, 0.7}));
    CHECK(d.contains({0.0, 0.999999}));
    CHECK(!d.contains({0.0, 1.000001}));

    auto st = stadium();
    CHECK(st.contains({1.9, 0.1}));
    CHECK(!st.contains({1.9, 0.9}));

    // points nudged off the boundary along the outward normal
    auto lens = parabola_lens();
    for (int k = 0; k < 200; ++k) {
        double s = rng_uniform(1100, k) * lens.perimeter();
        BoundaryPos pos = lens.position_at_arclength(s);
        Vec2 p = piece_point(lens.pieces()[pos.piece], pos.u);
        Vec2 t = piece_deriv(lens.pieces()[pos.piece], pos.u);
        Vec2 nrm = Vec2{t.y, -t.x} / norm(t); // outward for CCW traversal
        double eps = 1e-6 * lens.scale();
        CHECK(lens.contains(p - eps * nrm));
        CHECK(!lens.contains(p + eps * nrm));
    }

    auto q = unit_square();
    CHECK(q.contains({0.0, 0.0}));
    CHECK(q.contains({1.0, 1.0}));
    CHECK(!q.contains({1.0 + 1e-9, 0.5}));
}

TEST_CASE("json round trip preserves geometry") {
    auto q = unit_square();
    auto q2 = ConvexBody::from_json(q.to_json());
    CHECK(q2.is_polygon());
    CHECK(q2.hash() == q.hash());

    auto st = stadium();
    auto st2 = ConvexBody::from_json(st.to_json());
    CHECK(st2.hash() == st.hash());
    for (int k = 0; k < 12; ++k) {
        double th = k * 0.5;
        CHECK(st2.support(th) == doctest::Approx(st.support(th)).epsilon(1e-14));
    }

    auto mir = parabola_lens_mirrored();
    auto mir2 = ConvexBody::from_json(mir.to_json());
    CHECK(mir2.hash() == mir.hash());
    CHECK(mir2.area() == doctest::Approx(mir.area()).epsilon(1e-14));

    CHECK_THROWS_AS(ConvexBody::from_json("{\"kind\":\"blob\"}"), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::from_json("not json"), std::invalid_argument);
}

TEST_CASE("construction rejects malformed boundaries") {
    // clockwise polygon: reflex at every joint
    CHECK_THROWS_AS(polygon_body({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);
    // gap between pieces
    CHECK_THROWS_AS(ConvexBody({
        LinePiece{{0, 0}, {1, 0}},
        LinePiece{{1.5, 0}, {0, 1}},
        LinePiece{{0, 1}, {0, 0}},
    }), std::invalid_argument);
    // power piece with the wrong handedness for its traversal
    CHECK_THROWS_AS(ConvexBody({
        PowerPiece{{0, 0}, {1, 0}, {0, 1}, 2.0, 0.0, 1.0, true},
        LinePiece{{1, 1}, {0, 0}},
    }), std::invalid_argument);
    // not convex
    CHECK_THROWS_AS(polygon_body({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}), std::invalid_argument);
}

TEST_CASE("transforms preserve structure") {
    auto q = unit_square();
    auto qr = rotate_body(q, 0.3);
    for (int k = 0; k < 16; ++k) {
        double th = k * 0.4;
        CHECK(qr.support(th) == doctest::Approx(q.support(th - 0.3)).epsilon(1e-12));
    }
    CHECK(qr.angular_trace().psi == doctest::Approx(q.angular_trace().psi).epsilon(1e-12));

    auto lens = parabola_lens();
    auto nt = normalize_to_torus(lens);
    CHECK(nt.diameters().first == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(nt.centroid().x == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(nt.centroid().y == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(nt.area() == doctest::Approx(lens.area() * std::pow(0.8 / lens.diameters().first, 2)).epsilon(1e-9));
}

TEST_SUITE_END();
