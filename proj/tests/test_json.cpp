#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_helpers.hpp"
#include "zchain/json_io.hpp"

using namespace zchain;
using namespace zchain::testing;

TEST_CASE("representation JSON round-trips over all three fields") {
    Rng rng(51);
    for (const TypeVector& tv : all_type_vectors(3, 2)) {
        ZRep u = rng.conjugate(make_u_of_r(tv, field_Q()));
        CHECK(rep_from_json(rep_to_json(u)) == u);
        ZRep up = make_u_of_r(tv, field_Fp(7));
        CHECK(rep_from_json(rep_to_json(up)) == up);
    }
    // rational function entries survive the string format
    ZRep qt(field_Qt(), 0, {2, 2},
            {Matrix::from_rows({{Scalar::t_var(), Scalar::one(field_Qt())},
                                {Scalar::zero(field_Qt()),
                                 Scalar::t_var() * Scalar::t_var() -
                                     Scalar::one(field_Qt()) / Scalar(field_Qt(), 2)}},
                               2, field_Qt())},
            {Matrix::zero(2, 2, field_Qt())}, TailKind::Truncated, TailKind::Truncated);
    CHECK(rep_from_json(rep_to_json(qt)) == qt);
    // byte-stable output
    CHECK(rep_to_json(qt).dump() == rep_to_json(rep_from_json(rep_to_json(qt))).dump());
}

TEST_CASE("scalar string formats parse back") {
    FieldSpec qt = field_Qt();
    for (const char* s : {"t", "1+t", "2*t^3-1/2*t+5", "(1+t)/(2-t)", "-t^2"}) {
        Scalar v = Scalar::parse(qt, s);
        CHECK(Scalar::parse(qt, v.str()) == v);
    }
    CHECK(Scalar::parse(field_Q(), "-3/4").str() == "-3/4");
    CHECK_THROWS_AS(Scalar::parse(field_Q(), "x"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(qt, "(1+t)/(0)"), ConfigError);
}

TEST_CASE("point JSON round-trips") {
    SubrepLine w;
    w.lo = -1;
    w.x = {qvec({1, 0}), qvec({2, 3}), qvec({0, 5})};
    SubrepLine back = line_from_json(line_to_json(w), field_Q());
    CHECK(back.lo == w.lo);
    CHECK(back.x == w.x);
}

TEST_CASE("fixture files load and reproduce the stated table") {
    ProfileFixture eq = fixture_from_json(parse_json_file("fixtures/two_elliptic_p_eq_n.json"));
    CHECK(eq.gY == 1);
    CHECK(eq.deg == 2);
    CHECK_FALSE(eq.note.empty());
    RRReport req = rr_report_fixture(eq);
    CHECK(req.h0 == 2);
    CHECK(req.h1 == 1);
    CHECK(req.h0 - req.h1 == req.deg - req.g + 1);
    CHECK_FALSE(req.rr_applicable);  // deg = 2 lies in [0, 2g-2] for g = 2
    CHECK(req.riemann_ok);

    ProfileFixture ne = fixture_from_json(parse_json_file("fixtures/two_elliptic_p_ne_n.json"));
    RRReport rne = rr_report_fixture(ne);
    CHECK(rne.h0 == 1);
    CHECK(rne.h1 == 0);
    CHECK(rne.h0 - rne.h1 == rne.deg - rne.g + 1);

    // the fixture chains really are special chains on their windows
    CHECK(is_special(eq.bundle_rep) != Tri::False);
    CHECK(is_special(ne.bundle_rep) != Tri::False);
    CHECK(is_special(eq.dual_rep) != Tri::False);
}

TEST_CASE("component poset dot output is stable and counts nodes") {
    ZRep v = dual(make_u_of_r(TypeVector({1, 1}), field_Q()));
    std::string dot = component_poset_dot(v);
    CHECK(dot == component_poset_dot(v));
    // two component boxes and one meet ellipse
    size_t boxes = 0, ellipses = 0, pos = 0;
    while ((pos = dot.find("shape=box", pos)) != std::string::npos) {
        ++boxes;
        pos += 1;
    }
    pos = 0;
    while ((pos = dot.find("shape=ellipse", pos)) != std::string::npos) {
        ++ellipses;
        pos += 1;
    }
    CHECK(boxes == 2);
    CHECK(ellipses == 1);
}

TEST_CASE("rr report JSON carries the difference fields") {
    RRReport r;
    r.h0 = 3;
    r.h1 = 0;
    r.deg = 2;
    r.g = 0;
    r.riemann_ok = true;
    r.rr_applicable = true;
    r.rr_ok = true;
    Json j = rr_report_to_json(r);
    CHECK(j["h0_minus_h1"] == 3);
    CHECK(j["deg_minus_g_plus_1"] == 3);
    CHECK(j["rr_ok"] == true);
}
