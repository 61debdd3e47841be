#ifndef ZCHAIN_CURVE_HPP
#define ZCHAIN_CURVE_HPP

#include "zrep.hpp"

namespace zchain {

// A point on one component, away from the node.  Components carry affine
// coordinates with the node at 0, so the coordinate must be nonzero; the
// point at infinity carries the base divisor and is not addressable.
struct CurvePoint {
    enum class Side { Y, Z };
    Side side = Side::Y;
    mpq_class coord = 1;
};

// Two smooth components meeting transversally at one node.  Explicit
// section spaces exist for rational components; positive genus enters only
// through fixtures carrying their own dimension data and matrices.
struct NodalCurve {
    enum class Model { RationalExplicit, ProfileOnly };
    int gY = 0, gZ = 0;
    Model model = Model::RationalExplicit;

    int genus() const { return gY + gZ; }
};

NodalCurve rational_curve();  // gY = gZ = 0, explicit model

// A line bundle: base multidegree supported at the infinity points, a node
// gluing scalar, and twists at points away from the node.
struct CurveBundle {
    int dY = 0, dZ = 0;
    mpq_class gluing = 1;
    std::vector<std::pair<CurvePoint, int>> twists;  // merged by point
};

int deg_on_Y(const CurveBundle& b);  // dY plus Y twists
int deg_on_Z(const CurveBundle& b);
int degree(const CurveBundle& b);

CurveBundle make_bundle(int dY, int dZ, const mpq_class& gluing = 1);
// Appends (P, mult) and merges twists at equal points.
CurveBundle point_twist(const CurveBundle& b, const CurvePoint& P, int mult = -1);
// The bundle with multidegree (2gY-1, 2gZ-1) twisted down by b: the h^1 side
// of the duality definition.
CurveBundle serre_dual(const NodalCurve& c, const CurveBundle& b);

// [wlo, whi] covering the degree crossover padded by two on each side.
std::pair<int, int> default_window(const CurveBundle& b);

// h^0 of the twisted bundles L^i (Y side twisted down by i at the node, Z
// side up) on the window, from explicit polynomial section spaces.
std::vector<int> h0_sequence(const NodalCurve& c, const CurveBundle& b, int wlo, int whi);

// The chain of section spaces with the restriction-and-extend maps between
// consecutive twists.  Truncated tails: the data beyond the window is
// governed by the degree bounds (maps pointing inward are injective beyond
// the core), which is what permits extending window subrepresentations.
struct SectionTower {
    ZRep rep;
    std::vector<std::pair<int, int>> multidegs;  // (deg L^i|_Y, deg L^i|_Z) per vertex
};

SectionTower build_tower(const NodalCurve& c, const CurveBundle& b, int wlo, int whi,
                         FieldSpec fs = field_Q());

// Pure subrepresentation of dimension n: full spaces on the plateau, grown
// outward between the image and the backward preimage of the previous step.
// Verified to be closed under both maps; throws naming the failing index.
std::vector<Subspace> winU_construct(const ZRep& rep, int n, int plateau_lo, int plateau_hi);

struct H0Result {
    int value = 0;
    int upper_bound = 0;       // min h^0 over the window
    bool exact = false;        // value meets the upper bound
    bool from_oracle = false;
    std::vector<Subspace> certificate;  // nonempty for construct-mode witnesses
};

// Certified computation of the maximum dimension of a pure
// subrepresentation of the section chain.  For the explicit rational model
// this is exact for every degree.
H0Result frak_h0(const NodalCurve& c, const CurveBundle& b);

// Exhaustive search over F_p for the maximal pure subrepresentation
// dimension of a window chain; the window must be padded so that window
// chains extend (core support plus one).  A maximal witness chain is
// written to *witness when requested.
int frak_h0_oracle(const ZRep& rep, long node_budget = 1000000,
                   std::vector<Subspace>* witness = nullptr);

struct RRReport {
    int h0 = 0, h1 = 0;
    int deg = 0, g = 0;
    bool h0_exact = false, h1_exact = false;
    bool riemann_ok = false;   // h0 >= deg - g + 1
    bool rr_applicable = false;
    bool rr_ok = false;        // h0 - h1 == deg - g + 1, when applicable
    std::string note;
};

RRReport rr_report(const NodalCurve& c, const CurveBundle& b);

bool check_desigualdade(const NodalCurve& c, const CurveBundle& b, const CurvePoint& P);

// Fixture for curves with positive-genus components: dimension sequences
// from the source example plus matrix realizations supplied as derived
// data.  The oracle reproduces the stated values on these matrices.
struct ProfileFixture {
    int gY = 0, gZ = 0;
    int deg = 0;
    std::pair<int, int> multideg = {0, 0};
    std::string note;
    ZRep bundle_rep;  // section chain of L
    ZRep dual_rep;    // section chain of omega ⊗ L^∨
};

// Step/plateau shape checks for supplied dimension sequences: applied when
// deg > 2g - 2 and the multidegree is normalized to (deg, 0); rejects
// fixtures that violate them.
void validate_fixture_dims(int gY, int gZ, std::pair<int, int> multideg, int wlo,
                           const std::vector<int>& dims);

// Fixture dimension sequence, returned verbatim after the shape checks.
std::vector<int> h0_sequence(const ProfileFixture& fix);

RRReport rr_report_fixture(const ProfileFixture& fix, int p = 2);

}  // namespace zchain

#endif
