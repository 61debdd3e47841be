#ifndef ZCHAIN_STRATA_HPP
#define ZCHAIN_STRATA_HPP

#include <cstdint>

#include "zrep.hpp"

namespace zchain {

// The 0/1 function on arrows recording which maps of a dimension-1
// subrepresentation vanish.  Interior bits are stored; tail bits are
// implied by the ambient representation's tails.
struct ArrowProfile {
    int lo = 0, hi = 0;             // vertex window [lo, hi]
    std::vector<uint8_t> up, dn;    // a^i, a_i for lo <= i < hi
    TailKind left = TailKind::ForwardIso;
    TailKind right = TailKind::BackwardIso;

    int arrows() const { return hi - lo; }
    int up_at(int i) const;  // any arrow index, tails included
    int dn_at(int i) const;
    bool is_special_compatible() const;  // a^i * a_i = 0 everywhere
    bool is_exact() const;               // every pair is (0,1) or (1,0)
    std::vector<int> sinks() const;      // vertices in [lo, hi]
    std::vector<int> sources() const;

    bool operator==(const ArrowProfile& o) const {
        return lo == o.lo && hi == o.hi && up == o.up && dn == o.dn && left == o.left &&
               right == o.right;
    }
    bool operator<(const ArrowProfile& o) const;  // lexicographic on bits
    std::string str() const;                      // e.g. "10.01.00"
};

ArrowProfile profile_of(const SubrepLine& w, const ZRep& v);

// All exact profiles on the window [0, d] with the tail pattern of an
// exact colinked chain of finite cosupport: one per interleaved
// sink/source sequence, in lexicographic order.
std::vector<ArrowProfile> enumerate_exact_profiles(int d);

// Nonempty iff every sink t of the profile has r_t > 0.
bool stratum_nonempty(const ArrowProfile& p, const TypeVector& r);

// Pointwise order b <= a and pointwise minimum.
bool closure_leq(const ArrowProfile& b, const ArrowProfile& a);
ArrowProfile meet(const ArrowProfile& a, const ArrowProfile& b);

// Locally closed cell of a nonempty exact stratum: projective factors at
// the sinks, affine factors between them, one torus factor per source.
struct StratumCell {
    std::vector<int> sinks, sources;
    std::vector<int> proj_dims;    // r_{t_i} - 1 per sink
    std::vector<int> affine_exps;  // leading, between consecutive sinks, trailing
    int torus = 0;
};

StratumCell cell_structure(const ArrowProfile& p, const TypeVector& r);

// Integer-coefficient point count in the field size q.
struct CountPolynomial {
    std::vector<long long> c;  // c[k] q^k

    int deg() const;
    long long eval(long long q) const;
    CountPolynomial operator*(const CountPolynomial& o) const;
    CountPolynomial operator+(const CountPolynomial& o) const;
    std::string str() const;
    bool operator==(const CountPolynomial& o) const { return c == o.c; }
};

CountPolynomial count_poly(const StratumCell& cell);

// Irreducible-component profiles of the variety of dimension-1
// subrepresentations: the exact profiles with nonempty strata, on the
// minimal cosupport interval.  Exact linked input is handled through its
// dual.
std::vector<ArrowProfile> components(const ZRep& v);

struct OraclePoint {
    SubrepLine line;
    ArrowProfile profile;
};

// Brute force over F_q: every tuple of projective points satisfying the
// adjacent wedge conditions, grouped by profile, deterministically
// ordered.  Input over Q is reduced mod q.  Search space is capped at
// 10^6 tuples.  The all-pairs wedge conditions are re-verified on every
// returned point.
std::vector<OraclePoint> oracle_points(const ZRep& v, int q, bool parallel = true);
std::vector<OraclePoint> oracle_points_serial(const ZRep& v, int q);

enum class ArrowDir { Forward, Backward };

// The explicit one-parameter family x + t y through w that switches on one
// arrow bit; at t = 0 it recovers w, at generic t it lies in the stratum
// with the chosen bit raised.
struct DeformationFamily {
    SubrepLine family;               // over Q(t)
    ArrowProfile generic_profile;    // profile at generic t
    bool trivial = false;            // requested bit was already set
};

DeformationFamily deformation_witness(const ZRep& v, const SubrepLine& w, int arrow,
                                      ArrowDir dir);

// Rational point of the canonical colinked chain dual(u(r)) in the same
// stratum as an F_p oracle point, obtained by lifting its free cell
// coordinates.  The result reduces mod p to a scalar multiple of the
// input at every vertex.
SubrepLine lift_point_rational(const TypeVector& r, const SubrepLine& point_fp,
                               const ArrowProfile& profile);

// Evaluate a Q(t) family at the smallest nonnegative integer t that keeps
// every generator nonzero; returns the rational point and the value used.
SubrepLine evaluate_family(const SubrepLine& family_qt, mpq_class* t_used = nullptr);

}  // namespace zchain

#endif
