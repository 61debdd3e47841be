#ifndef ZCHAIN_HILBERT_HPP
#define ZCHAIN_HILBERT_HPP

#include "strata.hpp"

namespace zchain {

// One multihomogeneous polynomial: terms (coefficient, exponent vector over
// the concatenated coordinates of all factors).
struct MultiPoly {
    std::vector<std::pair<Scalar, std::vector<uint8_t>>> terms;
    std::vector<int> multidegree;  // per factor
};

// The wedge-relation ideal of a chain inside a product of projective
// spaces, one factor per window vertex.
struct MultiGradedIdeal {
    FieldSpec field = field_Q();
    std::vector<int> factor_dims;      // coordinate counts per factor
    std::vector<int> factor_vertices;  // vertex index per factor
    std::vector<MultiPoly> gens;       // bilinear wedge entries, deduplicated
};

enum class PairMode { Adjacent, All };

// Wedge conditions composite(i -> j)(x_i) ∧ x_j = 0 expanded into bilinear
// generators, for adjacent ordered pairs or all ordered pairs.  Zero
// polynomials are dropped and scalar multiples deduplicated.  The two modes
// cut out the same point set but not the same ideal: adjacent generators
// carry degree >= 1 in interior factors, so graded pieces with an interior
// degree 0 see no adjacent relations at all.  All is the defining ideal.
MultiGradedIdeal plucker_generators(const ZRep& v, PairMode mode = PairMode::All);

struct HilbertBounds {
    int max_degree = 4;   // per coordinate of the multidegree
    int max_factors = 4;
};

// dim (S/I)_degree, the graded piece of the coordinate ring: the count of
// monomials of the multidegree minus the rank of the generator multiples
// reaching it.  Exact integer.
long hilbert_function(const MultiGradedIdeal& I, const std::vector<int>& degree,
                      const HilbertBounds& bounds = {});

// binom(sum(degree) + r - 1, r - 1)
long expected_hilbert(int r, const std::vector<int>& degree);

// A one-parameter family over Q(t) whose t = 0 fiber is the canonical
// colinked chain dual(u(r)) and whose opposite composites equal t times the
// identity inside the window.
struct Smoothing {
    TypeVector type;
    ZRep rep;  // over Q(t)
};

Smoothing make_smoothing(const TypeVector& r);
ZRep smoothing_specialize(const Smoothing& s);              // t = 0 fiber, over Q
ZRep smoothing_evaluate(const Smoothing& s, const mpq_class& t);

// Lift of an exact dimension-1 subrepresentation of the special fiber to a
// subrepresentation of the family: generators x_i(t) with x_i(0) spanning
// the input and both adjacent wedge conditions vanishing identically.
SubrepLine lift_subrep(const Smoothing& s, const SubrepLine& w);

struct HilbertCell {
    std::vector<int> degree;
    long computed = 0;
    long expected = 0;
    bool equal = false;
    bool stable = false;  // heuristic: see hilbert_report
};

// The full comparison table over a degree box.  A cell is flagged stable
// when along every coordinate direction the values on its axis line are
// interpolated exactly by a polynomial of degree < r, i.e. the r-th finite
// differences vanish; this is a heuristic for having entered the
// polynomial range, reported but never asserted.
std::vector<HilbertCell> hilbert_report(const ZRep& v, int r, const std::vector<int>& box,
                                        PairMode mode = PairMode::All,
                                        bool parallel = true, long max_cells = 4096,
                                        const HilbertBounds& bounds = {});

}  // namespace zchain

#endif
