#ifndef ZCHAIN_ZREP_HPP
#define ZCHAIN_ZREP_HPP

#include <optional>

#include "subspace.hpp"

namespace zchain {

// Behavior of the infinitely many arrows beyond one end of the window.
//   ForwardIso:  every forward map (alpha^) is the identity, every
//                backward map (alpha_) is zero.
//   BackwardIso: every backward map is the identity, every forward is zero.
//   Truncated:   the representation is undefined beyond the window.
enum class TailKind { ForwardIso, BackwardIso, Truncated };

std::string tail_str(TailKind t);
TailKind parse_tail(const std::string& s);

// Three-valued answer for predicates that quantify over all of Z when a
// Truncated tail hides part of the data.
enum class Tri { False, True, Undetermined };

inline bool definitely(Tri t) { return t == Tri::True; }

// The tuple (r_0, ..., r_d) classifying exact linked chains of finite
// support; r_0, r_d != 0, interior zeros allowed.
struct TypeVector {
    std::vector<int> r;

    TypeVector() = default;
    explicit TypeVector(std::vector<int> entries);

    int d() const { return static_cast<int>(r.size()) - 1; }
    int total() const;                    // r = sum of entries
    int R(int i) const;                   // r_0 + ... + r_i (0 for i < 0)
    int S(int i) const { return total() - R(i); }
    int at(int i) const { return (i < 0 || i > d()) ? 0 : r[i]; }
    bool operator==(const TypeVector& o) const { return r == o.r; }
    std::string str() const;
};

// A finitely presented representation of the quiver with vertex set Z and
// opposite arrow pairs between consecutive vertices.  fwd[k] is the matrix
// of the forward map V_{lo+k} -> V_{lo+k+1}, bwd[k] the backward map
// V_{lo+k+1} -> V_{lo+k}.  Beyond the window the maps are given by the
// tails.
class ZRep {
  public:
    // one zero-dimensional vertex, truncated on both sides
    ZRep() : fs_(field_Q()), lo_(0), dims_{0}, left_(TailKind::Truncated),
             right_(TailKind::Truncated) {}
    ZRep(FieldSpec fs, int lo, std::vector<int> dims, std::vector<Matrix> fwd,
         std::vector<Matrix> bwd, TailKind left, TailKind right);

    const FieldSpec& field() const { return fs_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    int window_len() const { return static_cast<int>(dims_.size()); }
    TailKind left_tail() const { return left_; }
    TailKind right_tail() const { return right_; }
    const std::vector<int>& dims() const { return dims_; }

    // Dimension of V_i for any vertex, using tail constancy beyond the window.
    int dim_at(int i) const;
    // Matrix of the forward map at arrow i (V_i -> V_{i+1}) for any arrow
    // index covered by the window or a non-Truncated tail.
    Matrix fwd_map(int i) const;
    Matrix bwd_map(int i) const;  // V_{i+1} -> V_i
    const std::vector<Matrix>& fwd_raw() const { return fwd_; }
    const std::vector<Matrix>& bwd_raw() const { return bwd_; }

    bool operator==(const ZRep& o) const;

  private:
    FieldSpec fs_;
    int lo_;
    std::vector<int> dims_;
    std::vector<Matrix> fwd_, bwd_;
    TailKind left_, right_;
};

// The canonical exact linked chain of type r: window [0, d], every vertex
// k^r, forward maps diag(I_{R_i}, 0), backward maps diag(0, I_{S_i}),
// BackwardIso left tail and ForwardIso right tail.
ZRep make_u_of_r(const TypeVector& r, FieldSpec fs);

ZRep dual(const ZRep& v);
ZRep translate(const ZRep& v, int t);
// Mirror i -> -i; swaps the roles of forward and backward maps.
ZRep reverse(const ZRep& v);

Tri is_special(const ZRep& v);
Tri is_linked(const ZRep& v);
Tri is_colinked(const ZRep& v);
Tri is_exact(const ZRep& v);
// Axiom checks that report the violated condition, for error messages.
std::optional<std::string> special_failure(const ZRep& v);
std::optional<std::string> linked_failure(const ZRep& v, bool& undetermined);
std::optional<std::string> colinked_failure(const ZRep& v, bool& undetermined);
std::optional<std::string> exact_failure(const ZRep& v);
Tri is_pure(const ZRep& v);
// Opposite composites are nonzero multiples of the identity at every
// window arrow pair.  Tails are not consulted: iso/zero tails are never
// general, and the generic fibers of smoothings are compared on their
// window only.
Tri is_general(const ZRep& v);

// The composite map V_i -> V_j (identity when i = j, forward composite for
// j > i, backward for j < i).  Indices may run beyond the window only over
// non-Truncated tails.
Matrix composite(const ZRep& v, int i, int j);

struct MaybeInterval {
    bool finite = false;
    int lo = 0, hi = 0;
    std::string str() const;
};

// Minimal interval H such that some composite from H surjects onto every
// vertex (support), resp. injects from every vertex (cosupport).  Requires
// non-Truncated tails.  Ties broken leftmost.
MaybeInterval support_interval(const ZRep& v);
MaybeInterval cosupport_interval(const ZRep& v);

// Type vector of an exact linked chain of finite support, anchored so the
// minimal support starts at 0.  Colinked input is classified through its
// dual.  Throws ContractViolation naming the violated axiom otherwise.
TypeVector classify(const ZRep& v);

// A simple basis: per-vertex vector lists B_i whose composite transports
// form a basis at every window vertex, plus the change-of-basis matrices
// g_i realizing the isomorphism onto make_u_of_r(classify(v)).
struct SimpleBasis {
    TypeVector type;
    int support_lo = 0;                   // window index where block 0 sits
    std::vector<std::vector<Vec>> blocks; // indexed by 0..d
    std::vector<Matrix> iso;              // g_i per window vertex, v -> u(r)
};

SimpleBasis simple_basis(const ZRep& v);

// A pure dimension-1 subrepresentation given by one nonzero generator per
// window vertex.  Tail vertices carry transported copies and need no data.
struct SubrepLine {
    int lo = 0;
    std::vector<Vec> x;

    int hi() const { return lo + static_cast<int>(x.size()) - 1; }
    const Vec& at(int i) const { return x[i - lo]; }
    Vec& at(int i) { return x[i - lo]; }
};

// Wedge conditions against the adjacent maps of v; throws
// ContractViolation when w is not a subrepresentation line.
void validate_line(const ZRep& v, const SubrepLine& w);

// The representation on the line itself: dims 1, maps the induced scalars.
ZRep line_as_rep(const ZRep& v, const SubrepLine& w);

// Field-change helpers for oracles and smoothing machinery.
ZRep reduce_mod_p(const ZRep& v, int p);     // Q -> F_p entrywise
ZRep rep_q_to_qt(const ZRep& v);             // Q -> Q(t) entrywise
SubrepLine line_q_to_qt(const SubrepLine& w);
SubrepLine line_reduce_mod_p(const SubrepLine& w, int p);

}  // namespace zchain

#endif
