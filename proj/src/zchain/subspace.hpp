#ifndef ZCHAIN_SUBSPACE_HPP
#define ZCHAIN_SUBSPACE_HPP

#include "matrix.hpp"

namespace zchain {

// A subspace of k^ambient stored as a reduced row-echelon basis (rows =
// dim).  The canonical form makes structural equality coincide with
// subspace equality.
class Subspace {
  public:
    Subspace() : ambient_(0), basis_(0, 0, field_Q()) {}
    // Rows of `span` spanning the subspace; reduced internally.
    Subspace(int ambient, const Matrix& span);
    static Subspace zero_subspace(int ambient, FieldSpec fs);
    static Subspace full(int ambient, FieldSpec fs);
    static Subspace span_of(const std::vector<Vec>& vecs, int ambient, FieldSpec fs);

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const FieldSpec& field() const { return basis_.field(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_row(int i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    // Coordinates of v in the echelon basis (read off pivot columns);
    // throws ContractViolation when v is not in the subspace.
    Vec coordinates(const Vec& v) const;

  private:
    int ambient_;
    Matrix basis_;
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
// {x : m x in s}; ambient of s must equal the codomain of m.
Subspace preimage(const Matrix& m, const Subspace& s);
Subspace apply(const Matrix& m, const Subspace& s);  // image of s under m

// The subspace S with inner ⊆ S ⊆ outer and dim S = n, grown from inner by
// appending echelon basis vectors of outer with the smallest pivot columns
// not already spanned.  Deterministic.
Subspace extend_to_dim(const Subspace& inner, const Subspace& outer, int n);

// Standard basis vectors extending `inner` to a basis of k^ambient,
// chosen smallest index first.
std::vector<Vec> complement_basis(const Subspace& inner);

}  // namespace zchain

#endif
