#include "subspace.hpp"

namespace zchain {

namespace {

// Drop zero rows of an rref matrix.
Matrix nonzero_rows(const Matrix& m, int rank) {
    Matrix out(rank, m.cols(), m.field());
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
    return out;
}

}  // namespace

Subspace::Subspace(int ambient, const Matrix& span) : ambient_(ambient), basis_(span) {
    if (span.cols() != ambient) throw ConfigError("span width does not match ambient dimension");
    RrefResult rr = rref(span);
    basis_ = nonzero_rows(rr.reduced, rr.rank);
}

Subspace Subspace::zero_subspace(int ambient, FieldSpec fs) {
    return Subspace(ambient, Matrix(0, ambient, fs));
}

Subspace Subspace::full(int ambient, FieldSpec fs) {
    return Subspace(ambient, Matrix::identity(ambient, fs));
}

Subspace Subspace::span_of(const std::vector<Vec>& vecs, int ambient, FieldSpec fs) {
    return Subspace(ambient, Matrix::from_rows(vecs, ambient, fs));
}

bool Subspace::contains(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambient_) throw ConfigError("ambient mismatch");
    Vec w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
        int piv = -1;
        for (int j = 0; j < ambient_; ++j)
            if (!basis_.at(i, j).is_zero()) {
                piv = j;
                break;
            }
        if (piv < 0) continue;
        if (w[piv].is_zero()) continue;
        Scalar f = w[piv];
        for (int j = 0; j < ambient_; ++j) w[j] = w[j] - f * basis_.at(i, j);
    }
    return vec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw ConfigError("ambient mismatch");
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_row(i))) return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    Vec coords(dim(), Scalar::zero(field()));
    Vec w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
        int piv = -1;
        for (int j = 0; j < ambient_; ++j)
            if (!basis_.at(i, j).is_zero()) {
                piv = j;
                break;
            }
        if (piv < 0) continue;
        coords[i] = w[piv];
        if (!coords[i].is_zero())
            for (int j = 0; j < ambient_; ++j) w[j] = w[j] - coords[i] * basis_.at(i, j);
    }
    if (!vec_is_zero(w)) throw ContractViolation("vector is not in the subspace");
    return coords;
}

Subspace kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    const Matrix& a = rr.reduced;
    std::vector<int> pivot_of_col(m.cols(), -1);
    for (int r = 0; r < rr.rank; ++r)
        for (int j = 0; j < m.cols(); ++j)
            if (!a.at(r, j).is_zero()) {
                pivot_of_col[j] = r;
                break;
            }
    std::vector<Vec> gens;
    for (int j = 0; j < m.cols(); ++j) {
        if (pivot_of_col[j] >= 0) continue;
        Vec v(m.cols(), Scalar::zero(m.field()));
        v[j] = Scalar::one(m.field());
        for (int jj = 0; jj < m.cols(); ++jj)
            if (pivot_of_col[jj] >= 0) v[jj] = -a.at(pivot_of_col[jj], j);
        gens.push_back(v);
    }
    return Subspace::span_of(gens, m.cols(), m.field());
}

Subspace image(const Matrix& m) { return Subspace(m.rows(), m.transpose()); }

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw ContractViolation("ambient dimension mismatch in subspace sum");
    return Subspace(a.ambient_dim(), a.basis().vstack(b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw ContractViolation("ambient dimension mismatch in subspace intersection");
    // a ∩ b is the annihilator of (a° + b°).
    Subspace ann_a = kernel(a.basis());
    Subspace ann_b = kernel(b.basis());
    Matrix stacked = ann_a.basis().vstack(ann_b.basis());
    if (stacked.rows() == 0) return Subspace::full(a.ambient_dim(), a.field());
    return kernel(stacked);
}

Subspace preimage(const Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.rows())
        throw ContractViolation("subspace ambient does not match map codomain");
    Subspace ann = kernel(s.basis());  // functionals vanishing on s
    if (ann.dim() == 0) return Subspace::full(m.cols(), m.field());
    return kernel(ann.basis() * m);
}

Subspace apply(const Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.cols())
        throw ContractViolation("subspace ambient does not match map domain");
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) rows.push_back(m.apply(s.basis_row(i)));
    return Subspace::span_of(rows, m.rows(), m.field());
}

Subspace extend_to_dim(const Subspace& inner, const Subspace& outer, int n) {
    if (!outer.contains(inner))
        throw ContractViolation("extend_to_dim: inner is not contained in outer");
    if (n < inner.dim() || n > outer.dim())
        throw ContractViolation("extend_to_dim: target dimension out of range");
    Matrix acc = inner.basis();
    int have = inner.dim();
    for (int i = 0; i < outer.dim() && have < n; ++i) {
        Matrix cand = acc.vstack(Matrix::from_rows({outer.basis_row(i)}, outer.ambient_dim(),
                                                   outer.field()));
        if (rank(cand) > have) {
            acc = cand;
            ++have;
        }
    }
    return Subspace(outer.ambient_dim(), acc);
}

std::vector<Vec> complement_basis(const Subspace& inner) {
    std::vector<Vec> picked;
    Matrix acc = inner.basis();
    int have = inner.dim();
    for (int j = 0; j < inner.ambient_dim() && have < inner.ambient_dim(); ++j) {
        Vec e(inner.ambient_dim(), Scalar::zero(inner.field()));
        e[j] = Scalar::one(inner.field());
        Matrix cand = acc.vstack(Matrix::from_rows({e}, inner.ambient_dim(), inner.field()));
        if (rank(cand) > have) {
            acc = cand;
            ++have;
            picked.push_back(e);
        }
    }
    return picked;
}

}  // namespace zchain
