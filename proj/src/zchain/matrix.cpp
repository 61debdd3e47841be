#include "matrix.hpp"

#include <functional>

namespace zchain {

Matrix::Matrix(int rows, int cols, FieldSpec fs)
    : rows_(rows), cols_(cols), fs_(fs),
      e_(static_cast<size_t>(rows) * cols, Scalar::zero(fs)) {}

Matrix::Matrix(int rows, int cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), fs_(field_Q()), e_(std::move(entries)) {
    if (e_.size() != static_cast<size_t>(rows) * cols)
        throw ConfigError("matrix entry count does not match shape");
    if (!e_.empty()) {
        fs_ = e_[0].field();
        for (const auto& x : e_)
            if (x.field() != fs_) throw ConfigError("mixed field specs in matrix entries");
    }
}

Matrix Matrix::identity(int n, FieldSpec fs) {
    Matrix m(n, n, fs);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(fs);
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols, FieldSpec fs) {
    Matrix m(static_cast<int>(rows.size()), cols, fs);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw ConfigError("row length mismatch");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
}

// diag with ones exactly on indices [ones_lo, ones_hi)
Matrix Matrix::diag_blocks(int n, int ones_lo, int ones_hi, FieldSpec fs) {
    Matrix m(n, n, fs);
    for (int i = ones_lo; i < ones_hi; ++i) m.at(i, i) = Scalar::one(fs);
    return m;
}

Vec Matrix::row(int i) const {
    Vec r(cols_, Scalar::zero(fs_));
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (fs_ != o.fs_) throw ConfigError("mixed field specs in matrix product");
    if (cols_ != o.rows_) throw ConfigError("matrix shape mismatch in product");
    Matrix r(rows_, o.cols_, fs_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ConfigError("matrix shape mismatch in sum");
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] + o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(fs_, -1)); }

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
}

Vec Matrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw ConfigError("vector length mismatch");
    Vec r(rows_, Scalar::zero(fs_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * x[j];
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, fs_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (cols_ != below.cols_) throw ConfigError("column mismatch in vstack");
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (fs_ != below.fs_) throw ConfigError("mixed field specs in vstack");
    Matrix r(rows_ + below.rows_, cols_, fs_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || fs_ != o.fs_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_, fs_);
}

bool Matrix::is_scalar_multiple_of_identity(Scalar* c) const {
    if (rows_ != cols_) return false;
    Scalar v = rows_ > 0 ? at(0, 0) : Scalar::zero(fs_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!(at(i, j) == (i == j ? v : Scalar::zero(fs_)))) return false;
    if (c) *c = v;
    return true;
}

Matrix Matrix::map_entries(const std::function<Scalar(const Scalar&)>& f, FieldSpec out_fs) const {
    Matrix r(rows_, cols_, out_fs);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
    return r;
}

RrefResult rref(const Matrix& m) {
    RrefResult out;
    out.reduced = m;
    Matrix& a = out.reduced;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        // prefer a pivot that is a unit at t = 0
        int piv = -1, piv_any = -1;
        for (int i = r; i < a.rows(); ++i) {
            if (a.at(i, col).is_zero()) continue;
            if (piv_any < 0) piv_any = i;
            if (a.at(i, col).ord_at0() == 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) piv = piv_any;
        if (piv < 0) continue;
        if (a.at(piv, col).ord_at0() != 0) out.pivots_unit_at0 = false;
        if (piv != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
        Scalar inv = a.at(r, col).inv();
        for (int j = col; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(r, j);
        }
        ++r;
    }
    out.rank = r;
    return out;
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw ContractViolation("inverse of a non-square matrix");
    int n = m.rows();
    Matrix aug(n, 2 * n, m.field());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Scalar::one(m.field());
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n) throw ContractViolation("matrix is singular");
    Matrix inv(n, n, m.field());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = rr.reduced.at(i, n + j);
    return inv;
}

bool solve(const Matrix& m, const Vec& b, Vec& x) {
    if (static_cast<int>(b.size()) != m.rows()) throw ConfigError("rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1, m.field());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    x.assign(m.cols(), Scalar::zero(m.field()));
    for (int i = 0; i < rr.rank; ++i) {
        int lead = -1;
        for (int j = 0; j <= m.cols(); ++j)
            if (!rr.reduced.at(i, j).is_zero()) {
                lead = j;
                break;
            }
        if (lead == m.cols()) return false;  // inconsistent
        if (lead >= 0) x[lead] = rr.reduced.at(i, m.cols());
    }
    return true;
}

Vec solve_regular_at0(const Matrix& m, const Vec& b) {
    if (m.field() != field_Qt()) throw ConfigError("solve_regular_at0 requires Q(t) scalars");
    // Gaussian elimination with pivots restricted to units at t = 0.  When
    // the t = 0 specialization of m is surjective, such pivots exist at
    // every step and back-substitution stays regular at 0.
    Matrix aug(m.rows(), m.cols() + 1, m.field());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!aug.at(i, col).is_zero() && aug.at(i, col).ord_at0() == 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j <= m.cols(); ++j) std::swap(aug.at(piv, j), aug.at(r, j));
        Scalar inv = aug.at(r, col).inv();
        for (int j = col; j <= m.cols(); ++j) aug.at(r, j) = aug.at(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || aug.at(i, col).is_zero()) continue;
            Scalar f = aug.at(i, col);
            for (int j = col; j <= m.cols(); ++j)
                aug.at(i, j) = aug.at(i, j) - f * aug.at(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    // remaining rows must be zero = zero
    for (int i = r; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j)
            if (!aug.at(i, j).is_zero())
                throw ContractViolation(
                    "no unit pivot at t = 0: specialized system is not surjective");
        if (!aug.at(i, m.cols()).is_zero())
            throw ContractViolation("inconsistent system in solve_regular_at0");
    }
    Vec x(m.cols(), Scalar::zero(m.field()));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = aug.at(i, m.cols());
    for (const auto& v : x)
        if (!v.is_zero() && v.ord_at0() < 0)
            throw ContractViolation("solution not regular at t = 0");
    return x;
}

Matrix specialize_at0(const Matrix& m) {
    return m.map_entries([](const Scalar& s) { return s.eval_at0(); }, field_Q());
}

Matrix evaluate_at(const Matrix& m, const mpq_class& x) {
    return m.map_entries([&x](const Scalar& s) { return s.eval_at(x); }, field_Q());
}

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ConfigError("vector length mismatch");
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ConfigError("vector length mismatch");
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x = c * x;
    return r;
}

bool wedge_vanishes(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ConfigError("vector length mismatch in wedge");
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    return true;
}

}  // namespace zchain
