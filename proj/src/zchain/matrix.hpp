#ifndef ZCHAIN_MATRIX_HPP
#define ZCHAIN_MATRIX_HPP

#include <functional>
#include <vector>

#include "scalar.hpp"

namespace zchain {

using Vec = std::vector<Scalar>;

// Dense matrix over one FieldSpec, row-major.  Shapes with zero rows or
// columns are legal and show up at zero-dimensional vertices.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0), fs_(field_Q()) {}
    Matrix(int rows, int cols, FieldSpec fs);
    Matrix(int rows, int cols, std::vector<Scalar> entries);  // checks field agreement

    static Matrix identity(int n, FieldSpec fs);
    static Matrix zero(int rows, int cols, FieldSpec fs) { return Matrix(rows, cols, fs); }
    static Matrix from_rows(const std::vector<Vec>& rows, int cols, FieldSpec fs);
    static Matrix diag_blocks(int n, int ones_lo, int ones_hi, FieldSpec fs);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return fs_; }

    Scalar& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    Vec row(int i) const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Vec apply(const Vec& x) const;  // this * column vector
    Matrix transpose() const;
    Matrix vstack(const Matrix& below) const;
    bool operator==(const Matrix& o) const;
    bool is_zero() const;
    bool is_identity() const;
    // True when the matrix is c * I; writes c if requested.
    bool is_scalar_multiple_of_identity(Scalar* c = nullptr) const;

    Matrix map_entries(const std::function<Scalar(const Scalar&)>& f, FieldSpec out_fs) const;

  private:
    int rows_, cols_;
    FieldSpec fs_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    int rank = 0;
    Matrix reduced;
    // Meaningful over Q(t): true when every pivot used during elimination
    // is a unit at t = 0, in which case specializing at t = 0 commutes
    // with row reduction.  Always true over Q and F_p.
    bool pivots_unit_at0 = true;
};

// Unique reduced row-echelon form.  Pivot rows are chosen preferring
// entries that do not vanish at t = 0 so the commutation flag is as
// strong as the matrix allows; the reduced form itself does not depend
// on that choice.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

// Inverse of a square matrix; throws ContractViolation when singular.
Matrix inverse(const Matrix& m);

// One solution x of m x = b, if any.
bool solve(const Matrix& m, const Vec& b, Vec& x);

// Over Q(t): one solution with all entries regular at t = 0.  Requires
// the specialized system at t = 0 to be solvable with the same rank
// (true when the specialized matrix is surjective); throws
// ContractViolation otherwise.
Vec solve_regular_at0(const Matrix& m, const Vec& b);

// Entrywise t = 0 specialization of a Q(t) matrix into Q.
Matrix specialize_at0(const Matrix& m);
Matrix evaluate_at(const Matrix& m, const mpq_class& x);

bool vec_is_zero(const Vec& v);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);
// a ∧ b = 0, i.e. the two vectors are linearly dependent.
bool wedge_vanishes(const Vec& a, const Vec& b);

}  // namespace zchain

#endif
