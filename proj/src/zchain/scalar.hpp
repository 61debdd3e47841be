#ifndef ZCHAIN_SCALAR_HPP
#define ZCHAIN_SCALAR_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace zchain {

// The three coefficient fields: Q, F_p for a small prime p, and Q(t),
// rational functions in one variable t used as the smoothing parameter.
enum class FieldKind { Rational, Prime, RatFunc };

struct FieldSpec {
    FieldKind kind = FieldKind::Rational;
    int p = 0;  // prime modulus, set only for FieldKind::Prime

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.kind == b.kind && a.p == b.p;
    }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }
    std::string str() const;
};

FieldSpec field_Q();
FieldSpec field_Fp(int p);  // requires p prime, p <= 97
FieldSpec field_Qt();
FieldSpec parse_field(const std::string& s);  // "Q", "Fp:5", "Qt"

// Dense univariate polynomial over Q, coefficients c[0] + c[1] t + ...
// Always trimmed: c.empty() means zero, otherwise c.back() != 0.
struct PolyQ {
    std::vector<mpq_class> c;

    PolyQ() = default;
    explicit PolyQ(const mpq_class& a);
    static PolyQ t();  // the variable

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    mpq_class lead() const;
    mpq_class coeff(int k) const;
    void trim();

    PolyQ operator+(const PolyQ& o) const;
    PolyQ operator-(const PolyQ& o) const;
    PolyQ operator*(const PolyQ& o) const;
    PolyQ operator-() const;
    bool operator==(const PolyQ& o) const { return c == o.c; }

    mpq_class eval(const mpq_class& x) const;
    int ord_at0() const;  // index of lowest nonzero coefficient; -1 for zero

    std::string str() const;
};

// Euclidean division and gcd (gcd returned monic).
void poly_divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r);
PolyQ poly_gcd(PolyQ a, PolyQ b);

// Rational function num/den over Q, normalized: gcd(num,den) = 1 and den monic.
struct RatFuncQ {
    PolyQ num, den;

    RatFuncQ() : num(), den(mpq_class(1)) {}
    RatFuncQ(PolyQ n, PolyQ d);

    bool is_zero() const { return num.is_zero(); }
    bool regular_at0() const { return den.coeff(0) != 0; }
    int ord_at0() const;  // +inf convention not needed: caller checks is_zero first
    mpq_class eval(const mpq_class& x) const;  // throws if den(x) == 0

    bool operator==(const RatFuncQ& o) const { return num == o.num && den == o.den; }
};

// One exact field element.  Arithmetic between scalars of different
// FieldSpecs raises ConfigError.
class Scalar {
  public:
    Scalar() : fs_(field_Q()), v_(mpq_class(0)) {}
    Scalar(FieldSpec fs, long n);                 // embed an integer
    static Scalar zero(FieldSpec fs) { return Scalar(fs, 0); }
    static Scalar one(FieldSpec fs) { return Scalar(fs, 1); }
    static Scalar from_rational(const mpq_class& q);          // field Q
    static Scalar from_ratfunc(RatFuncQ f);                   // field Qt
    static Scalar t_var();                                    // the variable t in Qt

    const FieldSpec& field() const { return fs_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws ConfigError on zero divisor
    Scalar operator-() const;
    Scalar inv() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Q(t) only: order of vanishing at t = 0 (0 for units at 0).
    // Rational/prime scalars report 0 for nonzero values.
    int ord_at0() const;
    // Q(t) -> Q specialization; throws ContractViolation when the
    // denominator vanishes at 0.  Identity on Q.
    Scalar eval_at0() const;
    Scalar eval_at(const mpq_class& x) const;  // Q(t) -> Q at t = x

    const mpq_class& rational() const;  // field Q only
    int64_t residue() const;            // field Fp only
    const RatFuncQ& ratfunc() const;    // field Qt only

    std::string str() const;
    static Scalar parse(FieldSpec fs, const std::string& s);

  private:
    Scalar(FieldSpec fs, std::variant<mpq_class, int64_t, RatFuncQ> v)
        : fs_(fs), v_(std::move(v)) {}
    void check_same(const Scalar& o) const;

    FieldSpec fs_;
    std::variant<mpq_class, int64_t, RatFuncQ> v_;
};

bool is_prime(int n);

// Embed a rational scalar into Q(t) as a constant.
Scalar q_to_qt(const Scalar& s);
// Reduce a rational scalar mod p; throws ConfigError when the denominator
// is divisible by p.
Scalar q_mod_p(const Scalar& s, const FieldSpec& fp);

}  // namespace zchain

#endif
