#include "scalar.hpp"

#include <sstream>

namespace zchain {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string FieldSpec::str() const {
    switch (kind) {
        case FieldKind::Rational: return "Q";
        case FieldKind::Prime: return "Fp:" + std::to_string(p);
        case FieldKind::RatFunc: return "Qt";
    }
    return "?";
}

FieldSpec field_Q() { return FieldSpec{FieldKind::Rational, 0}; }

FieldSpec field_Fp(int p) {
    // Tiny moduli only: the sole consumers are brute-force oracles.
    if (!is_prime(p) || p > 97)
        throw ConfigError("prime field modulus must be a prime <= 97, got " + std::to_string(p));
    return FieldSpec{FieldKind::Prime, p};
}

FieldSpec field_Qt() { return FieldSpec{FieldKind::RatFunc, 0}; }

FieldSpec parse_field(const std::string& s) {
    if (s == "Q") return field_Q();
    if (s == "Qt") return field_Qt();
    if (s.rfind("Fp:", 0) == 0) {
        try {
            return field_Fp(std::stoi(s.substr(3)));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad field spec: " + s);
        }
    }
    throw ParseError("bad field spec: " + s + " (expected Q, Fp:<p> or Qt)");
}

// ---------------------------------------------------------------- PolyQ

PolyQ::PolyQ(const mpq_class& a) {
    if (a != 0) c.push_back(a);
}

PolyQ PolyQ::t() {
    PolyQ p;
    p.c = {mpq_class(0), mpq_class(1)};
    return p;
}

mpq_class PolyQ::lead() const { return c.empty() ? mpq_class(0) : c.back(); }

mpq_class PolyQ::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c.size())) return mpq_class(0);
    return c[k];
}

void PolyQ::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    PolyQ r;
    r.c.resize(std::max(c.size(), o.c.size()), mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator-() const {
    PolyQ r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
    if (is_zero() || o.is_zero()) return PolyQ();
    PolyQ r;
    r.c.assign(c.size() + o.c.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

mpq_class PolyQ::eval(const mpq_class& x) const {
    mpq_class acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

int PolyQ::ord_at0() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<int>(i);
    return -1;
}

void poly_divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
    if (b.is_zero()) throw ConfigError("polynomial division by zero");
    q = PolyQ();
    r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        mpq_class f = r.lead() / b.lead();
        if (q.c.size() < static_cast<size_t>(k + 1)) q.c.resize(k + 1, mpq_class(0));
        q.c[k] += f;
        for (int i = 0; i <= b.deg(); ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    q.trim();
}

PolyQ poly_gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        PolyQ q, r;
        poly_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        mpq_class l = a.lead();
        for (auto& x : a.c) x /= l;  // monic
    }
    return a;
}

std::string PolyQ::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = deg(); k >= 0; --k) {
        mpq_class a = c[k];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? "+" : "-");
        else if (a < 0) os << "-";
        first = false;
        mpq_class abs_a = abs(a);
        if (k == 0 || abs_a != 1) os << abs_a.get_str();
        if (k > 0) {
            if (abs_a != 1) os << "*";
            os << "t";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

// ------------------------------------------------------------- RatFuncQ

RatFuncQ::RatFuncQ(PolyQ n, PolyQ d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw ConfigError("rational function with zero denominator");
    if (num.is_zero()) {
        den = PolyQ(mpq_class(1));
        return;
    }
    PolyQ g = poly_gcd(num, den);
    if (g.deg() > 0) {
        PolyQ q, r;
        poly_divmod(num, g, q, r);
        num = q;
        poly_divmod(den, g, q, r);
        den = q;
    }
    mpq_class l = den.lead();
    for (auto& x : den.c) x /= l;
    for (auto& x : num.c) x /= l;
}

int RatFuncQ::ord_at0() const {
    if (is_zero()) return 0;
    return num.ord_at0() - den.ord_at0();
}

mpq_class RatFuncQ::eval(const mpq_class& x) const {
    mpq_class d = den.eval(x);
    if (d == 0) throw ContractViolation("rational function has a pole at t = " + x.get_str());
    return num.eval(x) / d;
}

// --------------------------------------------------------------- Scalar

Scalar::Scalar(FieldSpec fs, long n) : fs_(fs) {
    switch (fs.kind) {
        case FieldKind::Rational: v_ = mpq_class(n); break;
        case FieldKind::Prime: {
            int64_t r = n % fs.p;
            if (r < 0) r += fs.p;
            v_ = r;
            break;
        }
        case FieldKind::RatFunc: v_ = RatFuncQ(PolyQ(mpq_class(n)), PolyQ(mpq_class(1))); break;
    }
}

Scalar Scalar::from_rational(const mpq_class& q) { return Scalar(field_Q(), {q}); }

Scalar Scalar::from_ratfunc(RatFuncQ f) { return Scalar(field_Qt(), {std::move(f)}); }

Scalar Scalar::t_var() { return from_ratfunc(RatFuncQ(PolyQ::t(), PolyQ(mpq_class(1)))); }

void Scalar::check_same(const Scalar& o) const {
    if (fs_ != o.fs_)
        throw ConfigError("mixed field specs: " + fs_.str() + " vs " + o.fs_.str());
}

bool Scalar::is_zero() const {
    switch (fs_.kind) {
        case FieldKind::Rational: return std::get<mpq_class>(v_) == 0;
        case FieldKind::Prime: return std::get<int64_t>(v_) == 0;
        case FieldKind::RatFunc: return std::get<RatFuncQ>(v_).is_zero();
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(fs_); }

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    switch (fs_.kind) {
        case FieldKind::Rational:
            return Scalar(fs_, {mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_))});
        case FieldKind::Prime:
            return Scalar(fs_, {(std::get<int64_t>(v_) + std::get<int64_t>(o.v_)) % fs_.p});
        case FieldKind::RatFunc: {
            const RatFuncQ &a = std::get<RatFuncQ>(v_), &b = std::get<RatFuncQ>(o.v_);
            return Scalar(fs_, {RatFuncQ(a.num * b.den + b.num * a.den, a.den * b.den)});
        }
    }
    throw ConfigError("bad field");
}

Scalar Scalar::operator-() const {
    switch (fs_.kind) {
        case FieldKind::Rational: return Scalar(fs_, {mpq_class(-std::get<mpq_class>(v_))});
        case FieldKind::Prime: {
            int64_t r = std::get<int64_t>(v_);
            return Scalar(fs_, {r == 0 ? int64_t(0) : fs_.p - r});
        }
        case FieldKind::RatFunc: {
            const RatFuncQ& a = std::get<RatFuncQ>(v_);
            return Scalar(fs_, {RatFuncQ(-a.num, a.den)});
        }
    }
    throw ConfigError("bad field");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    switch (fs_.kind) {
        case FieldKind::Rational:
            return Scalar(fs_, {mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_))});
        case FieldKind::Prime:
            return Scalar(fs_, {(std::get<int64_t>(v_) * std::get<int64_t>(o.v_)) % fs_.p});
        case FieldKind::RatFunc: {
            const RatFuncQ &a = std::get<RatFuncQ>(v_), &b = std::get<RatFuncQ>(o.v_);
            return Scalar(fs_, {RatFuncQ(a.num * b.num, a.den * b.den)});
        }
    }
    throw ConfigError("bad field");
}

Scalar Scalar::inv() const {
    if (is_zero()) throw ConfigError("division by zero in " + fs_.str());
    switch (fs_.kind) {
        case FieldKind::Rational:
            return Scalar(fs_, {mpq_class(1 / std::get<mpq_class>(v_))});
        case FieldKind::Prime: {
            // extended Euclid
            int64_t a = std::get<int64_t>(v_), m = fs_.p;
            int64_t x0 = 0, x1 = 1, b = m;
            while (a > 1) {
                int64_t q = a / b;
                int64_t t = b;
                b = a - q * b;
                a = t;
                t = x0;
                x0 = x1 - q * x0;
                x1 = t;
            }
            if (x1 < 0) x1 += m;
            return Scalar(fs_, {x1 % m});
        }
        case FieldKind::RatFunc: {
            const RatFuncQ& f = std::get<RatFuncQ>(v_);
            return Scalar(fs_, {RatFuncQ(f.den, f.num)});
        }
    }
    throw ConfigError("bad field");
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    return v_ == o.v_;
}

int Scalar::ord_at0() const {
    if (fs_.kind == FieldKind::RatFunc) return std::get<RatFuncQ>(v_).ord_at0();
    return 0;
}

Scalar Scalar::eval_at0() const { return eval_at(mpq_class(0)); }

Scalar Scalar::eval_at(const mpq_class& x) const {
    switch (fs_.kind) {
        case FieldKind::Rational: return *this;
        case FieldKind::Prime:
            throw ConfigError("cannot evaluate a prime-field scalar at t");
        case FieldKind::RatFunc:
            return from_rational(std::get<RatFuncQ>(v_).eval(x));
    }
    throw ConfigError("bad field");
}

const mpq_class& Scalar::rational() const {
    if (fs_.kind != FieldKind::Rational) throw ConfigError("scalar is not rational");
    return std::get<mpq_class>(v_);
}

int64_t Scalar::residue() const {
    if (fs_.kind != FieldKind::Prime) throw ConfigError("scalar is not a prime-field residue");
    return std::get<int64_t>(v_);
}

const RatFuncQ& Scalar::ratfunc() const {
    if (fs_.kind != FieldKind::RatFunc) throw ConfigError("scalar is not a rational function");
    return std::get<RatFuncQ>(v_);
}

std::string Scalar::str() const {
    switch (fs_.kind) {
        case FieldKind::Rational: return std::get<mpq_class>(v_).get_str();
        case FieldKind::Prime: return std::to_string(std::get<int64_t>(v_));
        case FieldKind::RatFunc: {
            const RatFuncQ& f = std::get<RatFuncQ>(v_);
            if (f.den == PolyQ(mpq_class(1))) return f.num.str();
            return "(" + f.num.str() + ")/(" + f.den.str() + ")";
        }
    }
    return "?";
}

namespace {

// Recursive-descent parser for polynomials in t with rational coefficients,
// e.g. "2*t^3-1/2*t+5".  No parentheses inside a polynomial.
PolyQ parse_poly(const std::string& s) {
    PolyQ out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && s[i] == ' ') ++i; };
    skip_ws();
    if (i >= s.size()) throw ParseError("empty polynomial");
    bool any = false;
    while (i < s.size()) {
        skip_ws();
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        if (i >= s.size()) throw ParseError("dangling sign in polynomial: " + s);
        mpq_class coef(1);
        bool saw_num = false;
        if (isdigit(s[i])) {
            size_t j = i;
            while (j < s.size() && (isdigit(s[j]) || s[j] == '/')) ++j;
            std::string numstr = s.substr(i, j - i);
            if (numstr.back() == '/') throw ParseError("bad coefficient: " + numstr);
            coef = mpq_class(numstr);
            coef.canonicalize();
            i = j;
            saw_num = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') {
            ++i;
            skip_ws();
        }
        int expo = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            expo = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t j = i;
                while (j < s.size() && isdigit(s[j])) ++j;
                if (j == i) throw ParseError("bad exponent in polynomial: " + s);
                expo = std::stoi(s.substr(i, j - i));
                i = j;
            }
        } else if (!saw_num) {
            throw ParseError("bad term in polynomial: " + s);
        }
        if (out.c.size() < static_cast<size_t>(expo + 1)) out.c.resize(expo + 1, mpq_class(0));
        out.c[expo] += sign * coef;
        any = true;
        skip_ws();
    }
    if (!any) throw ParseError("empty polynomial: " + s);
    out.trim();
    return out;
}

}  // namespace

Scalar Scalar::parse(FieldSpec fs, const std::string& s) {
    if (s.empty()) throw ParseError("empty scalar");
    try {
        switch (fs.kind) {
            case FieldKind::Rational: {
                mpq_class q(s);
                q.canonicalize();
                return from_rational(q);
            }
            case FieldKind::Prime: {
                long n = std::stol(s);
                return Scalar(fs, n);
            }
            case FieldKind::RatFunc: {
                if (s[0] == '(') {
                    size_t close = s.find(")/(");
                    if (close == std::string::npos || s.back() != ')')
                        throw ParseError("bad rational function: " + s);
                    PolyQ num = parse_poly(s.substr(1, close - 1));
                    PolyQ den = parse_poly(s.substr(close + 3, s.size() - close - 4));
                    return from_ratfunc(RatFuncQ(num, den));
                }
                return from_ratfunc(RatFuncQ(parse_poly(s), PolyQ(mpq_class(1))));
            }
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad scalar '" + s + "' for field " + fs.str());
    }
    throw ParseError("bad scalar '" + s + "'");
}

Scalar q_to_qt(const Scalar& s) {
    return Scalar::from_ratfunc(RatFuncQ(PolyQ(s.rational()), PolyQ(mpq_class(1))));
}

Scalar q_mod_p(const Scalar& s, const FieldSpec& fp) {
    if (fp.kind != FieldKind::Prime) throw ConfigError("q_mod_p target must be a prime field");
    const mpq_class& q = s.rational();
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class p(fp.p);
    if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
        throw ConfigError("denominator divisible by " + std::to_string(fp.p));
    mpz_class nr = num % p, dr = den % p;
    long n = nr.get_si(), d = dr.get_si();
    if (n < 0) n += fp.p;
    if (d < 0) d += fp.p;
    return Scalar(fp, n) * Scalar(fp, d).inv();
}

}  // namespace zchain
