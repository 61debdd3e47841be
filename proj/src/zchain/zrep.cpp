#include "zrep.hpp"

#include <algorithm>
#include <sstream>

namespace zchain {

std::string tail_str(TailKind t) {
    switch (t) {
        case TailKind::ForwardIso: return "forward_iso";
        case TailKind::BackwardIso: return "backward_iso";
        case TailKind::Truncated: return "truncated";
    }
    return "?";
}

TailKind parse_tail(const std::string& s) {
    if (s == "forward_iso") return TailKind::ForwardIso;
    if (s == "backward_iso") return TailKind::BackwardIso;
    if (s == "truncated") return TailKind::Truncated;
    throw ParseError("bad tail kind: " + s);
}

TypeVector::TypeVector(std::vector<int> entries) : r(std::move(entries)) {
    if (r.empty()) throw ContractViolation("type vector must be nonempty");
    for (int x : r)
        if (x < 0) throw ContractViolation("type vector entries must be nonnegative");
    if (r.front() == 0 || r.back() == 0)
        throw ContractViolation("type vector must have nonzero first and last entries");
}

int TypeVector::total() const {
    int s = 0;
    for (int x : r) s += x;
    return s;
}

int TypeVector::R(int i) const {
    int s = 0;
    for (int k = 0; k <= i && k <= d(); ++k) s += r[k];
    return s;
}

std::string TypeVector::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << ")";
    return os.str();
}

ZRep::ZRep(FieldSpec fs, int lo, std::vector<int> dims, std::vector<Matrix> fwd,
           std::vector<Matrix> bwd, TailKind left, TailKind right)
    : fs_(fs), lo_(lo), dims_(std::move(dims)), fwd_(std::move(fwd)), bwd_(std::move(bwd)),
      left_(left), right_(right) {
    if (dims_.empty()) throw ContractViolation("window must contain at least one vertex");
    size_t arrows = dims_.size() - 1;
    if (fwd_.size() != arrows || bwd_.size() != arrows)
        throw ContractViolation("arrow matrix count does not match window");
    for (size_t k = 0; k < arrows; ++k) {
        if (fwd_[k].rows() != dims_[k + 1] || fwd_[k].cols() != dims_[k])
            throw ContractViolation("forward matrix shape mismatch at arrow " +
                                    std::to_string(lo_ + static_cast<int>(k)));
        if (bwd_[k].rows() != dims_[k] || bwd_[k].cols() != dims_[k + 1])
            throw ContractViolation("backward matrix shape mismatch at arrow " +
                                    std::to_string(lo_ + static_cast<int>(k)));
        if (dims_[k] > 0 && dims_[k + 1] > 0) {
            if (fwd_[k].field() != fs_ || bwd_[k].field() != fs_)
                throw ConfigError("arrow matrix field mismatch");
        }
    }
}

int ZRep::dim_at(int i) const {
    if (i < lo_) return dims_.front();
    if (i > hi()) return dims_.back();
    return dims_[i - lo_];
}

Matrix ZRep::fwd_map(int i) const {
    if (i >= lo_ && i < hi()) return fwd_[i - lo_];
    TailKind t = (i < lo_) ? left_ : right_;
    int n = (i < lo_) ? dims_.front() : dims_.back();
    switch (t) {
        case TailKind::ForwardIso: return Matrix::identity(n, fs_);
        case TailKind::BackwardIso: return Matrix::zero(n, n, fs_);
        case TailKind::Truncated:
            throw ContractViolation("arrow " + std::to_string(i) + " lies beyond a truncated tail");
    }
    throw ContractViolation("bad tail");
}

Matrix ZRep::bwd_map(int i) const {
    if (i >= lo_ && i < hi()) return bwd_[i - lo_];
    TailKind t = (i < lo_) ? left_ : right_;
    int n = (i < lo_) ? dims_.front() : dims_.back();
    switch (t) {
        case TailKind::ForwardIso: return Matrix::zero(n, n, fs_);
        case TailKind::BackwardIso: return Matrix::identity(n, fs_);
        case TailKind::Truncated:
            throw ContractViolation("arrow " + std::to_string(i) + " lies beyond a truncated tail");
    }
    throw ContractViolation("bad tail");
}

bool ZRep::operator==(const ZRep& o) const {
    return fs_ == o.fs_ && lo_ == o.lo_ && dims_ == o.dims_ && left_ == o.left_ &&
           right_ == o.right_ && fwd_ == o.fwd_ && bwd_ == o.bwd_;
}

ZRep make_u_of_r(const TypeVector& tv, FieldSpec fs) {
    int d = tv.d();
    int r = tv.total();
    std::vector<int> dims(d + 1, r);
    std::vector<Matrix> fwd, bwd;
    for (int i = 0; i < d; ++i) {
        fwd.push_back(Matrix::diag_blocks(r, 0, tv.R(i), fs));       // diag(I_{R_i}, 0)
        bwd.push_back(Matrix::diag_blocks(r, tv.R(i), r, fs));       // diag(0, I_{S_i})
    }
    return ZRep(fs, 0, dims, fwd, bwd, TailKind::BackwardIso, TailKind::ForwardIso);
}

namespace {

TailKind flip_kind(TailKind t) {
    switch (t) {
        case TailKind::ForwardIso: return TailKind::BackwardIso;
        case TailKind::BackwardIso: return TailKind::ForwardIso;
        case TailKind::Truncated: return TailKind::Truncated;
    }
    return t;
}

}  // namespace

ZRep dual(const ZRep& v) {
    int n = v.window_len();
    std::vector<Matrix> fwd, bwd;
    for (int k = 0; k + 1 < n; ++k) {
        fwd.push_back(v.bwd_raw()[k].transpose());
        bwd.push_back(v.fwd_raw()[k].transpose());
    }
    return ZRep(v.field(), v.lo(), v.dims(), fwd, bwd, flip_kind(v.left_tail()),
                flip_kind(v.right_tail()));
}

ZRep translate(const ZRep& v, int t) {
    return ZRep(v.field(), v.lo() + t, v.dims(), v.fwd_raw(), v.bwd_raw(), v.left_tail(),
                v.right_tail());
}

ZRep reverse(const ZRep& v) {
    int n = v.window_len();
    std::vector<int> dims(v.dims().rbegin(), v.dims().rend());
    std::vector<Matrix> fwd, bwd;
    for (int k = n - 2; k >= 0; --k) {
        fwd.push_back(v.bwd_raw()[k]);
        bwd.push_back(v.fwd_raw()[k]);
    }
    return ZRep(v.field(), -v.hi(), dims, fwd, bwd, flip_kind(v.right_tail()),
                flip_kind(v.left_tail()));
}

namespace {

bool arrow_known(const ZRep& v, int i) {
    if (i >= v.lo() && i < v.hi()) return true;
    TailKind t = (i < v.lo()) ? v.left_tail() : v.right_tail();
    return t != TailKind::Truncated;
}

bool any_truncated(const ZRep& v) {
    return v.left_tail() == TailKind::Truncated || v.right_tail() == TailKind::Truncated;
}

Tri verdict(bool failed, bool undetermined_seen, const ZRep& v) {
    if (failed) return Tri::False;
    if (undetermined_seen || any_truncated(v)) return Tri::Undetermined;
    return Tri::True;
}

}  // namespace

std::optional<std::string> special_failure(const ZRep& v) {
    for (int i = v.lo(); i < v.hi(); ++i) {
        Matrix f = v.fwd_map(i), b = v.bwd_map(i);
        if (!(b * f).is_zero() || !(f * b).is_zero())
            return "(A) fails at arrow pair " + std::to_string(i);
    }
    return std::nullopt;
}

Tri is_special(const ZRep& v) {
    return verdict(special_failure(v).has_value(), false, v);
}

std::optional<std::string> linked_failure(const ZRep& v, bool& undetermined) {
    undetermined = false;
    for (int i = v.lo(); i <= v.hi(); ++i) {
        bool k1 = arrow_known(v, i - 1), k2 = arrow_known(v, i);
        if (k1 && k2) {
            Subspace a = kernel(v.bwd_map(i - 1));
            Subspace b = kernel(v.fwd_map(i));
            if (intersect(a, b).dim() != 0) return "(B) fails at vertex " + std::to_string(i);
        } else if (k1 || k2) {
            Subspace known = k1 ? kernel(v.bwd_map(i - 1)) : kernel(v.fwd_map(i));
            if (known.dim() != 0) undetermined = true;
        } else if (v.dim_at(i) != 0) {
            undetermined = true;
        }
    }
    return std::nullopt;
}

Tri is_linked(const ZRep& v) {
    bool undet = false;
    auto fail = linked_failure(v, undet);
    if (fail) {
        // (B) presupposes (A); report failure regardless.
        return Tri::False;
    }
    return verdict(special_failure(v).has_value(), undet, v);
}

std::optional<std::string> colinked_failure(const ZRep& v, bool& undetermined) {
    undetermined = false;
    for (int i = v.lo(); i <= v.hi(); ++i) {
        bool k1 = arrow_known(v, i - 1), k2 = arrow_known(v, i);
        int n = v.dim_at(i);
        if (k1 && k2) {
            Subspace im_in_left = image(v.fwd_map(i - 1));
            Subspace im_in_right = image(v.bwd_map(i));
            if (sum(im_in_left, im_in_right).dim() != n)
                return std::string("(B∨) fails at vertex ") + std::to_string(i);
        } else if (k1 || k2) {
            Subspace known = k1 ? image(v.fwd_map(i - 1)) : image(v.bwd_map(i));
            if (known.dim() != n) undetermined = true;
        } else if (n != 0) {
            undetermined = true;
        }
    }
    return std::nullopt;
}

Tri is_colinked(const ZRep& v) {
    bool undet = false;
    auto fail = colinked_failure(v, undet);
    if (fail) return Tri::False;
    return verdict(special_failure(v).has_value(), undet, v);
}

std::optional<std::string> exact_failure(const ZRep& v) {
    for (int i = v.lo(); i < v.hi(); ++i) {
        Matrix f = v.fwd_map(i), b = v.bwd_map(i);
        if (!(kernel(f) == image(b)))
            return "exactness (ker = im) fails at arrow pair " + std::to_string(i);
        if (!(kernel(b) == image(f)))
            return "exactness (ker = im) fails at arrow pair " + std::to_string(i);
    }
    return std::nullopt;
}

Tri is_exact(const ZRep& v) {
    return verdict(exact_failure(v).has_value(), false, v);
}

Tri is_pure(const ZRep& v) {
    for (int d : v.dims())
        if (d != v.dims().front()) return Tri::False;
    return any_truncated(v) ? Tri::Undetermined : Tri::True;
}

Tri is_general(const ZRep& v) {
    for (int i = v.lo(); i < v.hi(); ++i) {
        Matrix f = v.fwd_map(i), b = v.bwd_map(i);
        Scalar c1 = Scalar::zero(v.field()), c2 = Scalar::zero(v.field());
        if (!(b * f).is_scalar_multiple_of_identity(&c1) || c1.is_zero()) return Tri::False;
        if (!(f * b).is_scalar_multiple_of_identity(&c2) || c2.is_zero()) return Tri::False;
    }
    return Tri::True;
}

Matrix composite(const ZRep& v, int i, int j) {
    if (i == j) return Matrix::identity(v.dim_at(i), v.field());
    if (j > i) {
        Matrix m = v.fwd_map(i);
        for (int k = i + 1; k < j; ++k) m = v.fwd_map(k) * m;
        return m;
    }
    Matrix m = v.bwd_map(i - 1);
    for (int k = i - 2; k >= j; --k) m = v.bwd_map(k) * m;
    return m;
}

std::string MaybeInterval::str() const {
    if (!finite) return "infinite";
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

namespace {

MaybeInterval minimal_interval(const ZRep& v, bool support) {
    if (any_truncated(v))
        throw ContractViolation("support/cosupport undetermined for truncated tails");
    bool all_zero = true;
    for (int d : v.dims()) all_zero = all_zero && d == 0;
    if (all_zero) return {true, v.lo(), v.lo()};
    // Finite support needs identity maps pointing outward at both tails;
    // finite cosupport needs them pointing inward.
    TailKind need_left = support ? TailKind::BackwardIso : TailKind::ForwardIso;
    TailKind need_right = support ? TailKind::ForwardIso : TailKind::BackwardIso;
    if (v.left_tail() != need_left || v.right_tail() != need_right) return {false, 0, 0};
    // reaches[j][i]: the composite j -> i is surjective (resp. i -> j
    // injective), computed once for the whole window
    int n = v.window_len();
    std::vector<std::vector<bool>> reaches(n, std::vector<bool>(n, false));
    for (int j = v.lo(); j <= v.hi(); ++j) {
        Matrix m = Matrix::identity(v.dim_at(j), v.field());
        reaches[j - v.lo()][j - v.lo()] = true;
        for (int i = j + 1; i <= v.hi(); ++i) {
            // support: grow composite(j -> i); cosupport: grow composite(i -> j)
            m = support ? v.fwd_map(i - 1) * m : m * v.bwd_map(i - 1);
            reaches[j - v.lo()][i - v.lo()] = rank(m) == v.dim_at(i);
        }
        m = Matrix::identity(v.dim_at(j), v.field());
        for (int i = j - 1; i >= v.lo(); --i) {
            m = support ? v.bwd_map(i) * m : m * v.fwd_map(i);
            reaches[j - v.lo()][i - v.lo()] = rank(m) == v.dim_at(i);
        }
    }
    auto works = [&](int a, int b) {
        for (int i = 0; i < n; ++i) {
            bool ok = false;
            for (int j = a - v.lo(); j <= b - v.lo() && !ok; ++j) ok = reaches[j][i];
            if (!ok) return false;
        }
        return true;
    };
    for (int len = 0; len < n; ++len)
        for (int a = v.lo(); a + len <= v.hi(); ++a)
            if (works(a, a + len)) return {true, a, a + len};
    return {true, v.lo(), v.hi()};  // the full window always works
}

}  // namespace

MaybeInterval support_interval(const ZRep& v) { return minimal_interval(v, true); }

MaybeInterval cosupport_interval(const ZRep& v) { return minimal_interval(v, false); }

namespace {

// Shared precondition check for classify/simple_basis; returns the minimal
// support interval of the (possibly dualized) exact linked chain.
ZRep as_exact_linked(const ZRep& v, MaybeInterval& supp) {
    Tri linked = is_linked(v);
    if (linked != Tri::True && is_colinked(v) == Tri::True) {
        ZRep u = dual(v);
        return as_exact_linked(u, supp);
    }
    if (auto f = exact_failure(v)) throw ContractViolation("classification error: " + *f);
    if (auto f = special_failure(v)) throw ContractViolation("classification error: " + *f);
    bool undet = false;
    if (auto f = linked_failure(v, undet)) throw ContractViolation("classification error: " + *f);
    if (any_truncated(v))
        throw ContractViolation("classification error: truncated tails");
    supp = support_interval(v);
    if (!supp.finite)
        throw ContractViolation("classification error: representation has no finite support");
    return v;
}

}  // namespace

TypeVector classify(const ZRep& v_in) {
    MaybeInterval supp;
    ZRep v = as_exact_linked(v_in, supp);
    int r = v.dim_at(supp.lo);
    int d = supp.hi - supp.lo;
    std::vector<int> entries(d + 1);
    for (int i = 0; i <= d; ++i) {
        int vert = supp.lo + i;
        entries[i] = r - rank(v.fwd_map(vert - 1)) - rank(v.bwd_map(vert));
        if (entries[i] < 0)
            throw ContractViolation("classification error: negative multiplicity at vertex " +
                                    std::to_string(vert));
    }
    TypeVector tv(entries);
    if (tv.total() != r)
        throw ContractViolation("classification error: multiplicities do not sum to the dimension");
    return tv;
}

SimpleBasis simple_basis(const ZRep& v_in) {
    MaybeInterval supp;
    ZRep v = as_exact_linked(v_in, supp);
    int r = v.dim_at(supp.lo);
    int d = supp.hi - supp.lo;

    SimpleBasis sb;
    sb.support_lo = supp.lo;
    sb.blocks.resize(d + 1);
    std::vector<int> entries(d + 1);
    for (int i = 0; i <= d; ++i) {
        int vert = supp.lo + i;
        Subspace incoming = sum(image(v.fwd_map(vert - 1)), image(v.bwd_map(vert)));
        sb.blocks[i] = complement_basis(incoming);
        entries[i] = static_cast<int>(sb.blocks[i].size());
    }
    sb.type = TypeVector(entries);
    if (sb.type.total() != r)
        throw ContractViolation("simple-basis failure: block sizes do not sum to the dimension");

    // Push every block through the composites and check the result is a
    // basis at each window vertex; a failure here is reported, never
    // silently corrected.
    for (int w = v.lo(); w <= v.hi(); ++w) {
        std::vector<Vec> family;
        for (int j = 0; j <= d; ++j) {
            Matrix m = composite(v, supp.lo + j, w);
            for (const Vec& b : sb.blocks[j]) family.push_back(m.apply(b));
        }
        Matrix fam = Matrix::from_rows(family, v.dim_at(w), v.field());
        if (rank(fam) != r)
            throw ContractViolation("simple-basis failure: transported family is not a basis at vertex " +
                                    std::to_string(w));
        // g_w sends the family to the ordered canonical basis: g_w = F^{-1}
        // with F the matrix whose columns are the family vectors.
        sb.iso.push_back(inverse(fam.transpose()));
    }
    return sb;
}

void validate_line(const ZRep& v, const SubrepLine& w) {
    if (w.lo != v.lo() || w.hi() != v.hi())
        throw ContractViolation("subrepresentation line window does not match the representation");
    for (int i = v.lo(); i <= v.hi(); ++i) {
        if (static_cast<int>(w.at(i).size()) != v.dim_at(i))
            throw ContractViolation("generator length mismatch at vertex " + std::to_string(i));
        if (vec_is_zero(w.at(i)))
            throw ContractViolation("zero generator at vertex " + std::to_string(i));
    }
    for (int i = v.lo(); i < v.hi(); ++i) {
        if (!wedge_vanishes(v.fwd_map(i).apply(w.at(i)), w.at(i + 1)))
            throw ContractViolation("forward wedge condition fails at arrow " + std::to_string(i));
        if (!wedge_vanishes(v.bwd_map(i).apply(w.at(i + 1)), w.at(i)))
            throw ContractViolation("backward wedge condition fails at arrow " + std::to_string(i));
    }
}

namespace {

// The scalar c with m x_src = c x_dst, given that the wedge vanishes.
Scalar induced_scalar(const Matrix& m, const Vec& src, const Vec& dst) {
    Vec y = m.apply(src);
    if (vec_is_zero(y)) return Scalar::zero(m.field());
    for (size_t k = 0; k < dst.size(); ++k)
        if (!dst[k].is_zero()) return y[k] / dst[k];
    throw ContractViolation("zero target generator");
}

}  // namespace

ZRep line_as_rep(const ZRep& v, const SubrepLine& w) {
    validate_line(v, w);
    std::vector<int> dims(v.window_len(), 1);
    std::vector<Matrix> fwd, bwd;
    for (int i = v.lo(); i < v.hi(); ++i) {
        fwd.push_back(Matrix::from_rows({{induced_scalar(v.fwd_map(i), w.at(i), w.at(i + 1))}}, 1,
                                        v.field()));
        bwd.push_back(Matrix::from_rows({{induced_scalar(v.bwd_map(i), w.at(i + 1), w.at(i))}}, 1,
                                        v.field()));
    }
    return ZRep(v.field(), v.lo(), dims, fwd, bwd, v.left_tail(), v.right_tail());
}

namespace {

ZRep map_rep(const ZRep& v, FieldSpec out, const std::function<Scalar(const Scalar&)>& f) {
    std::vector<Matrix> fwd, bwd;
    for (const auto& m : v.fwd_raw()) fwd.push_back(m.map_entries(f, out));
    for (const auto& m : v.bwd_raw()) bwd.push_back(m.map_entries(f, out));
    return ZRep(out, v.lo(), v.dims(), fwd, bwd, v.left_tail(), v.right_tail());
}

}  // namespace

ZRep reduce_mod_p(const ZRep& v, int p) {
    FieldSpec fp = field_Fp(p);
    return map_rep(v, fp, [&fp](const Scalar& s) { return q_mod_p(s, fp); });
}

ZRep rep_q_to_qt(const ZRep& v) {
    return map_rep(v, field_Qt(), [](const Scalar& s) { return q_to_qt(s); });
}

SubrepLine line_q_to_qt(const SubrepLine& w) {
    SubrepLine out;
    out.lo = w.lo;
    for (const Vec& v : w.x) {
        Vec o;
        for (const Scalar& s : v) o.push_back(q_to_qt(s));
        out.x.push_back(o);
    }
    return out;
}

SubrepLine line_reduce_mod_p(const SubrepLine& w, int p) {
    FieldSpec fp = field_Fp(p);
    SubrepLine out;
    out.lo = w.lo;
    for (const Vec& v : w.x) {
        Vec o;
        for (const Scalar& s : v) o.push_back(q_mod_p(s, fp));
        out.x.push_back(o);
    }
    return out;
}

}  // namespace zchain
