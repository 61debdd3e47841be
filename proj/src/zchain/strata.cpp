#include "strata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zchain {

int ArrowProfile::up_at(int i) const {
    if (i >= lo && i < hi) return up[i - lo];
    TailKind t = (i < lo) ? left : right;
    return t == TailKind::ForwardIso ? 1 : 0;
}

int ArrowProfile::dn_at(int i) const {
    if (i >= lo && i < hi) return dn[i - lo];
    TailKind t = (i < lo) ? left : right;
    return t == TailKind::BackwardIso ? 1 : 0;
}

bool ArrowProfile::is_special_compatible() const {
    for (int k = 0; k < arrows(); ++k)
        if (up[k] && dn[k]) return false;
    return true;
}

bool ArrowProfile::is_exact() const {
    for (int k = 0; k < arrows(); ++k)
        if (up[k] + dn[k] != 1) return false;
    return true;
}

std::vector<int> ArrowProfile::sinks() const {
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i)
        if (up_at(i - 1) && dn_at(i)) out.push_back(i);
    return out;
}

std::vector<int> ArrowProfile::sources() const {
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i)
        if (up_at(i) && dn_at(i - 1)) out.push_back(i);
    return out;
}

bool ArrowProfile::operator<(const ArrowProfile& o) const {
    if (lo != o.lo) return lo < o.lo;
    if (hi != o.hi) return hi < o.hi;
    if (up != o.up) return up < o.up;
    return dn < o.dn;
}

std::string ArrowProfile::str() const {
    if (arrows() == 0) return "-";
    std::ostringstream os;
    for (int k = 0; k < arrows(); ++k) {
        if (k) os << ".";
        os << int(up[k]) << int(dn[k]);
    }
    return os.str();
}

ArrowProfile profile_of(const SubrepLine& w, const ZRep& v) {
    validate_line(v, w);
    ArrowProfile p;
    p.lo = v.lo();
    p.hi = v.hi();
    p.left = v.left_tail();
    p.right = v.right_tail();
    for (int i = v.lo(); i < v.hi(); ++i) {
        p.up.push_back(vec_is_zero(v.fwd_map(i).apply(w.at(i))) ? 0 : 1);
        p.dn.push_back(vec_is_zero(v.bwd_map(i).apply(w.at(i + 1))) ? 0 : 1);
    }
    return p;
}

std::vector<ArrowProfile> enumerate_exact_profiles(int d) {
    if (d < 0) throw ContractViolation("window length must be nonnegative");
    std::vector<ArrowProfile> out;
    for (long long mask = 0; mask < (1LL << d); ++mask) {
        ArrowProfile p;
        p.lo = 0;
        p.hi = d;
        p.left = TailKind::ForwardIso;
        p.right = TailKind::BackwardIso;
        for (int k = 0; k < d; ++k) {
            int bit = (mask >> (d - 1 - k)) & 1;  // arrow k: (1,0) when bit set
            p.up.push_back(static_cast<uint8_t>(bit));
            p.dn.push_back(static_cast<uint8_t>(1 - bit));
        }
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool stratum_nonempty(const ArrowProfile& p, const TypeVector& r) {
    if (p.hi - p.lo != r.d())
        throw ContractViolation("profile window does not match the type vector length");
    if (!p.is_exact()) throw ContractViolation("stratum_nonempty expects an exact profile");
    for (int t : p.sinks())
        if (r.at(t - p.lo) == 0) return false;
    return true;
}

bool closure_leq(const ArrowProfile& b, const ArrowProfile& a) {
    if (b.lo != a.lo || b.hi != a.hi) throw ContractViolation("profile window mismatch");
    for (int k = 0; k < b.arrows(); ++k)
        if (b.up[k] > a.up[k] || b.dn[k] > a.dn[k]) return false;
    return true;
}

ArrowProfile meet(const ArrowProfile& a, const ArrowProfile& b) {
    if (b.lo != a.lo || b.hi != a.hi) throw ContractViolation("profile window mismatch");
    ArrowProfile m = a;
    for (int k = 0; k < a.arrows(); ++k) {
        m.up[k] = std::min(a.up[k], b.up[k]);
        m.dn[k] = std::min(a.dn[k], b.dn[k]);
    }
    return m;
}

StratumCell cell_structure(const ArrowProfile& p, const TypeVector& r) {
    if (!stratum_nonempty(p, r)) throw ContractViolation("empty stratum has no cell");
    StratumCell cell;
    cell.sinks = p.sinks();
    cell.sources = p.sources();
    int d = r.d();
    // interleaving t_0 < s_0 < ... < s_{l-1} < t_l demanded by the profile shape
    if (cell.sources.size() + 1 != cell.sinks.size())
        throw ContractViolation("profile sinks and sources do not interleave");
    for (size_t k = 0; k < cell.sources.size(); ++k)
        if (!(cell.sinks[k] < cell.sources[k] && cell.sources[k] < cell.sinks[k + 1]))
            throw ContractViolation("profile sinks and sources do not interleave");
    for (int t : cell.sinks) cell.proj_dims.push_back(r.at(t - p.lo) - 1);
    int l = static_cast<int>(cell.sources.size());
    cell.torus = l;
    cell.affine_exps.push_back(r.R(cell.sinks.front() - p.lo - 1));
    for (int k = 0; k + 1 <= l; ++k)
        cell.affine_exps.push_back(r.R(cell.sinks[k + 1] - p.lo - 1) - r.R(cell.sinks[k] - p.lo));
    cell.affine_exps.push_back(r.R(d) - r.R(cell.sinks.back() - p.lo));
    return cell;
}

int CountPolynomial::deg() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (c[k] != 0) return k;
    return -1;
}

long long CountPolynomial::eval(long long q) const {
    long long acc = 0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * q + c[k];
    return acc;
}

CountPolynomial CountPolynomial::operator*(const CountPolynomial& o) const {
    if (c.empty() || o.c.empty()) return {};
    CountPolynomial r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
}

CountPolynomial CountPolynomial::operator+(const CountPolynomial& o) const {
    CountPolynomial r;
    r.c.assign(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

std::string CountPolynomial::str() const {
    if (deg() < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = deg(); k >= 0; --k) {
        if (c[k] == 0) continue;
        if (!first) os << (c[k] > 0 ? "+" : "-");
        else if (c[k] < 0) os << "-";
        first = false;
        long long a = std::abs(c[k]);
        if (k == 0 || a != 1) os << a;
        if (k > 0) {
            os << "q";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

CountPolynomial count_poly(const StratumCell& cell) {
    CountPolynomial acc;
    acc.c = {1};
    for (int m : cell.proj_dims) {
        CountPolynomial f;
        f.c.assign(m + 1, 1);  // 1 + q + ... + q^m
        acc = acc * f;
    }
    int affine = std::accumulate(cell.affine_exps.begin(), cell.affine_exps.end(), 0);
    CountPolynomial shift;
    shift.c.assign(affine + 1, 0);
    shift.c[affine] = 1;
    acc = acc * shift;
    for (int k = 0; k < cell.torus; ++k) {
        CountPolynomial t;
        t.c = {-1, 1};  // q - 1
        acc = acc * t;
    }
    return acc;
}

std::vector<ArrowProfile> components(const ZRep& v_in) {
    if (auto f = exact_failure(v_in)) throw ContractViolation("components: " + *f);
    if (auto f = special_failure(v_in)) throw ContractViolation("components: " + *f);
    ZRep v = v_in;
    bool undet = false;
    if (auto colinked_fail = colinked_failure(v, undet)) {
        // exact linked input is handled through its dual
        bool undet_l = false;
        if (linked_failure(v_in, undet_l))
            throw ContractViolation("components: " + *colinked_fail);
        v = dual(v_in);
        bool undet_d = false;
        if (auto f = colinked_failure(v, undet_d))
            throw ContractViolation("components: " + *f);
    }
    MaybeInterval cos = cosupport_interval(v);
    if (!cos.finite) throw ContractViolation("components: no finite cosupport");
    int d = cos.hi - cos.lo;
    std::vector<int> entries(d + 1);
    for (int i = 0; i <= d; ++i) {
        int vert = cos.lo + i;
        entries[i] =
            intersect(image(v.fwd_map(vert - 1)), image(v.bwd_map(vert))).dim();
    }
    TypeVector r(entries);
    std::vector<ArrowProfile> out;
    for (const ArrowProfile& p : enumerate_exact_profiles(d)) {
        if (!stratum_nonempty(p, r)) continue;
        ArrowProfile q = p;
        q.lo += cos.lo;
        q.hi += cos.lo;
        out.push_back(q);
    }
    return out;
}

namespace {

// All projective representatives in F_q^n, first nonzero coordinate 1,
// ordered lexicographically by residue tuple.
std::vector<Vec> projective_points(int n, const FieldSpec& fq) {
    std::vector<Vec> out;
    for (int lead = 0; lead < n; ++lead) {
        int free = n - lead - 1;
        long long total = 1;
        for (int k = 0; k < free; ++k) total *= fq.p;
        for (long long code = 0; code < total; ++code) {
            Vec v(n, Scalar::zero(fq));
            v[lead] = Scalar::one(fq);
            long long c = code;
            for (int k = free - 1; k >= 0; --k) {
                v[lead + 1 + k] = Scalar(fq, c % fq.p);
                c /= fq.p;
            }
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].residue() != b[i].residue()) return a[i].residue() < b[i].residue();
        }
        return false;
    });
    return out;
}

std::vector<int64_t> point_key(const SubrepLine& line) {
    std::vector<int64_t> key;
    for (const Vec& v : line.x)
        for (const Scalar& s : v) key.push_back(s.residue());
    return key;
}

void enumerate_from(const ZRep& v, const std::vector<std::vector<Vec>>& cands, size_t depth,
                    SubrepLine& partial, std::vector<SubrepLine>& out) {
    if (depth == cands.size()) {
        out.push_back(partial);
        return;
    }
    int arrow = v.lo() + static_cast<int>(depth) - 1;
    Matrix f = v.fwd_map(arrow), b = v.bwd_map(arrow);
    for (const Vec& x : cands[depth]) {
        if (!wedge_vanishes(f.apply(partial.x[depth - 1]), x)) continue;
        if (!wedge_vanishes(b.apply(x), partial.x[depth - 1])) continue;
        partial.x.push_back(x);
        enumerate_from(v, cands, depth + 1, partial, out);
        partial.x.pop_back();
    }
}

void all_pairs_check(const ZRep& v, const SubrepLine& line) {
    for (int i = v.lo(); i <= v.hi(); ++i)
        for (int j = v.lo(); j <= v.hi(); ++j) {
            if (i == j) continue;
            if (!wedge_vanishes(composite(v, i, j).apply(line.at(i)), line.at(j)))
                throw std::logic_error(
                    "oracle safety assertion failed: adjacent wedge conditions did not imply "
                    "the all-pairs conditions");
        }
}

std::vector<OraclePoint> oracle_run(const ZRep& v_in, int q, bool parallel) {
    if (q > 7) throw ContractViolation("oracle field sizes are restricted to primes up to 7");
    FieldSpec fq = field_Fp(q);
    ZRep v = v_in.field() == fq ? v_in
             : v_in.field() == field_Q()
                 ? reduce_mod_p(v_in, q)
                 : throw ContractViolation("oracle requires a representation over Q or F_q");
    double space = 1;
    for (int i = v.lo(); i <= v.hi(); ++i) {
        double n = 0, acc = 1;
        for (int k = 0; k < v.dim_at(i); ++k) {
            n += acc;
            acc *= q;
        }
        space *= n;
        if (space > 1e6)
            throw SizeBoundExceeded("oracle search space exceeds 10^6 tuples");
        if (n == 0) return {};  // a zero-dimensional vertex admits no line
    }
    std::vector<std::vector<Vec>> cands;
    for (int i = v.lo(); i <= v.hi(); ++i) cands.push_back(projective_points(v.dim_at(i), fq));

    std::vector<SubrepLine> lines;
    int first = static_cast<int>(cands[0].size());
#ifdef _OPENMP
    if (parallel) {
        std::vector<std::vector<SubrepLine>> buckets(first);
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < first; ++k) {
            SubrepLine partial;
            partial.lo = v.lo();
            partial.x.push_back(cands[0][k]);
            enumerate_from(v, cands, 1, partial, buckets[k]);
        }
        for (auto& b : buckets)
            lines.insert(lines.end(), b.begin(), b.end());
    } else
#endif
    {
        (void)parallel;
        for (int k = 0; k < first; ++k) {
            SubrepLine partial;
            partial.lo = v.lo();
            partial.x.push_back(cands[0][k]);
            enumerate_from(v, cands, 1, partial, lines);
        }
    }
    std::sort(lines.begin(), lines.end(), [](const SubrepLine& a, const SubrepLine& b) {
        return point_key(a) < point_key(b);
    });
    std::vector<OraclePoint> out;
    for (const SubrepLine& line : lines) {
        all_pairs_check(v, line);
        out.push_back({line, profile_of(line, v)});
    }
    return out;
}

}  // namespace

std::vector<OraclePoint> oracle_points(const ZRep& v, int q, bool parallel) {
    return oracle_run(v, q, parallel);
}

std::vector<OraclePoint> oracle_points_serial(const ZRep& v, int q) {
    return oracle_run(v, q, false);
}

namespace {

SubrepLine reverse_line(const SubrepLine& w) {
    SubrepLine out;
    out.lo = -w.hi();
    out.x.assign(w.x.rbegin(), w.x.rend());
    return out;
}

Vec vec_q_to_qt(const Vec& v) {
    Vec out;
    for (const Scalar& s : v) out.push_back(q_to_qt(s));
    return out;
}

DeformationFamily witness_forward(const ZRep& v, const SubrepLine& w, int arrow) {
    ArrowProfile p = profile_of(w, v);
    if (arrow < v.lo() || arrow >= v.hi())
        throw ContractViolation("arrow index outside the window");
    if (p.up[arrow - v.lo()]) {
        DeformationFamily out;
        out.family = line_q_to_qt(w);
        out.generic_profile = p;
        out.trivial = true;
        return out;
    }
    if (p.dn[arrow - v.lo()])
        throw ContractViolation("arrow pair is not raisable: the opposite bit is set");

    int i = arrow;
    // j: start of the maximal run of nonzero forward maps ending at arrow i-1
    int j = v.lo();
    for (int l = i - 1; l >= v.lo(); --l)
        if (!p.up[l - v.lo()]) {
            j = l + 1;
            break;
        }
    std::vector<Vec> x;  // window copies, rescaled on [j, i]
    for (const Vec& g : w.x) x.push_back(g);
    for (int l = j + 1; l <= i; ++l)
        x[l - v.lo()] = composite(v, j, l).apply(x[j - v.lo()]);
    // z with composite(j-1 -> i+1)(z) = x_{i+1}; exists because the chain is
    // exact and colinked
    Vec z;
    if (!solve(composite(v, j - 1, i + 1), x[i + 1 - v.lo()], z))
        throw ContractViolation(
            "deformation witness: no lift of the target generator; the representation is "
            "not an exact colinked chain");
    SubrepLine fam;
    fam.lo = v.lo();
    Scalar t = Scalar::t_var();
    for (int l = v.lo(); l <= v.hi(); ++l) {
        Vec xt = vec_q_to_qt(x[l - v.lo()]);
        if (l >= j && l <= i) {
            Vec y = vec_q_to_qt(composite(v, j - 1, l).apply(z));
            xt = vec_add(xt, vec_scale(t, y));
        }
        fam.x.push_back(xt);
    }
    ZRep vqt = rep_q_to_qt(v);
    validate_line(vqt, fam);
    ArrowProfile gp = profile_of(fam, vqt);
    ArrowProfile expected = p;
    expected.up[arrow - v.lo()] = 1;
    if (!(gp == expected))
        throw std::logic_error("deformation witness produced profile " + gp.str() +
                               ", expected " + expected.str());
    // the t -> 0 limit recovers w
    for (int l = v.lo(); l <= v.hi(); ++l) {
        Vec spec;
        for (const Scalar& s : fam.at(l)) spec.push_back(s.eval_at0());
        if (vec_is_zero(spec) || !wedge_vanishes(spec, w.at(l)))
            throw std::logic_error("deformation witness does not specialize to the input point");
    }
    DeformationFamily out;
    out.family = fam;
    out.generic_profile = gp;
    return out;
}

}  // namespace

DeformationFamily deformation_witness(const ZRep& v, const SubrepLine& w, int arrow,
                                      ArrowDir dir) {
    if (auto f = exact_failure(v)) throw ContractViolation("deformation witness: " + *f);
    bool undet = false;
    if (auto f = colinked_failure(v, undet))
        throw ContractViolation("deformation witness: " + *f);
    validate_line(v, w);
    if (dir == ArrowDir::Forward) return witness_forward(v, w, arrow);
    // mirror: a_i on v corresponds to a^(-i-1) on the reversed representation
    ZRep rv = reverse(v);
    SubrepLine rw = reverse_line(w);
    DeformationFamily rout = witness_forward(rv, rw, -arrow - 1);
    DeformationFamily out;
    out.trivial = rout.trivial;
    out.family = reverse_line(rout.family);
    out.family.lo = v.lo();
    ZRep vqt = rep_q_to_qt(v);
    out.generic_profile = profile_of(out.family, vqt);
    return out;
}

SubrepLine lift_point_rational(const TypeVector& r, const SubrepLine& point_fp,
                               const ArrowProfile& profile) {
    if (point_fp.x.empty() || point_fp.x[0].empty())
        throw ContractViolation("empty oracle point");
    FieldSpec fp = point_fp.x[0][0].field();
    if (fp.kind != FieldKind::Prime) throw ContractViolation("oracle point must be over F_p");
    int p = fp.p;
    FieldSpec fq = field_Q();
    ZRep vq = dual(make_u_of_r(r, fq));
    ZRep vp = reduce_mod_p(vq, p);
    validate_line(vp, point_fp);
    ArrowProfile prof = profile_of(point_fp, vp);
    if (!(prof == profile)) throw ContractViolation("profile does not match the oracle point");

    int d = r.d();
    auto in_left = [&](int i) { return i > 0 && prof.up[i - 1]; };
    auto in_right = [&](int i) { return i < d && prof.dn[i]; };
    auto lift_scalar = [&](const Scalar& s) { return Scalar(fq, s.residue()); };
    auto lift_vec = [&](const Vec& v) {
        Vec out;
        for (const Scalar& s : v) out.push_back(lift_scalar(s));
        return out;
    };

    std::vector<Vec> xq(d + 1);
    // joins (two incoming nonzero arrows) first: their block is a free
    // projective coordinate
    for (int i = 0; i <= d; ++i)
        if (in_left(i) && in_right(i)) xq[i] = lift_vec(point_fp.at(i));
    // anchors: free vertices, with end blocks tied to the joins their
    // transport chains reach
    for (int s = 0; s <= d; ++s) {
        if (in_left(s) || in_right(s)) continue;
        Vec lifted = lift_vec(point_fp.at(s));
        int tl = s;
        while (tl > 0 && prof.dn[tl - 1]) --tl;
        int tr = s;
        while (tr < d && prof.up[tr]) ++tr;
        auto tie_block = [&](int t) {
            // rescale block t of `lifted` to lift(ratio) * lifted join block
            const Vec& sink_fp = point_fp.at(t);
            int k0 = -1;
            for (int k = r.R(t - 1); k < r.R(t); ++k)
                if (!sink_fp[k].is_zero()) {
                    k0 = k;
                    break;
                }
            if (k0 < 0) throw std::logic_error("join generator vanishes on its own block");
            Scalar ratio = point_fp.at(s)[k0] / sink_fp[k0];
            Scalar c = lift_scalar(ratio);
            for (int k = r.R(t - 1); k < r.R(t); ++k) lifted[k] = c * xq[t][k];
        };
        if (tl < s && in_left(tl)) tie_block(tl);
        if (tr > s && in_right(tr)) tie_block(tr);
        xq[s] = lifted;
    }
    // transported vertices: push forward along nonzero arrows
    for (int i = 1; i <= d; ++i)
        if (in_left(i) && !in_right(i)) xq[i] = vq.fwd_map(i - 1).apply(xq[i - 1]);
    for (int i = d - 1; i >= 0; --i)
        if (in_right(i) && !in_left(i)) xq[i] = vq.bwd_map(i).apply(xq[i + 1]);

    SubrepLine out;
    out.lo = 0;
    out.x = xq;
    validate_line(vq, out);
    if (!(profile_of(out, vq) == prof))
        throw std::logic_error("rational lift changed the stratum");
    SubrepLine red = line_reduce_mod_p(out, p);
    for (int i = 0; i <= d; ++i)
        if (vec_is_zero(red.at(i)) || !wedge_vanishes(red.at(i), point_fp.at(i)))
            throw std::logic_error("rational lift does not reduce to the oracle point");
    return out;
}

SubrepLine evaluate_family(const SubrepLine& family_qt, mpq_class* t_used) {
    for (long tv = 1; tv < 1000; ++tv) {
        mpq_class t(tv);
        SubrepLine out;
        out.lo = family_qt.lo;
        bool ok = true;
        for (const Vec& v : family_qt.x) {
            Vec ev;
            try {
                for (const Scalar& s : v) ev.push_back(s.eval_at(t));
            } catch (const ContractViolation&) {
                ok = false;
                break;
            }
            if (vec_is_zero(ev)) {
                ok = false;
                break;
            }
            out.x.push_back(ev);
        }
        if (ok) {
            if (t_used) *t_used = t;
            return out;
        }
    }
    throw ContractViolation("no small parameter value keeps the family nonzero");
}

}  // namespace zchain
