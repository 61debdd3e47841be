#include "curve.hpp"

#include <algorithm>
#include <map>

namespace zchain {

NodalCurve rational_curve() { return NodalCurve{0, 0, NodalCurve::Model::RationalExplicit}; }

namespace {

bool same_point(const CurvePoint& a, const CurvePoint& b) {
    return a.side == b.side && a.coord == b.coord;
}

void check_point(const CurvePoint& p) {
    if (p.coord == 0)
        throw ContractViolation("the node is not a valid twist point");
}

}  // namespace

int deg_on_Y(const CurveBundle& b) {
    int d = b.dY;
    for (const auto& [p, m] : b.twists)
        if (p.side == CurvePoint::Side::Y) d += m;
    return d;
}

int deg_on_Z(const CurveBundle& b) {
    int d = b.dZ;
    for (const auto& [p, m] : b.twists)
        if (p.side == CurvePoint::Side::Z) d += m;
    return d;
}

int degree(const CurveBundle& b) { return deg_on_Y(b) + deg_on_Z(b); }

CurveBundle make_bundle(int dY, int dZ, const mpq_class& gluing) {
    if (gluing == 0) throw ContractViolation("gluing scalar must be nonzero");
    CurveBundle b;
    b.dY = dY;
    b.dZ = dZ;
    b.gluing = gluing;
    return b;
}

CurveBundle point_twist(const CurveBundle& b, const CurvePoint& P, int mult) {
    check_point(P);
    CurveBundle out = b;
    for (auto& [p, m] : out.twists)
        if (same_point(p, P)) {
            m += mult;
            out.twists.erase(std::remove_if(out.twists.begin(), out.twists.end(),
                                            [](const auto& t) { return t.second == 0; }),
                             out.twists.end());
            return out;
        }
    if (mult != 0) out.twists.push_back({P, mult});
    return out;
}

CurveBundle serre_dual(const NodalCurve& c, const CurveBundle& b) {
    CurveBundle out;
    out.dY = 2 * c.gY - 1 - b.dY;
    out.dZ = 2 * c.gZ - 1 - b.dZ;
    out.gluing = 1 / b.gluing;
    for (const auto& [p, m] : b.twists) out.twists.push_back({p, -m});
    return out;
}

std::pair<int, int> default_window(const CurveBundle& b) {
    int a = -deg_on_Z(b), z = deg_on_Y(b);
    return {std::min(a, z) - 2, std::max(a, z) + 2};
}

namespace {

// Section spaces of the i-th twist on one component: polynomials h with
// deg h <= bound and prescribed vanishing at the twist points, in the
// chart where the node sits at 0.  Sections are h / den with den the fixed
// positive-twist denominator; the node value is h(0)/den(0).
struct SideSpace {
    int bound = -1;                                  // -1: empty space
    std::vector<std::pair<Scalar, int>> vanishing;   // (point, order)
    Scalar den_at0 = Scalar::one(field_Q());

    int coeffs() const { return bound >= 0 ? bound + 1 : 0; }
};

SideSpace side_space(const CurveBundle& b, CurvePoint::Side side, int twist_at_node,
                     FieldSpec fs) {
    SideSpace s;
    int base = side == CurvePoint::Side::Y ? b.dY : b.dZ;
    int pos = 0;
    s.den_at0 = Scalar::one(fs);
    for (const auto& [p, m] : b.twists) {
        if (p.side != side) continue;
        Scalar coord = fs.kind == FieldKind::Prime
                           ? q_mod_p(Scalar::from_rational(p.coord), fs)
                           : Scalar::from_rational(p.coord);
        if (coord.is_zero())
            throw ConfigError("twist point collides with the node in this field");
        if (m > 0) {
            pos += m;
            // den *= (x - coord)^m, evaluated at 0
            Scalar f = -coord;
            for (int k = 0; k < m; ++k) s.den_at0 = s.den_at0 * f;
        } else {
            s.vanishing.push_back({coord, -m});
        }
    }
    s.bound = base - twist_at_node + pos;
    if (s.bound < 0) s.bound = -1;
    return s;
}

// rows of the vanishing conditions: Hasse derivatives up to each order,
// valid over any coefficient field
std::vector<Vec> vanishing_rows(const SideSpace& s, FieldSpec fs) {
    std::vector<Vec> rows;
    for (const auto& [pt, order] : s.vanishing) {
        for (int k = 0; k < order; ++k) {
            Vec row(s.coeffs(), Scalar::zero(fs));
            for (int j = k; j <= s.bound; ++j) {
                // C(j, k) * pt^(j-k)
                mpz_class binom;
                mpz_bin_uiui(binom.get_mpz_t(), j, k);
                Scalar coef = fs.kind == FieldKind::Prime
                                  ? q_mod_p(Scalar::from_rational(mpq_class(binom)), fs)
                                  : Scalar::from_rational(mpq_class(binom));
                Scalar power = Scalar::one(fs);
                for (int e = 0; e < j - k; ++e) power = power * pt;
                row[j] = coef * power;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// basis of the glued section space at twist level i, as a Subspace of the
// concatenated (Y coeffs | Z coeffs) coordinate space
Subspace glued_sections(const CurveBundle& b, int i, FieldSpec fs) {
    SideSpace sy = side_space(b, CurvePoint::Side::Y, i, fs);
    SideSpace sz = side_space(b, CurvePoint::Side::Z, -i, fs);
    int ny = sy.coeffs(), nz = sz.coeffs();
    int n = ny + nz;
    Scalar glue = fs.kind == FieldKind::Prime ? q_mod_p(Scalar::from_rational(b.gluing), fs)
                                              : Scalar::from_rational(b.gluing);
    std::vector<Vec> rows;
    // node matching: valY - glue * valZ = 0
    Vec node(n, Scalar::zero(fs));
    if (ny > 0) node[0] = sy.den_at0.inv();
    if (nz > 0) node[ny] = -(glue * sz.den_at0.inv());
    rows.push_back(node);
    for (const Vec& r : vanishing_rows(sy, fs)) {
        Vec row(n, Scalar::zero(fs));
        for (int j = 0; j < ny; ++j) row[j] = r[j];
        rows.push_back(row);
    }
    for (const Vec& r : vanishing_rows(sz, fs)) {
        Vec row(n, Scalar::zero(fs));
        for (int j = 0; j < nz; ++j) row[ny + j] = r[j];
        rows.push_back(row);
    }
    if (n == 0) return Subspace::zero_subspace(0, fs);
    return kernel(Matrix::from_rows(rows, n, fs));
}

}  // namespace

std::vector<int> h0_sequence(const NodalCurve& c, const CurveBundle& b, int wlo, int whi) {
    if (c.model != NodalCurve::Model::RationalExplicit)
        throw ContractViolation("h0_sequence needs the explicit rational model");
    if (c.genus() != 0)
        throw ContractViolation("the explicit model requires rational components");
    std::vector<int> out;
    for (int i = wlo; i <= whi; ++i) out.push_back(glued_sections(b, i, field_Q()).dim());
    return out;
}

SectionTower build_tower(const NodalCurve& c, const CurveBundle& b, int wlo, int whi,
                         FieldSpec fs) {
    if (c.model != NodalCurve::Model::RationalExplicit || c.genus() != 0)
        throw ContractViolation("build_tower needs the explicit rational model");
    auto [core_lo, core_hi] = std::pair<int, int>{-deg_on_Z(b), deg_on_Y(b)};
    if (degree(b) >= 0 && (wlo > core_lo - 1 || whi < core_hi + 1))
        throw ContractViolation(
            "window must contain the nonnegative-degree core padded by one index");

    std::vector<Subspace> bases;
    std::vector<int> dims;
    for (int i = wlo; i <= whi; ++i) {
        bases.push_back(glued_sections(b, i, fs));
        dims.push_back(bases.back().dim());
    }
    std::vector<Matrix> fwd, bwd;
    for (int i = wlo; i < whi; ++i) {
        const Subspace& src = bases[i - wlo];
        const Subspace& dst = bases[i - wlo + 1];
        SideSpace sy_i = side_space(b, CurvePoint::Side::Y, i, fs);
        SideSpace sz_i = side_space(b, CurvePoint::Side::Z, -i, fs);
        SideSpace sy_n = side_space(b, CurvePoint::Side::Y, i + 1, fs);
        SideSpace sz_n = side_space(b, CurvePoint::Side::Z, -i - 1, fs);
        // forward: keep the Z part, multiply by the chart coordinate
        Matrix f(dst.dim(), src.dim(), fs);
        for (int k = 0; k < src.dim(); ++k) {
            Vec v = src.basis_row(k);
            Vec img(sy_n.coeffs() + sz_n.coeffs(), Scalar::zero(fs));
            for (int j = 0; j < sz_i.coeffs(); ++j)
                img[sy_n.coeffs() + j + 1] = v[sy_i.coeffs() + j];
            Vec coords = dst.coordinates(img);
            for (int row = 0; row < dst.dim(); ++row) f.at(row, k) = coords[row];
        }
        fwd.push_back(f);
        // backward: keep the Y part, multiply by the chart coordinate
        Matrix bk(src.dim(), dst.dim(), fs);
        for (int k = 0; k < dst.dim(); ++k) {
            Vec v = dst.basis_row(k);
            Vec img(sy_i.coeffs() + sz_i.coeffs(), Scalar::zero(fs));
            for (int j = 0; j < sy_n.coeffs(); ++j) img[j + 1] = v[j];
            Vec coords = src.coordinates(img);
            for (int row = 0; row < src.dim(); ++row) bk.at(row, k) = coords[row];
        }
        bwd.push_back(bk);
    }
    SectionTower tower{ZRep(fs, wlo, dims, fwd, bwd, TailKind::Truncated, TailKind::Truncated),
                       {}};
    for (int i = wlo; i <= whi; ++i)
        tower.multidegs.push_back({deg_on_Y(b) - i, deg_on_Z(b) + i});
    // a chain of section spaces always composes to zero in opposite directions
    if (auto f = special_failure(tower.rep))
        throw std::logic_error("section tower is not a special chain: " + *f);
    return tower;
}

std::vector<Subspace> winU_construct(const ZRep& rep, int n, int plateau_lo, int plateau_hi) {
    if (n == 0) {
        std::vector<Subspace> zero;
        for (int i = rep.lo(); i <= rep.hi(); ++i)
            zero.push_back(Subspace::zero_subspace(rep.dim_at(i), rep.field()));
        return zero;
    }
    if (plateau_lo > plateau_hi || plateau_lo < rep.lo() || plateau_hi > rep.hi())
        throw ContractViolation("plateau must be a nonempty subinterval of the window");
    for (int i = plateau_lo; i <= plateau_hi; ++i)
        if (rep.dim_at(i) != n)
            throw ContractViolation("plateau dimension differs from n at vertex " +
                                    std::to_string(i));
    for (int i = plateau_hi; i < rep.hi(); ++i)
        if (rep.dim_at(i + 1) < rep.dim_at(i))
            throw ContractViolation("dimensions decrease rightward at vertex " +
                                    std::to_string(i + 1));
    for (int i = plateau_lo; i > rep.lo(); --i)
        if (rep.dim_at(i - 1) < rep.dim_at(i))
            throw ContractViolation("dimensions decrease leftward at vertex " +
                                    std::to_string(i - 1));

    std::vector<Subspace> w(rep.window_len(), Subspace());
    for (int i = plateau_lo; i <= plateau_hi; ++i)
        w[i - rep.lo()] = Subspace::full(n, rep.field());
    for (int i = plateau_hi; i < rep.hi(); ++i) {
        Subspace img = apply(rep.fwd_map(i), w[i - rep.lo()]);
        Subspace pre = preimage(rep.bwd_map(i), w[i - rep.lo()]);
        if (!pre.contains(img))
            throw ContractViolation(
                "image escapes the backward preimage at vertex " + std::to_string(i + 1) +
                "; the chain is not special there");
        w[i + 1 - rep.lo()] = extend_to_dim(img, pre, n);
    }
    for (int i = plateau_lo; i > rep.lo(); --i) {
        Subspace img = apply(rep.bwd_map(i - 1), w[i - rep.lo()]);
        Subspace pre = preimage(rep.fwd_map(i - 1), w[i - rep.lo()]);
        if (!pre.contains(img))
            throw ContractViolation(
                "image escapes the forward preimage at vertex " + std::to_string(i - 1) +
                "; the chain is not special there");
        w[i - 1 - rep.lo()] = extend_to_dim(img, pre, n);
    }
    // closure under both maps, dimension n everywhere
    for (int i = rep.lo(); i <= rep.hi(); ++i)
        if (w[i - rep.lo()].dim() != n)
            throw std::logic_error("constructed subrepresentation has a wrong dimension");
    for (int i = rep.lo(); i < rep.hi(); ++i) {
        if (!w[i + 1 - rep.lo()].contains(apply(rep.fwd_map(i), w[i - rep.lo()])))
            throw std::logic_error("constructed family is not closed under forward maps");
        if (!w[i - rep.lo()].contains(apply(rep.bwd_map(i), w[i + 1 - rep.lo()])))
            throw std::logic_error("constructed family is not closed under backward maps");
    }
    return w;
}

H0Result frak_h0(const NodalCurve& c, const CurveBundle& b) {
    if (c.model != NodalCurve::Model::RationalExplicit || c.genus() != 0)
        throw ContractViolation("frak_h0 construct mode needs the explicit rational model");
    auto [wlo, whi] = default_window(b);
    std::vector<int> dims = h0_sequence(c, b, wlo, whi);
    H0Result res;
    res.upper_bound = *std::min_element(dims.begin(), dims.end());
    int d = degree(b);
    if (d < 0) {
        // some twist has no sections at all, so no positive pure dimension
        if (res.upper_bound != 0)
            throw std::logic_error("negative degree but no zero space in the window");
        res.value = 0;
        res.exact = true;
        return res;
    }
    // plateau of width d+1 between the degree crossovers, padded one inward
    SectionTower tower = build_tower(c, b, wlo, whi, field_Q());
    res.certificate = winU_construct(tower.rep, d + 1, -deg_on_Z(b) - 1, deg_on_Y(b) + 1);
    res.value = d + 1;
    res.exact = res.value == res.upper_bound;
    return res;
}

namespace {

// all k-dimensional subspaces of F_q^m
std::vector<Subspace> all_subspaces(int m, int k, FieldSpec fq, long& budget) {
    std::vector<Subspace> out;
    if (k == 0) {
        out.push_back(Subspace::zero_subspace(m, fq));
        return out;
    }
    if (k > m) return out;
    // enumerate rref matrices: choose pivot columns, fill free entries
    std::vector<int> piv(k);
    std::function<void(int, int)> choose = [&](int idx, int start) {
        if (idx == k) {
            // free positions: row i, columns > piv[i], excluding pivot columns
            std::vector<std::pair<int, int>> free_pos;
            for (int i = 0; i < k; ++i)
                for (int j = piv[i] + 1; j < m; ++j)
                    if (std::find(piv.begin(), piv.end(), j) == piv.end())
                        free_pos.push_back({i, j});
            long combos = 1;
            for (size_t t = 0; t < free_pos.size(); ++t) {
                combos *= fq.p;
                if (combos > budget) throw SizeBoundExceeded("subspace enumeration too large");
            }
            for (long code = 0; code < combos; ++code) {
                if (--budget < 0) throw SizeBoundExceeded("subspace enumeration budget exhausted");
                Matrix mmat(k, m, fq);
                for (int i = 0; i < k; ++i) mmat.at(i, piv[i]) = Scalar::one(fq);
                long cc = code;
                for (const auto& [i, j] : free_pos) {
                    mmat.at(i, j) = Scalar(fq, cc % fq.p);
                    cc /= fq.p;
                }
                out.push_back(Subspace(m, mmat));
            }
            return;
        }
        for (int col = start; col <= m - (k - idx); ++col) {
            piv[idx] = col;
            choose(idx + 1, col + 1);
        }
    };
    choose(0, 0);
    return out;
}

bool chain_search(const ZRep& rep, int n, size_t depth, std::vector<Subspace>& chain,
                  long& budget) {
    if (depth == static_cast<size_t>(rep.window_len())) return true;
    int vert = rep.lo() + static_cast<int>(depth);
    if (depth == 0) {
        for (const Subspace& s : all_subspaces(rep.dim_at(vert), n, rep.field(), budget)) {
            chain.push_back(s);
            if (chain_search(rep, n, depth + 1, chain, budget)) return true;
            chain.pop_back();
        }
        return false;
    }
    Matrix f = rep.fwd_map(vert - 1), bk = rep.bwd_map(vert - 1);
    Subspace img = apply(f, chain.back());
    Subspace pre = preimage(bk, chain.back());
    if (img.dim() > n || !pre.contains(img)) return false;
    // subspaces between img and pre of dimension n: img + lift of a
    // subspace of pre/img spanned by complement rows
    std::vector<Vec> comp;
    {
        Matrix acc = img.basis();
        int have = img.dim();
        for (int i = 0; i < pre.dim() && have < pre.dim(); ++i) {
            Matrix cand = acc.vstack(
                Matrix::from_rows({pre.basis_row(i)}, pre.ambient_dim(), pre.field()));
            if (rank(cand) > have) {
                acc = cand;
                ++have;
                comp.push_back(pre.basis_row(i));
            }
        }
    }
    int quot = static_cast<int>(comp.size());
    int need = n - img.dim();
    if (need < 0 || need > quot) return false;
    for (const Subspace& t : all_subspaces(quot, need, rep.field(), budget)) {
        std::vector<Vec> rows;
        for (int i = 0; i < img.dim(); ++i) rows.push_back(img.basis_row(i));
        for (int i = 0; i < t.dim(); ++i) {
            Vec lift(pre.ambient_dim(), Scalar::zero(rep.field()));
            for (int j = 0; j < quot; ++j) {
                if (t.basis().at(i, j).is_zero()) continue;
                lift = vec_add(lift, vec_scale(t.basis().at(i, j), comp[j]));
            }
            rows.push_back(lift);
        }
        Subspace s = Subspace::span_of(rows, pre.ambient_dim(), rep.field());
        if (s.dim() != n) continue;
        chain.push_back(s);
        if (chain_search(rep, n, depth + 1, chain, budget)) return true;
        chain.pop_back();
    }
    return false;
}

}  // namespace

int frak_h0_oracle(const ZRep& rep, long node_budget, std::vector<Subspace>* witness) {
    if (rep.field().kind != FieldKind::Prime)
        throw ContractViolation("the subrepresentation oracle runs over a prime field");
    int upper = *std::min_element(rep.dims().begin(), rep.dims().end());
    for (int n = upper; n >= 1; --n) {
        long budget = node_budget;
        std::vector<Subspace> chain;
        if (chain_search(rep, n, 0, chain, budget)) {
            if (witness) *witness = chain;
            return n;
        }
    }
    if (witness) witness->clear();
    return 0;
}

RRReport rr_report(const NodalCurve& c, const CurveBundle& b) {
    RRReport rep;
    rep.g = c.genus();
    rep.deg = degree(b);
    H0Result h0 = frak_h0(c, b);
    H0Result h1 = frak_h0(c, serre_dual(c, b));
    rep.h0 = h0.value;
    rep.h1 = h1.value;
    rep.h0_exact = h0.exact;
    rep.h1_exact = h1.exact;
    rep.riemann_ok = rep.h0 >= rep.deg - rep.g + 1;
    rep.rr_applicable = rep.deg < 0 || rep.deg > 2 * rep.g - 2 || rep.g <= 1;
    if (rep.rr_applicable) rep.rr_ok = (rep.h0 - rep.h1 == rep.deg - rep.g + 1);
    return rep;
}

bool check_desigualdade(const NodalCurve& c, const CurveBundle& b, const CurvePoint& P) {
    check_point(P);
    int h = frak_h0(c, b).value;
    int ht = frak_h0(c, point_twist(b, P)).value;
    return h - 1 <= ht && ht <= h;
}

void validate_fixture_dims(int gY, int gZ, std::pair<int, int> multideg, int wlo,
                           const std::vector<int>& dims) {
    int g = gY + gZ;
    int d = multideg.first + multideg.second;
    if (!(d > 2 * g - 2) || multideg.second != 0) return;  // shape checks do not apply
    for (size_t k = 0; k + 1 < dims.size(); ++k) {
        int i = wlo + static_cast<int>(k);
        if (i >= 2 * gZ) {
            // steps of 0 or 1 going right
            if (!(dims[k] <= dims[k + 1] && dims[k + 1] <= dims[k] + 1))
                throw ContractViolation("fixture rejected: right step at vertex " +
                                        std::to_string(i));
        }
        if (i + 1 <= d - 2 * gY) {
            if (!(dims[k + 1] <= dims[k] && dims[k] <= dims[k + 1] + 1))
                throw ContractViolation("fixture rejected: left step at vertex " +
                                        std::to_string(i));
        }
    }
    for (size_t k = 0; k < dims.size(); ++k) {
        int i = wlo + static_cast<int>(k);
        if (i >= 2 * gZ - 1 && i <= d - 2 * gY + 1 && dims[k] != d - g + 1)
            throw ContractViolation("fixture rejected: plateau value at vertex " +
                                    std::to_string(i));
    }
}

std::vector<int> h0_sequence(const ProfileFixture& fix) {
    validate_fixture_dims(fix.gY, fix.gZ, fix.multideg, fix.bundle_rep.lo(),
                          fix.bundle_rep.dims());
    return fix.bundle_rep.dims();
}

RRReport rr_report_fixture(const ProfileFixture& fix, int p) {
    std::vector<int> dims = fix.bundle_rep.dims();
    validate_fixture_dims(fix.gY, fix.gZ, fix.multideg, fix.bundle_rep.lo(), dims);
    RRReport rep;
    rep.g = fix.gY + fix.gZ;
    rep.deg = fix.deg;
    rep.h0 = frak_h0_oracle(reduce_mod_p(fix.bundle_rep, p));
    rep.h1 = frak_h0_oracle(reduce_mod_p(fix.dual_rep, p));
    rep.h0_exact = rep.h1_exact = true;  // exhaustive over F_p on the supplied data
    rep.riemann_ok = rep.h0 >= rep.deg - rep.g + 1;
    rep.rr_applicable = rep.deg < 0 || rep.deg > 2 * rep.g - 2 || rep.g <= 1;
    if (rep.rr_applicable) rep.rr_ok = (rep.h0 - rep.h1 == rep.deg - rep.g + 1);
    rep.note = fix.note;
    return rep;
}

}  // namespace zchain
