#include "hilbert.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace zchain {

namespace {

// exponent vectors of total degree deg in n variables, lexicographic
void gen_exponents(int n, int deg, std::vector<uint8_t>& cur,
                   std::vector<std::vector<uint8_t>>& out) {
    if (n == 1) {
        cur.push_back(static_cast<uint8_t>(deg));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur.push_back(static_cast<uint8_t>(e));
        gen_exponents(n - 1, deg - e, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<uint8_t>> exponents(int n, int deg) {
    std::vector<std::vector<uint8_t>> out;
    if (n == 0) {
        if (deg == 0) out.push_back({});
        return out;
    }
    std::vector<uint8_t> cur;
    gen_exponents(n, deg, cur, out);
    return out;
}

std::vector<uint8_t> concat(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    std::vector<uint8_t> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

std::vector<uint8_t> add_exps(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    std::vector<uint8_t> r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<uint8_t>(r[i] + b[i]);
    return r;
}

// merge terms, drop zeros, make the leading coefficient one
MultiPoly normalize_poly(MultiPoly p) {
    std::map<std::vector<uint8_t>, Scalar> merged;
    for (auto& [c, e] : p.terms) {
        auto it = merged.find(e);
        if (it == merged.end())
            merged.emplace(e, c);
        else
            it->second = it->second + c;
    }
    p.terms.clear();
    for (auto& [e, c] : merged)
        if (!c.is_zero()) p.terms.push_back({c, e});
    if (!p.terms.empty()) {
        Scalar inv = p.terms.front().first.inv();
        for (auto& [c, e] : p.terms) c = c * inv;
    }
    return p;
}

}  // namespace

MultiGradedIdeal plucker_generators(const ZRep& v, PairMode mode) {
    MultiGradedIdeal I;
    I.field = v.field();
    int n = v.window_len();
    int total_vars = 0;
    std::vector<int> offset(n);
    for (int k = 0; k < n; ++k) {
        I.factor_dims.push_back(v.dims()[k]);
        I.factor_vertices.push_back(v.lo() + k);
        offset[k] = total_vars;
        total_vars += v.dims()[k];
    }

    std::vector<std::pair<int, int>> pairs;
    if (mode == PairMode::Adjacent) {
        for (int k = 0; k + 1 < n; ++k) {
            pairs.push_back({k, k + 1});
            pairs.push_back({k + 1, k});
        }
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b) pairs.push_back({a, b});
    }

    std::set<std::string> seen;
    for (auto [ki, kj] : pairs) {
        Matrix m = composite(v, v.lo() + ki, v.lo() + kj);
        int dj = v.dims()[kj], di = v.dims()[ki];
        for (int a = 0; a < dj; ++a)
            for (int b = a + 1; b < dj; ++b) {
                // wedge entry (m x_i)_a (x_j)_b - (m x_i)_b (x_j)_a
                MultiPoly g;
                g.multidegree.assign(n, 0);
                g.multidegree[ki] += 1;
                g.multidegree[kj] += 1;
                for (int c = 0; c < di; ++c) {
                    if (!m.at(a, c).is_zero()) {
                        std::vector<uint8_t> e(total_vars, 0);
                        e[offset[ki] + c] += 1;
                        e[offset[kj] + b] += 1;
                        g.terms.push_back({m.at(a, c), e});
                    }
                    if (!m.at(b, c).is_zero()) {
                        std::vector<uint8_t> e(total_vars, 0);
                        e[offset[ki] + c] += 1;
                        e[offset[kj] + a] += 1;
                        g.terms.push_back({-m.at(b, c), e});
                    }
                }
                g = normalize_poly(g);
                if (g.terms.empty()) continue;
                std::string key;
                for (auto& [c, e] : g.terms) {
                    key += c.str();
                    key.push_back('|');
                    for (uint8_t x : e) key.push_back(static_cast<char>('0' + x));
                    key.push_back(';');
                }
                if (seen.insert(key).second) I.gens.push_back(g);
            }
    }
    return I;
}

namespace {

using SparseRow = std::vector<std::pair<int, Scalar>>;

// row - f * pivot, both sorted by column; pivot is monic
SparseRow row_axpy(const SparseRow& row, const Scalar& f, const SparseRow& pivot) {
    SparseRow out;
    size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.push_back({pivot[j].first, -(f * pivot[j].second)});
            ++j;
        } else {
            Scalar c = row[i].second - f * pivot[j].second;
            if (!c.is_zero()) out.push_back({row[i].first, c});
            ++i;
            ++j;
        }
    }
    return out;
}

int sparse_rank(std::vector<SparseRow> rows) {
    std::unordered_map<int, SparseRow> basis;
    int rank = 0;
    for (auto& row : rows) {
        SparseRow cur = std::move(row);
        while (!cur.empty()) {
            auto it = basis.find(cur.front().first);
            if (it == basis.end()) {
                Scalar inv = cur.front().second.inv();
                for (auto& [c, s] : cur) s = s * inv;
                basis.emplace(cur.front().first, std::move(cur));
                ++rank;
                break;
            }
            cur = row_axpy(cur, cur.front().second, it->second);
        }
    }
    return rank;
}

}  // namespace

long hilbert_function(const MultiGradedIdeal& I, const std::vector<int>& degree,
                      const HilbertBounds& bounds) {
    int n = static_cast<int>(I.factor_dims.size());
    if (static_cast<int>(degree.size()) != n)
        throw ContractViolation("degree tuple length does not match factor count");
    if (n > bounds.max_factors)
        throw SizeBoundExceeded("too many factors for the Hilbert computation");
    for (int d : degree) {
        if (d < 0) throw ContractViolation("negative degree");
        if (d > bounds.max_degree)
            throw SizeBoundExceeded("degree exceeds the configured bound");
    }

    // monomial basis of S_degree, ordered lexicographically inside each
    // factor, factors in window order
    std::vector<std::vector<uint8_t>> monos = {{}};
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<uint8_t>> next;
        for (const auto& a : monos)
            for (const auto& b : exponents(I.factor_dims[k], degree[k]))
                next.push_back(concat(a, b));
        monos = std::move(next);
    }
    std::map<std::vector<uint8_t>, int> col_of;
    for (size_t i = 0; i < monos.size(); ++i) col_of.emplace(monos[i], static_cast<int>(i));

    std::vector<SparseRow> rows;
    for (const MultiPoly& g : I.gens) {
        std::vector<int> rem(n);
        bool fits = true;
        for (int k = 0; k < n; ++k) {
            rem[k] = degree[k] - g.multidegree[k];
            if (rem[k] < 0) fits = false;
        }
        if (!fits) continue;
        std::vector<std::vector<uint8_t>> fills = {{}};
        for (int k = 0; k < n; ++k) {
            std::vector<std::vector<uint8_t>> next;
            for (const auto& a : fills)
                for (const auto& b : exponents(I.factor_dims[k], rem[k]))
                    next.push_back(concat(a, b));
            fills = std::move(next);
        }
        for (const auto& mono : fills) {
            SparseRow row;
            for (const auto& [c, e] : g.terms)
                row.push_back({col_of.at(add_exps(e, mono)), c});
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            rows.push_back(std::move(row));
        }
    }
    return static_cast<long>(monos.size()) - sparse_rank(std::move(rows));
}

long expected_hilbert(int r, const std::vector<int>& degree) {
    if (r < 1) throw ContractViolation("dimension must be positive");
    long total = std::accumulate(degree.begin(), degree.end(), 0L);
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(total + r - 1),
                 static_cast<unsigned long>(r - 1));
    return static_cast<long>(binom.get_si());
}

Smoothing make_smoothing(const TypeVector& tv) {
    FieldSpec qt = field_Qt();
    int d = tv.d(), r = tv.total();
    Scalar t = Scalar::t_var();
    std::vector<int> dims(d + 1, r);
    std::vector<Matrix> fwd, bwd;
    for (int i = 0; i < d; ++i) {
        Matrix f(r, r, qt), b(r, r, qt);
        for (int k = 0; k < r; ++k) {
            f.at(k, k) = k < tv.R(i) ? t : Scalar::one(qt);  // diag(t I_R, I_S)
            b.at(k, k) = k < tv.R(i) ? Scalar::one(qt) : t;  // diag(I_R, t I_S)
        }
        fwd.push_back(f);
        bwd.push_back(b);
    }
    Smoothing s{tv, ZRep(qt, 0, dims, fwd, bwd, TailKind::ForwardIso, TailKind::BackwardIso)};
    if (!(smoothing_specialize(s) == dual(make_u_of_r(tv, field_Q()))))
        throw std::logic_error("smoothing does not specialize to the canonical chain");
    return s;
}

ZRep smoothing_specialize(const Smoothing& s) {
    std::vector<Matrix> fwd, bwd;
    for (const auto& m : s.rep.fwd_raw()) fwd.push_back(specialize_at0(m));
    for (const auto& m : s.rep.bwd_raw()) bwd.push_back(specialize_at0(m));
    return ZRep(field_Q(), s.rep.lo(), s.rep.dims(), fwd, bwd, s.rep.left_tail(),
                s.rep.right_tail());
}

ZRep smoothing_evaluate(const Smoothing& s, const mpq_class& t) {
    std::vector<Matrix> fwd, bwd;
    for (const auto& m : s.rep.fwd_raw()) fwd.push_back(evaluate_at(m, t));
    for (const auto& m : s.rep.bwd_raw()) bwd.push_back(evaluate_at(m, t));
    return ZRep(field_Q(), s.rep.lo(), s.rep.dims(), fwd, bwd, s.rep.left_tail(),
                s.rep.right_tail());
}

namespace {

Vec embed_qt(const Vec& v) {
    Vec out;
    for (const Scalar& s : v) out.push_back(q_to_qt(s));
    return out;
}

Vec spec0(const Vec& v) {
    Vec out;
    for (const Scalar& s : v) out.push_back(s.eval_at0());
    return out;
}

Scalar div_t(const Scalar& s) {
    if (s.is_zero()) return s;
    if (s.ord_at0() < 1)
        throw ContractViolation("lift seam difference is not divisible by the parameter");
    return s / Scalar::t_var();
}

}  // namespace

SubrepLine lift_subrep(const Smoothing& s, const SubrepLine& w) {
    const ZRep& vt = s.rep;
    ZRep v0 = smoothing_specialize(s);
    validate_line(v0, w);
    ArrowProfile prof = profile_of(w, v0);
    if (!prof.is_exact())
        throw ContractViolation("lift_subrep requires an exact subrepresentation line");
    int d = s.type.d();
    int r = s.type.total();
    std::vector<int> sinks = prof.sinks();
    std::vector<int> sources = prof.sources();
    int l = static_cast<int>(sources.size());
    if (static_cast<int>(sinks.size()) != l + 1)
        throw ContractViolation("profile sinks and sources do not interleave");
    // anchor vertices: 0, the sources, d
    std::vector<int> anchors = {0};
    anchors.insert(anchors.end(), sources.begin(), sources.end());
    anchors.push_back(d);

    // gamma_i: the round trip t_i -> s_i -> t_i is a scalar multiple of the
    // identity on the family
    std::vector<Scalar> gamma;
    for (int i = 0; i <= l; ++i) {
        Matrix m =
            composite(vt, anchors[i + 1], sinks[i]) * composite(vt, sinks[i], anchors[i + 1]);
        Scalar g = Scalar::zero(field_Qt());
        if (!m.is_scalar_multiple_of_identity(&g))
            throw ContractViolation("family composites are not scalar multiples of the identity");
        gamma.push_back(g);
    }

    std::vector<Vec> x_anchor(anchors.size());
    x_anchor[0] = embed_qt(w.at(0));
    for (int j = 0; j <= l; ++j) {
        int tj = sinks[j], sj = anchors[j + 1];
        Vec xt = composite(vt, anchors[j], tj).apply(x_anchor[j]);
        Vec cand = embed_qt(w.at(sj));
        Vec u = composite(vt, sj, tj).apply(cand);
        Vec u0 = spec0(u), xt0 = spec0(xt);
        if (vec_is_zero(u0) || vec_is_zero(xt0) || !wedge_vanishes(u0, xt0))
            throw ContractViolation("lift seam residues do not match the input point");
        int k0 = -1;
        for (int k = 0; k < r; ++k)
            if (!xt0[k].is_zero()) {
                k0 = k;
                break;
            }
        Scalar scale = q_to_qt(xt0[k0] / u0[k0]);
        cand = vec_scale(scale, cand);
        u = vec_scale(scale, u);
        // u = xt + t y
        Vec y;
        for (int k = 0; k < r; ++k) y.push_back(div_t(u[k] - xt[k]));
        // split y = C1 y1 - C0 y0; solvable with functions regular at 0
        // because the special fiber is colinked
        Matrix c1 = composite(vt, sj, tj), c0 = composite(vt, 0, tj);
        Matrix a(r, 2 * r, field_Qt());
        for (int row = 0; row < r; ++row)
            for (int col = 0; col < r; ++col) {
                a.at(row, col) = c1.at(row, col);
                a.at(row, r + col) = -c0.at(row, col);
            }
        Vec sol = solve_regular_at0(a, y);
        Vec y1(sol.begin(), sol.begin() + r), y0(sol.begin() + r, sol.end());
        Scalar t = Scalar::t_var();
        Scalar eta = Scalar::one(field_Qt());
        for (int i = j - 1; i >= -1; --i) {
            // eta_i = gamma_{i+1} ... gamma_{j-1}
            Vec corr = composite(vt, 0, anchors[i + 1]).apply(y0);
            x_anchor[i + 1] = vec_sub(x_anchor[i + 1], vec_scale(t * eta, corr));
            if (i >= 0) eta = eta * gamma[i];
        }
        x_anchor[j + 1] = vec_sub(cand, vec_scale(t, y1));
    }

    // assemble the window generators from the anchors
    SubrepLine out;
    out.lo = 0;
    out.x.assign(d + 1, Vec());
    for (int i = 0; i <= sinks[0]; ++i) out.x[i] = composite(vt, 0, i).apply(x_anchor[0]);
    for (int j = 0; j <= l; ++j) {
        int to = (j == l) ? d : sinks[j + 1];
        for (int i = sinks[j]; i <= to; ++i) {
            Vec cand = composite(vt, anchors[j + 1], i).apply(x_anchor[j + 1]);
            if (!out.x[i].empty()) {
                if (!(out.x[i] == cand))
                    throw std::logic_error("lift seams disagree after correction");
            } else {
                out.x[i] = cand;
            }
        }
    }
    validate_line(vt, out);
    for (int i = 0; i <= d; ++i) {
        Vec z = spec0(out.at(i));
        if (vec_is_zero(z) || !wedge_vanishes(z, w.at(i)))
            throw std::logic_error("lift does not specialize to the input point");
    }
    return out;
}

std::vector<HilbertCell> hilbert_report(const ZRep& v, int r, const std::vector<int>& box,
                                        PairMode mode, bool parallel, long max_cells,
                                        const HilbertBounds& bounds) {
    int n = v.window_len();
    if (static_cast<int>(box.size()) != n)
        throw ContractViolation("degree box length does not match the window");
    long cells = 1;
    for (int b : box) {
        if (b < 0) throw ContractViolation("negative box bound");
        if (b > bounds.max_degree)
            throw SizeBoundExceeded("degree box exceeds the per-coordinate bound");
        cells *= b + 1;
        if (cells > max_cells) throw SizeBoundExceeded("degree box exceeds the cell bound");
    }
    MultiGradedIdeal I = plucker_generators(v, mode);

    std::vector<std::vector<int>> degrees;
    std::vector<int> cur(n, 0);
    for (long c = 0; c < cells; ++c) {
        long rem = c;
        for (int k = n - 1; k >= 0; --k) {
            cur[k] = static_cast<int>(rem % (box[k] + 1));
            rem /= box[k] + 1;
        }
        degrees.push_back(cur);
    }
    std::vector<long> computed(cells, 0);
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#else
    (void)parallel;
#endif
    for (long c = 0; c < cells; ++c) {
        try {
            computed[c] = hilbert_function(I, degrees[c], bounds);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    auto flat = [&](const std::vector<int>& deg) {
        long idx = 0;
        for (int k = 0; k < n; ++k) idx = idx * (box[k] + 1) + deg[k];
        return idx;
    };
    std::vector<HilbertCell> out;
    for (long c = 0; c < cells; ++c) {
        HilbertCell cell;
        cell.degree = degrees[c];
        cell.computed = computed[c];
        cell.expected = expected_hilbert(r, degrees[c]);
        cell.equal = cell.computed == cell.expected;
        // stable: r-th differences vanish along every axis line through the
        // degree (needs at least r+1 samples per line)
        cell.stable = true;
        for (int k = 0; k < n && cell.stable; ++k) {
            int len = box[k] + 1;
            if (len < r + 1) {
                cell.stable = false;
                break;
            }
            std::vector<long> line;
            std::vector<int> deg = degrees[c];
            for (int x = 0; x < len; ++x) {
                deg[k] = x;
                line.push_back(computed[flat(deg)]);
            }
            for (int order = 0; order < r; ++order) {
                std::vector<long> next;
                for (size_t i = 0; i + 1 < line.size(); ++i) next.push_back(line[i + 1] - line[i]);
                line = std::move(next);
            }
            for (long x : line)
                if (x != 0) cell.stable = false;
        }
        out.push_back(cell);
    }
    return out;
}

}  // namespace zchain
