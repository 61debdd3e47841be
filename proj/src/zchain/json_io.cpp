#include "json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace zchain {

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<std::string> entries;
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) entries.push_back(m.at(i, k).str());
    j["entries"] = entries;
    return j;
}

Matrix matrix_from_json(const Json& j, FieldSpec fs) {
    try {
        int rows = j.at("rows").get<int>();
        int cols = j.at("cols").get<int>();
        std::vector<std::string> entries = j.at("entries").get<std::vector<std::string>>();
        if (static_cast<int>(entries.size()) != rows * cols)
            throw ParseError("matrix entry count does not match shape");
        std::vector<Scalar> e;
        for (const std::string& s : entries) e.push_back(Scalar::parse(fs, s));
        if (e.empty()) return Matrix(rows, cols, fs);
        return Matrix(rows, cols, e);
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad matrix JSON: ") + ex.what());
    }
}

Json rep_to_json(const ZRep& v) {
    Json j;
    j["field"] = v.field().str();
    j["window"] = {v.lo(), v.hi()};
    j["dims"] = v.dims();
    Json fwd = Json::array(), bwd = Json::array();
    for (const auto& m : v.fwd_raw()) fwd.push_back(matrix_to_json(m));
    for (const auto& m : v.bwd_raw()) bwd.push_back(matrix_to_json(m));
    j["fwd"] = fwd;
    j["bwd"] = bwd;
    j["tails"] = {{"left", tail_str(v.left_tail())}, {"right", tail_str(v.right_tail())}};
    return j;
}

ZRep rep_from_json(const Json& j) {
    try {
        FieldSpec fs = parse_field(j.at("field").get<std::string>());
        std::vector<int> window = j.at("window").get<std::vector<int>>();
        if (window.size() != 2) throw ParseError("window must be [lo, hi]");
        std::vector<int> dims = j.at("dims").get<std::vector<int>>();
        if (static_cast<int>(dims.size()) != window[1] - window[0] + 1)
            throw ParseError("dims length does not match the window");
        std::vector<Matrix> fwd, bwd;
        for (const auto& m : j.at("fwd")) fwd.push_back(matrix_from_json(m, fs));
        for (const auto& m : j.at("bwd")) bwd.push_back(matrix_from_json(m, fs));
        TailKind left = parse_tail(j.at("tails").at("left").get<std::string>());
        TailKind right = parse_tail(j.at("tails").at("right").get<std::string>());
        return ZRep(fs, window[0], dims, fwd, bwd, left, right);
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad representation JSON: ") + ex.what());
    }
}

Json line_to_json(const SubrepLine& w) {
    Json j;
    j["window"] = {w.lo, w.hi()};
    Json vecs = Json::array();
    for (const Vec& v : w.x) {
        std::vector<std::string> entries;
        for (const Scalar& s : v) entries.push_back(s.str());
        vecs.push_back(entries);
    }
    j["vectors"] = vecs;
    return j;
}

SubrepLine line_from_json(const Json& j, FieldSpec fs) {
    try {
        std::vector<int> window = j.at("window").get<std::vector<int>>();
        SubrepLine w;
        w.lo = window.at(0);
        for (const auto& vj : j.at("vectors")) {
            Vec v;
            for (const auto& s : vj) v.push_back(Scalar::parse(fs, s.get<std::string>()));
            w.x.push_back(v);
        }
        return w;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad point JSON: ") + ex.what());
    }
}

Json profile_to_json(const ArrowProfile& p) {
    Json j;
    j["window"] = {p.lo, p.hi};
    j["bits"] = p.str();
    j["sinks"] = p.sinks();
    j["sources"] = p.sources();
    j["exact"] = p.is_exact();
    return j;
}

Json cell_to_json(const StratumCell& cell) {
    Json j;
    j["sinks"] = cell.sinks;
    j["sources"] = cell.sources;
    j["proj_dims"] = cell.proj_dims;
    j["affine_exps"] = cell.affine_exps;
    j["torus"] = cell.torus;
    return j;
}

Json stratum_report(const ArrowProfile& p, const TypeVector& r) {
    Json j;
    j["profile"] = p.str();
    j["exact"] = p.is_exact();
    bool nonempty = p.is_exact() && stratum_nonempty(p, r);
    j["nonempty"] = nonempty;
    if (nonempty) {
        StratumCell cell = cell_structure(p, r);
        j["cell"] = cell_to_json(cell);
        j["count_poly"] = count_poly(cell).str();
    }
    return j;
}

Json hilbert_cells_to_json(const TypeVector& r, const std::vector<HilbertCell>& cells) {
    Json out = Json::array();
    for (const HilbertCell& c : cells) {
        Json j;
        j["r_vector"] = r.r;
        j["degree"] = c.degree;
        j["computed"] = c.computed;
        j["expected"] = c.expected;
        j["equal"] = c.equal;
        j["stable_flag"] = c.stable;
        out.push_back(j);
    }
    return out;
}

Json rr_report_to_json(const RRReport& r) {
    Json j;
    j["frak_h0"] = r.h0;
    j["frak_h1"] = r.h1;
    j["deg"] = r.deg;
    j["g"] = r.g;
    j["h0_exact"] = r.h0_exact;
    j["h1_exact"] = r.h1_exact;
    j["h0_minus_h1"] = r.h0 - r.h1;
    j["deg_minus_g_plus_1"] = r.deg - r.g + 1;
    j["riemann_ok"] = r.riemann_ok;
    j["rr_applicable"] = r.rr_applicable;
    if (r.rr_applicable) j["rr_ok"] = r.rr_ok;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

ProfileFixture fixture_from_json(const Json& j) {
    try {
        ProfileFixture fix;
        fix.gY = j.at("g_Y").get<int>();
        fix.gZ = j.at("g_Z").get<int>();
        fix.deg = j.at("deg").get<int>();
        std::vector<int> md = j.at("multidegree").get<std::vector<int>>();
        fix.multideg = {md.at(0), md.at(1)};
        fix.note = j.value("note", std::string());
        fix.bundle_rep = rep_from_json(j.at("bundle"));
        fix.dual_rep = rep_from_json(j.at("serre_dual"));
        return fix;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad fixture JSON: ") + ex.what());
    }
}

std::string component_poset_dot(const ZRep& v) {
    std::vector<ArrowProfile> comps = components(v);
    std::vector<ArrowProfile> nodes = comps;
    for (size_t i = 0; i < comps.size(); ++i)
        for (size_t j = i + 1; j < comps.size(); ++j) {
            ArrowProfile m = meet(comps[i], comps[j]);
            if (std::find(nodes.begin(), nodes.end(), m) == nodes.end()) nodes.push_back(m);
        }
    std::sort(nodes.begin(), nodes.end());

    // count polynomials for the component labels
    MaybeInterval cos = cosupport_interval(is_colinked(v) == Tri::True ? v : dual(v));
    TypeVector r = classify(v);
    auto label = [&](const ArrowProfile& p) {
        std::string s = p.str();
        if (p.is_exact()) {
            ArrowProfile anchored = p;
            anchored.lo -= cos.lo;
            anchored.hi -= cos.lo;
            if (stratum_nonempty(anchored, r))
                s += "\\n" + count_poly(cell_structure(anchored, r)).str();
        }
        return s;
    };
    std::ostringstream os;
    os << "digraph components {\n  rankdir=BT;\n";
    for (size_t i = 0; i < nodes.size(); ++i) {
        bool is_comp = std::find(comps.begin(), comps.end(), nodes[i]) != comps.end();
        os << "  n" << i << " [label=\"" << label(nodes[i]) << "\""
           << (is_comp ? ", shape=box" : ", shape=ellipse") << "];\n";
    }
    // transitive reduction of the pointwise order
    auto leq = [&](size_t a, size_t b) { return closure_leq(nodes[a], nodes[b]); };
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = 0; b < nodes.size(); ++b) {
            if (a == b || !leq(a, b)) continue;
            bool covered = false;
            for (size_t c = 0; c < nodes.size() && !covered; ++c)
                if (c != a && c != b && leq(a, c) && leq(c, b)) covered = true;
            if (!covered) os << "  n" << a << " -> n" << b << ";\n";
        }
    os << "}\n";
    return os.str();
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + ex.what());
    }
}

}  // namespace zchain
