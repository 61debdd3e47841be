#ifndef ZCHAIN_JSON_IO_HPP
#define ZCHAIN_JSON_IO_HPP

#include <json.hpp>

#include "curve.hpp"
#include "hilbert.hpp"
#include "strata.hpp"

namespace zchain {

// All emission uses ordered_json so key order is stable and output is
// byte-reproducible.
using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, FieldSpec fs);

Json rep_to_json(const ZRep& v);
ZRep rep_from_json(const Json& j);

Json line_to_json(const SubrepLine& w);
SubrepLine line_from_json(const Json& j, FieldSpec fs);

Json profile_to_json(const ArrowProfile& p);

Json cell_to_json(const StratumCell& cell);

// {profile, exact, nonempty, cell?, count_poly?, oracle_count?}
Json stratum_report(const ArrowProfile& p, const TypeVector& r);

Json hilbert_cells_to_json(const TypeVector& r, const std::vector<HilbertCell>& cells);

Json rr_report_to_json(const RRReport& r);

ProfileFixture fixture_from_json(const Json& j);

// Component poset: nodes are the component profiles plus their pairwise
// meets, edges the transitive reduction of the closure order, labels carry
// the count polynomials of the exact nodes.
std::string component_poset_dot(const ZRep& v);

Json parse_json_file(const std::string& path);

}  // namespace zchain

#endif
