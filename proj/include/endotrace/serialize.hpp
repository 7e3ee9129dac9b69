#pragma once

// JSON text formats for curves, chains and trace results. Field elements
// are arrays of decimal-string coordinates over Fp, polynomials are arrays
// of field elements with the constant term first. Parsing rejects anything
// that would not serialize back to the same bytes (leading zero
// coefficients, out-of-range coordinates, a foreign tower).
//
//   curve: {"p": "431", "tower": [["1", "0", "1"]], "A": [..], "B": [..]}
//   chain: {"curve": <curve>, "steps": [{"A", "B", "u", "v", "s", "t", "c"}]}
//
// A and B of a step are its codomain; the domain is the previous codomain.

#include <string>

#include "endotrace/trace.hpp"

namespace endotrace {

std::string curve_to_json(const Fp2Curve& E);
Fp2Curve curve_from_json(const std::string& text);

std::string chain_to_json(const Chain& chain);
// Steps are taken as written (s and t are not recomputed); structural
// checks are left to chain_validate / verify_chain.
Chain chain_from_json(const std::string& text);

std::string trace_result_to_json(const TraceResult& r);

}  // namespace endotrace
