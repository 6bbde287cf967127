#pragma once

// JSON-compatible presentation documents. Rationals are "p/q" strings, classes are polynomial
// expression strings such as "1 + 3/2*h + h^2" over the ring's generator names.

#include <string>
#include <string_view>

#include "equiloc/model.hpp"

namespace equiloc {

// Throws ParseError (syntax, with line/column) or ValidationError (semantic diagnostics).
ManifoldPresentation parse_document(std::string_view text);
// Canonical form: keys sorted, rationals reduced, terms in graded-lex order, trailing newline.
std::string serialize_document(const ManifoldPresentation& p);

GradedElement parse_expression(std::string_view text, const RingPtr& ring);
std::string format_expression(const GradedElement& a);
std::string format_monomial(const Monomial& mono, const RingSpec& ring);

}  // namespace equiloc
