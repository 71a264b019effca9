#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skew/ring.hpp"

namespace skew {

/// Laurent terms as read from or written to text: exponent → nonzero coefficient.
struct TermList {
    std::map<int, Element> terms;
    /// Exponents ≥ bound are unknown; std::nullopt means exact.
    std::optional<int> bound;
};

/// Parses `term (('+'|'-') term)*` with `term := coeff '*' 't^' int | coeff | 't^' int | 'O(t^' int ')'`
/// and `coeff` a basis combination such as `3x+2` or `(3x+2)`. Whitespace is ignored.
TermList parse_terms(const CoefficientRing& R, const std::string& text);
/// Parses a coefficient ring element.
Element parse_coefficient(const CoefficientRing& R, const std::string& text);
/// The same grammar over bare coordinates, for rings still being defined.
Element parse_coefficient(const Modulus& mod, const std::vector<std::string>& names, const Element& one,
                          const std::string& text);

/// Prints terms by descending exponent and ascending basis index; a coordinate v with
/// 2v ≥ q (q > 2) is printed as −(q − v). The output parses back to the same terms.
std::string format_terms(const CoefficientRing& R, const TermList& terms);
std::string format_coefficient(const CoefficientRing& R, const Element& a);

}  // namespace skew
