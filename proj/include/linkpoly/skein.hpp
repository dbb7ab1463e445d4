#pragma once

// Reference values of R and D computed straight from the skein axioms by
// switching crossings towards a descending diagram.

#include "linkpoly/algebra.hpp"
#include "linkpoly/diagram.hpp"

namespace linkpoly {

/// Homflypt polynomial over {z, a}; the diagram must be oriented.
LaurentPoly r_poly(const Diagram& d);
LaurentPoly r_poly(const CompactDiagram& c);

/// Dubrovnik polynomial over {z, a}; orientation, if any, is ignored.
LaurentPoly d_poly(const Diagram& d);
LaurentPoly d_poly(const CompactDiagram& c);

/// Kauffman bracket over {A} by a plain 2^n state sum, normalized to 1 on
/// the unknot.
LaurentPoly kauffman_bracket(const Diagram& d);

/// Loop values used by the oracle: delta = (a - a^-1) z^-1, mu = delta + 1.
LaurentPoly skein_delta();
LaurentPoly skein_mu();

/// Crossing sign inside a compact oriented diagram.
int compact_sign(const CompactDiagram& c, int vertex);

std::size_t skein_memo_size();
void clear_skein_memo();

}  // namespace linkpoly
