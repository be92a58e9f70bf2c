#pragma once

// File formats for knots and graded complexes: a line-oriented key/value
// text format with '#' comments, and a JSON variant with the same field
// names, accepted interchangeably (detected by a leading '{').

#include <optional>
#include <string>

#include "ski/floer.hpp"
#include "ski/knot.hpp"

namespace ski {

// Text format:
//   name trefoil
//   mirrored false        # optional, default false
//   seifert -1 1          # one line per row
//   seifert 0 -1
// JSON variant: {"name": "trefoil", "mirrored": false,
//                "seifert": [[-1,1],[0,-1]]}
SeifertKnot parse_knot(const std::string& text);
SeifertKnot load_knot(const std::string& path);

// Text format:
//   ranks 1 1 0 0
//   boundary 1 0 0 1*T^(0) - 1*T^(-1)   # section grading row col literal
//   delta1 1 0 0 1*T^(0)                # grading must be 1, row 0
//   delta2 2 0 0 1*T^(0)                # grading must be 2, col 0
//   u 3 0 0 1*T^(0)
//   endo 0 0 0 1*T^(0)                  # optional section
// JSON variant: {"ranks": [..], "boundary": [[g,r,c,"lit"], ...], ...}
// Unstated entries are zero; the endomorphism is present only if the file
// has an `endo` section.
struct ComplexFile {
    GradedComplex complex;
    std::optional<CobordismEndomorphism> endo;
};

ComplexFile parse_complex(const std::string& text);
ComplexFile load_complex(const std::string& path);

} // namespace ski
