#pragma once

#include <string>

#include "polyclark/clark.hpp"
#include "polyclark/levelset.hpp"
#include "polyclark/multipoly.hpp"
#include "polyclark/rif.hpp"

namespace polyclark {

// Polynomial literal: {"nvars": n, "terms": [{"exp": [e1,...,en], "re": x,
// "im": y}, ...]} with nonnegative integer exponents. parse_poly throws
// std::invalid_argument with a JSON-pointer-style location on malformed
// input.
MultiPoly parse_poly(const std::string& json_text);
std::string poly_to_json(const MultiPoly& p);

// {"domain": "polydisc"|"matrix_ball_2x2", "p": <literal>, "q": <literal>}
// q defaults to the constant 1 when absent.
RationalInnerFn parse_rif(const std::string& json_text, const RifOptions& opts = {});

// Measure JSON: {"alpha": [re, im], "domain": ..., "grid": ...,
//  "fibers": [{"rep": [[re,im],...], "atoms": [{"w": [re,im],
//  "point": [[re,im],...], "weight": x}]}], "metadata": {...}}
std::string measure_to_json(const SampledClarkMeasure& mu);

// CSV with one row per atom: fiber index, w, weight, then the point
// coordinates. Deterministic formatting (%.17g).
std::string atoms_to_csv(const SampledClarkMeasure& mu);

// CSV columns: theta2, re_zeta1, im_zeta1, grad_norm, density, arclen, branch
std::string level_set_to_csv(const LevelSetSample& sample);

}  // namespace polyclark
