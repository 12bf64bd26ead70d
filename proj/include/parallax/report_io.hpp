#pragma once

#include <string>

#include "parallax/analysis.hpp"
#include "parallax/stability.hpp"

namespace parallax {

/// Pretty-printed JSON with deterministic key order; +inf values are encoded
/// as the string "inf". Scale values carry radius and diameter forms side by
/// side; diameter_scale additionally doubles diagram, certificate, and
/// feature values (the parser expects the default radius form).
std::string report_to_json(const report& rep, bool diameter_scale = false);

/// Inverse of report_to_json for the radius form.
report report_from_json(const std::string& text);

bool report_equal(const report& a, const report& b);

std::string diagram_to_json(const persistence_diagram& diag, bool diameter_scale);

/// Birth/death scatter: diagonal, one marker shape per dimension, infinite
/// dots on a marked top rail.
std::string diagram_to_svg(const persistence_diagram& diag, bool diameter_scale);

std::string trials_to_json(const stability_summary& summary);

} // namespace parallax
