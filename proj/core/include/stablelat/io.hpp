#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "stablelat/frac_calc.hpp"
#include "stablelat/function_spec.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/measure_sim.hpp"

namespace stablelat {
namespace io {

/// Shortest decimal string that round-trips the exact double.
std::string format_double(double v);

/// File self-description: flat string map, serialized as a JSON object with
/// sorted keys on the file's first line ("# {...}"). Structural fields of
/// the payload are merged in under reserved dotted keys by each writer.
using Manifest = std::map<std::string, std::string>;

/// CSV with a one-line JSON manifest header. Labels are written verbatim,
/// so they must not contain commas or line breaks. All numbers round-trip
/// exactly; identical inputs give byte-identical files.
void write_sample_batch(std::ostream& os, const SampleBatch& batch, const Manifest& manifest);
SampleBatch read_sample_batch(std::istream& is, Manifest* manifest = nullptr);

/// Two-column (x, value) text, grid geometry carried in the manifest.
void write_grid_function(std::ostream& os, const GridFunction& grid, const Manifest& manifest);
GridFunction read_grid_function(std::istream& is, Manifest* manifest = nullptr);

/// Lattice coefficients; h/alpha/scheme/window travel in the manifest so a
/// file fully reconstructs the family.
void write_coefficients(std::ostream& os, const CellCoefficients& coeffs,
                        const Manifest& manifest);
CellCoefficients read_coefficients(std::istream& is, Manifest* manifest = nullptr);

/// Function specs as JSON, e.g. {"type":"gauss_bump","center":[0],"width":1}.
/// Types: indicator_box, gauss_bump, power_tail, lfsm_kernel, zero,
/// linear_combination, shift, scale. spec_to_json emits sorted keys.
std::string spec_to_json(const FunctionSpec& spec);
FunctionSpec spec_from_json(const std::string& text);

/// CLI ergonomics: inline JSON, or @path to read the JSON from a file.
FunctionSpec parse_spec_argument(const std::string& arg);

}  // namespace io
}  // namespace stablelat
