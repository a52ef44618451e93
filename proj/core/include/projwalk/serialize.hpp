#pragma once

#include <string>

#include "projwalk/empirical.hpp"
#include "projwalk/ensemble.hpp"
#include "projwalk/transfer.hpp"

namespace projwalk {

// Shortest exact decimal form of a double (17 significant digits); every
// value written by the savers round-trips bit-exactly through the loaders.
std::string format_double(double v);
// Exact decimal-to-double conversion; throws FormatError on trailing junk.
double parse_double(const std::string& token, long line_number);

// Ensemble definition files: `d`, `variant`, then matrix/generator lines
// each followed by its `prob`. See docs/formats.md for the grammar.
MatrixEnsemble load_ensemble(const std::string& path);
void save_ensemble(const std::string& path, const MatrixEnsemble& ensemble);

// Weighted point clouds, one `point = <d coords> <weight>` line per atom.
// Loading validates the weight sum and re-serialization is byte-identical.
EmpiricalMeasure load_measure(const std::string& path);
void save_measure(const std::string& path, const EmpiricalMeasure& measure);

// Grid eigentriples with their grid spec; arrays in decimal, exact reload.
SpectralResult load_spectral(const std::string& path);
void save_spectral(const std::string& path, const SpectralResult& spec);

}  // namespace projwalk
