#pragma once

#include <iosfwd>
#include <string>

#include "kpo/observables.hpp"
#include "kpo/scenarios.hpp"

namespace kpo {

/// `# key=value` metadata lines, one header row, then rows of %.17g values
/// separated by commas. LF line endings; NaN is written as "nan".
void write_csv(std::ostream& out, const SeriesTable& table);
void write_csv(const std::string& path, const SeriesTable& table);

/// Inverse of write_csv. Throws InvalidArgument on malformed input.
SeriesTable read_csv(std::istream& in);
SeriesTable read_csv_file(const std::string& path);

/// Wigner grid as x,y,w triples, x slowest.
void write_wigner_csv(std::ostream& out, const WignerGrid& grid, const ParamList& meta = {});
void write_wigner_csv(const std::string& path, const WignerGrid& grid, const ParamList& meta = {});

std::string format_double(double v);

}  // namespace kpo
