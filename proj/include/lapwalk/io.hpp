#pragma once

// Text formats.
//
// Edge list:  "n <count>" header, then one "u v w" per line (1-based, w
//             optional and defaulting to 1). '#' starts a comment.
// Matrix:     CSV, one row per line.
// Vector:     a JSON array, or CSV values separated by commas and/or newlines.
// Forces:     a JSON array of rows (or a flat array for d = 1), or CSV with
//             one row per mass.
//
// Parse failures throw FormatError with a "source:line:col: " prefix.

#include <lapwalk/graph.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace lapwalk::io {

WeightedGraph parse_edge_list(std::string_view text, const std::string& source = "<input>");
Matrix parse_csv_matrix(std::string_view text, const std::string& source = "<input>");
Vector parse_vector(std::string_view text, const std::string& source = "<input>");
Matrix parse_forces(std::string_view text, const std::string& source = "<input>");

/// Reads the whole file; FormatError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

WeightedGraph read_edge_list(const std::filesystem::path& path);
Matrix read_csv_matrix(const std::filesystem::path& path);
Vector read_vector(const std::filesystem::path& path);
Matrix read_forces(const std::filesystem::path& path);

/// CSV with 17 significant digits per entry.
std::string format_csv(const Matrix& m);
std::string format_edge_list(const WeightedGraph& g);

}  // namespace lapwalk::io
