#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pdmeans/means.hpp"

namespace pdmeans {

/// A weighted tuple as stored on disk.
struct WeightedTuple {
  WeightVector weights;
  PDTuple matrices;
};

/// Matrix document: {"dim": m, "entries": [[[re, im], ...], ...]} (row major).
/// A plain number is accepted for a real entry. Malformed documents raise
/// ParseError; non-Hermitian or indefinite matrices raise DomainError.
HermitianMatrix parse_hermitian(std::string_view json_text);
PDMatrix parse_pd_matrix(std::string_view json_text);

/// Tuple document: {"weights": [...], "matrices": [<matrix document>, ...]}.
/// "weights" may be omitted, meaning uniform weights.
WeightedTuple parse_tuple(std::string_view json_text);

/// Serializations with 17 significant digits per number, one matrix row per line.
std::string format_matrix(const Matrix& m);
std::string format_tuple(const WeightVector& w, const PDTuple& tuple);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

PDMatrix read_pd_matrix_file(const std::filesystem::path& path);
WeightedTuple read_tuple_file(const std::filesystem::path& path);

}  // namespace pdmeans
