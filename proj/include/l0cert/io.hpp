#pragma once

#include "l0cert/certificates.hpp"
#include "l0cert/homotopy.hpp"
#include "l0cert/oracle.hpp"
#include "l0cert/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace l0cert::io {

using nlohmann::json;

/// n rows of m comma-separated reals. `header` skips the first line. Blank lines
/// are ignored. Throws ParseError with the 1-based line number.
Matrix read_matrix_csv(std::istream& in, bool header = false);
Matrix read_matrix_csv(const std::filesystem::path& path, bool header = false);

/// One real per line.
Vector read_vector_csv(std::istream& in, bool header = false);
Vector read_vector_csv(const std::filesystem::path& path, bool header = false);

/// 17 significant digits per entry.
void write_matrix_csv(std::ostream& out, const Matrix& a);
void write_vector_csv(std::ostream& out, const Vector& v);

/// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

json to_json(const Support& s);          // 1-based index list
json to_json(const Vector& v);
json to_json(const Certificate& c);
json to_json(const PathSegment& seg);
json to_json(const LassoPath& path);
json to_json(const OracleResult& oracle);
json to_json(const SupportCertificates& sc);
json tables_to_json(const SigmaMinTable& sigma, const PseudoInverseGapTable* gap, int max_multiplier);

const char* to_string(EventType type);

}  // namespace l0cert::io
