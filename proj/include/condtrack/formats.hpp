#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "condtrack/homotopy.hpp"
#include "condtrack/polysys.hpp"
#include "condtrack/tracker.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// System text format: {"n": ..., "degrees": [...], "equations":
/// [[{"exponents": [...], "coeff_re": ..., "coeff_im": ...}, ...], ...]}.
/// Round-trips bit-exactly (numbers carry their full binary value).
nlohmann::json system_to_json(const HomogeneousSystem& f);
HomogeneousSystem system_from_json(const nlohmann::json& j);

HomogeneousSystem load_system(const std::string& path);
void save_system(const std::string& path, const HomogeneousSystem& f);

/// Start-pair file: {"system": <system>, "zeros": [[[re, im], ...], ...]}.
nlohmann::json start_pair_to_json(const StartPair& pair);
StartPair start_pair_from_json(const nlohmann::json& j);
StartPair load_start_pair(const std::string& path);
void save_start_pair(const std::string& path, const StartPair& pair);

nlohmann::json certificate_to_json(const AlphaCertificate& cert);
nlohmann::json tracking_result_to_json(const TrackingResult& result);

/// Parses "re", "re+imi", "re-imi", "imi", "i" component lists like
/// "1,0.5-2i,3i" into a complex vector.
CVec parse_complex_list(const std::string& text);

/// FNV-1a 64-bit digest, hex encoded; used to fingerprint input files in
/// run reports.
std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace condtrack
