#pragma once

#include "affinecert/pingpong.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace affinecert {

using Json = nlohmann::ordered_json;

/// One element per line, "a11 a12 a21 a22 | tx ty"; '#' starts a comment.
std::vector<AffineElement> parse_generating_set(const std::string& text);
std::vector<AffineElement> load_generating_set(const std::string& path);
std::string format_generating_set(const std::vector<AffineElement>& s);

/// FNV-1a 64-bit hash of raw input bytes, as a fixed-width hex string.
std::string content_hash(const std::string& text);

std::string read_file(const std::string& path);
/// Write via temp file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

Json to_json(const Rat& r);
Json to_json(const RatInterval& iv);
Json to_json(const QuadNumber& x);
Json to_json(const Inequality& iq);
Json to_json(const TableParams& p);
Json to_json(const PipelineConfig& cfg);
Json to_json(const FreePairCertificate& cert);

Rat rat_from_json(const Json& j);
RatInterval interval_from_json(const Json& j);
Inequality inequality_from_json(const Json& j);
TableParams params_from_json(const Json& j);
PipelineConfig config_from_json(const Json& j);
/// Inverse of to_json(FreePairCertificate); throws FormatError on version mismatch.
FreePairCertificate certificate_from_json(const Json& j);

/// Wrap a payload in the common document envelope (kind, version, config, input hash).
Json make_document(const std::string& kind, const PipelineConfig& cfg, const std::string& input_text,
                   Json payload);
/// Unwrap; checks kind and format version.
Json open_document(const Json& doc, const std::string& kind);

}  // namespace affinecert
