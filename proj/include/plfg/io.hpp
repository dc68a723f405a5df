#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "plfg/groupcore.hpp"

namespace plfg {

// Input error carrying the 1-based line number of the offending token.
struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(int line_, const std::string& msg);
};

// Group input text, two forms ('#' starts a comment, blank lines ignored):
//
//   cayley                 perm
//   <n>                    <points>
//   <n*n indices>          <one generator per line, image notation "0 2 1 3">
//
// The cayley table may break lines anywhere; element 0 must be the identity.
FiniteGroup parse_group_text(const std::string& text, bool strict = false,
                             int cap = 512);
FiniteGroup parse_group_file(const std::string& path, bool strict = false,
                             int cap = 512);

using Json = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;

// A fresh report with the format_version header and the verb echoed.
Json new_report(const std::string& verb);

// Canonical serialization: 2-space indent plus trailing newline. Reports are
// byte-identical across runs once the "timing" subtree is removed.
std::string report_text(const Json& rep);
void write_report(const Json& rep, const std::string& path);

// Copy with the top-level "timing" field removed, for determinism checks.
Json without_timing(Json rep);

// Stable 64-bit FNV-1a content hash as a hex string.
std::string content_hash(const std::string& data);

// One-file-per-key JSON store guarded by a lock file; writers write a temp
// file and rename it into place, so readers never observe partial content.
class ReportCache {
 public:
  explicit ReportCache(std::string dir);
  std::optional<Json> load(const std::string& key) const;
  void store(const std::string& key, const Json& value) const;
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
};

}  // namespace plfg
