#include "plfg/io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

namespace plfg {

ParseError::ParseError(int line_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
      line(line_) {}

namespace {

struct Token {
  std::string text;
  int line;
};

// '#' comments run to end of line; tokens are whitespace-separated.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  bool comment = false;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({cur, line});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
    } else if (comment) {
      // skip
    } else if (c == '#') {
      flush();
      comment = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

int parse_int(const Token& t, const char* what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(t.text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != t.text.size())
    throw ParseError(t.line, std::string(what) + ": expected an integer, got '" +
                                 t.text + "'");
  return v;
}

FiniteGroup parse_cayley(const std::vector<Token>& toks, size_t i, bool strict) {
  if (i >= toks.size())
    throw ParseError(toks.empty() ? 1 : toks.back().line,
                     "cayley: missing order");
  int n = parse_int(toks[i], "cayley order");
  if (n <= 0) throw ParseError(toks[i].line, "cayley: order must be positive");
  ++i;
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (i >= toks.size())
        throw ParseError(toks.back().line,
                         "cayley: table ends at cell (" + std::to_string(r) +
                             "," + std::to_string(c) + "); expected " +
                             std::to_string(n * n) + " entries");
      int v = parse_int(toks[i], "cayley cell");
      if (v < 0 || v >= n)
        throw ParseError(toks[i].line,
                         "cayley: cell (" + std::to_string(r) + "," +
                             std::to_string(c) + ") value " +
                             std::to_string(v) + " out of range 0.." +
                             std::to_string(n - 1));
      table[static_cast<size_t>(r) * n + c] = v;
      ++i;
    }
  if (i < toks.size())
    throw ParseError(toks[i].line,
                     "cayley: trailing input after the table: '" +
                         toks[i].text + "'");
  return FiniteGroup(std::move(table), n, strict);
}

FiniteGroup parse_perm(const std::vector<Token>& toks, size_t i, int cap) {
  if (i >= toks.size())
    throw ParseError(toks.empty() ? 1 : toks.back().line,
                     "perm: missing point count");
  int m = parse_int(toks[i], "perm point count");
  if (m <= 0) throw ParseError(toks[i].line, "perm: point count must be positive");
  ++i;
  // each generator occupies one source line
  std::vector<Perm> gens;
  while (i < toks.size()) {
    int line = toks[i].line;
    Perm g;
    while (i < toks.size() && toks[i].line == line) {
      int v = parse_int(toks[i], "perm image");
      if (v < 0 || v >= m)
        throw ParseError(toks[i].line, "perm: image " + std::to_string(v) +
                                           " out of range 0.." +
                                           std::to_string(m - 1));
      g.push_back(v);
      ++i;
    }
    if (static_cast<int>(g.size()) != m)
      throw ParseError(line, "perm: generator has " +
                                 std::to_string(g.size()) + " images, expected " +
                                 std::to_string(m));
    std::vector<bool> seen(m, false);
    for (int v : g) {
      if (seen[v])
        throw ParseError(line,
                         "perm: image " + std::to_string(v) + " repeated");
      seen[v] = true;
    }
    gens.push_back(std::move(g));
  }
  if (gens.empty())
    throw ParseError(toks.back().line, "perm: no generators given");
  return FiniteGroup::from_generators(m, gens, cap);
}

}  // namespace

FiniteGroup parse_group_text(const std::string& text, bool strict, int cap) {
  std::vector<Token> toks = tokenize(text);
  if (toks.empty()) throw ParseError(1, "empty group input");
  if (toks[0].text == "cayley") return parse_cayley(toks, 1, strict);
  if (toks[0].text == "perm") return parse_perm(toks, 1, cap);
  throw ParseError(toks[0].line,
                   "expected 'cayley' or 'perm', got '" + toks[0].text + "'");
}

FiniteGroup parse_group_file(const std::string& path, bool strict, int cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open group file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_text(ss.str(), strict, cap);
}

Json new_report(const std::string& verb) {
  Json rep;
  rep["format_version"] = kReportFormatVersion;
  rep["verb"] = verb;
  return rep;
}

std::string report_text(const Json& rep) { return rep.dump(2) + "\n"; }

void write_report(const Json& rep, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << report_text(rep);
}

Json without_timing(Json rep) {
  rep.erase("timing");
  return rep;
}

std::string content_hash(const std::string& data) {
  uint64_t h = 14695981039346656037ull;  // FNV-1a offset basis
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;  // FNV prime
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

ReportCache::ReportCache(std::string dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<Json> ReportCache::load(const std::string& key) const {
  std::ifstream in(dir_ + "/" + key + ".json", std::ios::binary);
  if (!in) return std::nullopt;
  Json v = Json::parse(in, nullptr, false);
  if (v.is_discarded()) return std::nullopt;
  return v;
}

void ReportCache::store(const std::string& key, const Json& value) const {
  const std::string lock = dir_ + "/lock";
  int fd = -1;
  for (int attempt = 0; attempt < 500; ++attempt) {
    fd = ::open(lock.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd >= 0) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (fd < 0) throw std::runtime_error("cache lock is stuck: " + lock);
  ::close(fd);
  try {
    const std::string tmp = dir_ + "/" + key + ".tmp";
    write_report(value, tmp);
    std::filesystem::rename(tmp, dir_ + "/" + key + ".json");
  } catch (...) {
    std::filesystem::remove(lock);
    throw;
  }
  std::filesystem::remove(lock);
}

}  // namespace plfg
