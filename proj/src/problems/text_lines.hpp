#pragma once

// Line-oriented reader shared by the instance parsers.

#include <sstream>
#include <string>
#include <vector>

#include "mls/error.hpp"

namespace mls::detail {

struct TextLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

/// Splits text into whitespace-tokenized lines, dropping blank lines and
/// lines whose first token starts with one of `comment_leaders`.
inline std::vector<TextLine> tokenize_lines(const std::string& text, const std::string& comment_leaders) {
  std::vector<TextLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (comment_leaders.find(tokens[0][0]) != std::string::npos) continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

inline long long parse_int(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseFailure(ErrorCode::ParseError, line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseFailure(ErrorCode::ParseError, line, "expected an integer, got '" + tok + "'");
  return v;
}

/// Reads "p <kind> <ints...>" and returns the integers.
inline std::vector<long long> parse_header(const TextLine& line, const std::string& kind, std::size_t count) {
  if (line.tokens.size() != count + 2 || line.tokens[0] != "p" || line.tokens[1] != kind)
    throw ParseFailure(ErrorCode::ParseError, line.number, "expected header 'p " + kind + "' with " +
                                                               std::to_string(count) + " integer field(s)");
  std::vector<long long> out;
  for (std::size_t i = 2; i < line.tokens.size(); ++i) out.push_back(parse_int(line.tokens[i], line.number));
  return out;
}

inline int checked_universe(long long n, std::size_t line) {
  if (n < 0 || n > 64) throw ParseFailure(ErrorCode::TooLarge, line, "universe size must be in [0, 64]");
  return static_cast<int>(n);
}

}  // namespace mls::detail
