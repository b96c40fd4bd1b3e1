#include "lexer.hpp"

#include <array>
#include <cctype>

namespace lambdav::detail {

namespace {

constexpr std::array keywords = {"def",  "let",  "in",   "if",    "then",
                                 "else", "case", "of",   "for",   "join",
                                 "bot",  "top",  "botv", "true",  "false",
                                 "succ"};

// Longest first.
constexpr std::array puncts = {"\\/", "::", "->", "==", "<=", ">=", "&&",
                               "||",  "(",  ")",  "{",  "}",  "[",  "]",
                               ",",   "=",  "\\", ".",  "|",  "+",  "<",
                               ">"};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

} // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Nat, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (identStart(c)) {
      std::size_t j = i;
      while (j < src.size() && identChar(src[j]))
        ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Ident;
      for (const char *k : keywords)
        if (word == k)
          kind = Tok::Keyword;
      out.push_back({kind, word, loc});
      advance(j - i);
      continue;
    }
    if (c == '\'') {
      std::size_t j = i + 1;
      while (j < src.size() && identChar(src[j]) && src[j] != '\'')
        ++j;
      if (j == i + 1)
        throw ParseError(loc, "expected a symbol name after '");
      out.push_back({Tok::SymLit, std::string(src.substr(i + 1, j - i - 1)), loc});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] == '\\' && j + 1 < src.size())
          ++j;
        ++j;
      }
      if (j >= src.size() || src[j] != '"')
        throw ParseError(loc, "unterminated string literal");
      out.push_back({Tok::Str, std::string(src.substr(i, j - i + 1)), loc});
      advance(j - i + 1);
      continue;
    }
    // Unicode spellings of the join and lambda.
    if (src.substr(i, 3) == "∨") {
      out.push_back({Tok::Punct, "\\/", loc});
      advance(3);
      continue;
    }
    if (src.substr(i, 2) == "λ") {
      out.push_back({Tok::Punct, "\\", loc});
      advance(2);
      continue;
    }
    bool matched = false;
    for (std::string_view p : puncts) {
      if (src.substr(i, p.size()) == p) {
        out.push_back({Tok::Punct, std::string(p), loc});
        advance(p.size());
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError(loc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

} // namespace lambdav::detail
