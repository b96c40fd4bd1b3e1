#pragma once

#include "lambdav/surface.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lambdav::detail {

enum class Tok {
  Ident,  // lower-case identifier
  Upper,  // constructor
  Nat,
  Str,    // text keeps its quotes
  SymLit, // text without the leading quote
  Keyword,
  Punct,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

std::vector<Token> lex(std::string_view source);

} // namespace lambdav::detail
