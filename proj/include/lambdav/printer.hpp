#pragma once

#include "lambdav/expr.hpp"

#include <iosfwd>
#include <string>

namespace lambdav {

// Core syntax, readable back by the surface parser:
//   bot top botv x \x. e (e, e) 'sym "str" () true false {e, ...} e e
//   let (x, y) = e in e   let 'sym = e in e   for x in e join e   e \/ e
std::string printCore(const Expr &e);

// Observation syntax for results: numerals, lists, records and strings are
// shown in their source form, set elements are sorted, ⊥/⊤/⊥_v use their
// mathematical glyphs. Lambdas that are not records fall back to printCore.
std::string printResult(const Expr &r);

std::ostream &operator<<(std::ostream &os, const Expr &e);

} // namespace lambdav
