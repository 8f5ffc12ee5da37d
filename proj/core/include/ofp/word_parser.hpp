#pragma once

#include "ofp/ncpoly.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace ofp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Names visible to the parser: algebra constants and polynomials (generators, candidates).
struct SymbolTable {
  AlgebraPtr algebra;
  std::map<std::string, Element> constants;
  std::map<std::string, NCPoly> polys;
};

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary ('^*')*
//   primary := number ['i'] | 'i' | name | '(' expr ')'
// Numbers are real literals; `2i` and `i` denote imaginary scalars.
NCPoly parse_expression(const std::string& text, const SymbolTable& symbols);

}  // namespace ofp
