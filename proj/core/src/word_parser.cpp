#include "ofp/word_parser.hpp"

#include <cctype>

namespace ofp {
namespace {

class Parser {
 public:
  Parser(const std::string& text, const SymbolTable& symbols) : s_(text), sym_(symbols) {}

  NCPoly run() {
    NCPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(const char* tok) {
    skip();
    const std::string t(tok);
    if (s_.compare(pos_, t.size(), t) == 0) {
      pos_ += t.size();
      return true;
    }
    return false;
  }

  NCPoly scalar(cplx v) const { return NCPoly::constant(sym_.algebra->one() * v); }

  NCPoly expr() {
    NCPoly p = term();
    for (;;) {
      if (accept("+"))
        p += term();
      else if (accept("-"))
        p -= term();
      else
        return p;
    }
  }

  NCPoly term() {
    NCPoly p = factor();
    while (accept("*")) {
      if (s_.compare(pos_, 1, "*") == 0) throw ParseError("unexpected '*'", pos_);
      p = p * factor();
    }
    return p;
  }

  NCPoly factor() {
    if (accept("-")) return factor() * cplx(-1.0);
    NCPoly p = primary();
    while (accept("^*")) p = p.adjoint();
    return p;
  }

  NCPoly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      NCPoly p = expr();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        throw ParseError("malformed number", pos_);
      }
      pos_ += used;
      if (pos_ < s_.size() && s_[pos_] == 'i' &&
          (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
        ++pos_;
        return scalar(cplx(0.0, v));
      }
      return scalar(v);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (auto it = sym_.polys.find(name); it != sym_.polys.end()) return it->second;
      if (auto it = sym_.constants.find(name); it != sym_.constants.end()) return NCPoly::constant(it->second);
      if (name == "i") return scalar(cplx(0.0, 1.0));
      throw ParseError("unknown name '" + name + "'", start);
    }
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  const std::string& s_;
  const SymbolTable& sym_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPoly parse_expression(const std::string& text, const SymbolTable& symbols) {
  if (!symbols.algebra) throw AlgebraError("symbol table has no algebra");
  return Parser(text, symbols).run();
}

}  // namespace ofp
