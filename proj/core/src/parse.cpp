#include "heightlab/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

bool is_indexed_family(char c) { return c == 'x' || c == 'u' || c == 'y'; }

bool valid_variable_name(const std::string& name) {
  if (name == "x" || name == "t") return true;
  if (name.size() < 2 || !is_indexed_family(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  MultiPoly parse() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError("empty polynomial", pos_);
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        MultiPoly d = factor();
        if (!d.is_constant() || d.is_zero()) throw SyntaxError("division by a non-constant or zero", at);
        acc *= 1 / d.coeff(Exponents(vars_.size(), 0));
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw SyntaxError("expected a non-negative integer exponent", at);
      if (digits.size() > 6) throw SyntaxError("exponent too large", at);
      return pow(base, static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      return MultiPoly::constant(vars_, mpq_class(mpz_class(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
        throw SyntaxError("malformed identifier", start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw UnknownVariable("unknown variable '" + name + "' at position " + std::to_string(start));
      return MultiPoly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  for (const auto& v : vars)
    if (!valid_variable_name(v)) throw DomainError("invalid variable name '" + v + "'");
  return Parser(text, vars).parse();
}

UniPoly parse_uni(std::string_view text, const std::string& var) {
  return parse_poly(text, {var}).to_uni(0);
}

BiPoly parse_bi(std::string_view text, const std::string& xvar, const std::string& tvar) {
  return parse_poly(text, {xvar, tvar}).to_bi(0, 1);
}

std::vector<std::string> scan_variables(std::string_view text) {
  bool has_x = false, has_t = false;
  std::map<char, int> top;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i++;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::string name(text.substr(start, i - start));
    if (name == "x") {
      has_x = true;
    } else if (name == "t") {
      has_t = true;
    } else if (valid_variable_name(name)) {
      int idx = std::stoi(name.substr(1));
      auto [it, ok] = top.emplace(name[0], idx);
      if (!ok) it->second = std::max(it->second, idx);
    }
  }
  std::vector<std::string> out;
  if (has_x) out.push_back("x");
  if (has_t) out.push_back("t");
  for (char fam : {'x', 'y', 'u'}) {
    auto it = top.find(fam);
    if (it == top.end()) continue;
    for (int k = 0; k <= it->second; ++k) out.push_back(std::string(1, fam) + std::to_string(k));
  }
  return out;
}

}  // namespace heightlab
