#pragma once

// Parser for the textual form produced by Cyc::str(), so values survive a
// round trip through JSON and the CLI. Accepted grammar (whitespace free
// after stripping):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := coeff | [coeff '*'] 'z' N ['^' p]
//   coeff  := digits ['/' digits]
// Powers are nonnegative; signs live only at the top level.

#include <cctype>
#include <stdexcept>
#include <string>

#include "dcm/cyclotomic.hpp"

namespace dcm {

namespace detail {

inline Cyc parse_cyc_term(const std::string& body) {
  if (body.empty()) throw std::invalid_argument("parse_cyc: empty term");
  size_t zpos = body.find('z');
  if (zpos == std::string::npos) return Cyc(parse_rat(body));

  Rat coeff = 1;
  if (zpos > 0) {
    if (body[zpos - 1] != '*')
      throw std::invalid_argument("parse_cyc: expected '*' before root in " + body);
    coeff = parse_rat(body.substr(0, zpos - 1));
  }
  size_t i = zpos + 1, start = i;
  while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
  if (i == start) throw std::invalid_argument("parse_cyc: missing conductor in " + body);
  unsigned long N = std::stoul(body.substr(start, i - start));
  if (N == 0) throw std::invalid_argument("parse_cyc: zero conductor in " + body);

  long pow = 1;
  if (i < body.size()) {
    if (body[i] != '^')
      throw std::invalid_argument("parse_cyc: trailing junk in " + body);
    ++i;
    start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (start == i || i != body.size())
      throw std::invalid_argument("parse_cyc: bad exponent in " + body);
    pow = std::stol(body.substr(start));
  }
  return Cyc(coeff) * Cyc::zeta(static_cast<unsigned>(N), pow);
}

}  // namespace detail

inline Cyc parse_cyc(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("parse_cyc: empty input");

  Cyc total(0);
  size_t pos = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    pos = 1;
  }
  while (pos < s.size()) {
    size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    Cyc term = detail::parse_cyc_term(s.substr(pos, end - pos));
    total += neg ? -term : term;
    if (end == s.size()) return total;
    neg = (s[end] == '-');
    pos = end + 1;
    if (pos == s.size()) throw std::invalid_argument("parse_cyc: dangling sign");
  }
  throw std::invalid_argument("parse_cyc: empty term");
}

}  // namespace dcm
