#ifndef PLANARLAB_POLYTEXT_HPP
#define PLANARLAB_POLYTEXT_HPP

// Text encodings used on the command line.
//
//   element    := lowercase hex of the element bits, optional "0x" prefix
//   univariate := element ("," element)*          coefficients from X^0 upward
//   bivariate  := term (";" term)* | "0"          term := i "," j ":" element
//   ternary    := term3 (";" term3)* | "0"        term3 := i "," j "," k ":" element
//
// Whitespace is ignored. Formatting is canonical: univariate output has no
// trailing zeros ("0" for the zero polynomial), multivariate terms are listed
// in ascending exponent order with zero terms omitted.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace planarlab::text {

namespace detail {

inline std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

inline std::uint64_t parse_uint(std::string_view s, int base, std::string_view what) {
  std::uint64_t v = 0;
  if (s.empty()) throw parse_error("empty " + std::string(what));
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw parse_error("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

inline std::string format_elem(FieldElem x) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%x", x.bits);
  return buf;
}

inline FieldElem parse_elem(const Field& f, std::string_view s) {
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  const std::uint64_t v = detail::parse_uint(s, 16, "field element");
  if (v >= f.order()) throw parse_error("element " + std::string(s) + " not in GF(2^" + std::to_string(f.degree()) + ")");
  return FieldElem{static_cast<std::uint32_t>(v)};
}

inline std::string format_uni(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) out.push_back(',');
    out += format_elem(p.coeffs()[i]);
  }
  return out;
}

inline UniPoly parse_uni(const Field& f, std::string_view s) {
  const std::string t = detail::strip(s);
  std::vector<FieldElem> c;
  for (auto tok : detail::split(t, ',')) c.push_back(parse_elem(f, tok));
  return UniPoly(std::move(c));
}

inline std::string format_bi(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out.push_back(';');
    out += std::to_string(e.x) + "," + std::to_string(e.y) + ":" + format_elem(c);
  }
  return out;
}

inline BiPoly parse_bi(const Field& f, std::string_view s) {
  const std::string t = detail::strip(s);
  BiPoly p;
  if (t == "0") return p;
  for (auto term : detail::split(t, ';')) {
    const auto colon = term.find(':');
    if (colon == std::string_view::npos) throw parse_error("bivariate term without ':': '" + std::string(term) + "'");
    const auto exps = detail::split(term.substr(0, colon), ',');
    if (exps.size() != 2) throw parse_error("bivariate term needs two exponents: '" + std::string(term) + "'");
    p.add_term(static_cast<std::uint32_t>(detail::parse_uint(exps[0], 10, "exponent")),
               static_cast<std::uint32_t>(detail::parse_uint(exps[1], 10, "exponent")),
               parse_elem(f, term.substr(colon + 1)));
  }
  return p;
}

inline std::string format_ternary(const TernaryForm& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out.push_back(';');
    out += std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + ":" + format_elem(c);
  }
  return out;
}

inline TernaryForm parse_ternary(const Field& f, std::string_view s) {
  const std::string t = detail::strip(s);
  TernaryForm p;
  if (t == "0") return p;
  for (auto term : detail::split(t, ';')) {
    const auto colon = term.find(':');
    if (colon == std::string_view::npos) throw parse_error("ternary term without ':': '" + std::string(term) + "'");
    const auto exps = detail::split(term.substr(0, colon), ',');
    if (exps.size() != 3) throw parse_error("ternary term needs three exponents: '" + std::string(term) + "'");
    Exponent3 e{};
    for (int i = 0; i < 3; ++i) e[i] = static_cast<std::uint32_t>(detail::parse_uint(exps[i], 10, "exponent"));
    p.add_term(e, parse_elem(f, term.substr(colon + 1)));
  }
  return p;
}

}  // namespace planarlab::text

#endif  // PLANARLAB_POLYTEXT_HPP
