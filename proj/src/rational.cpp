#include "vtc/rational.hpp"

#include <cassert>
#include <cctype>

namespace vtc {

std::optional<Rat> parse_fraction(const std::string& text) {
  if (text.empty()) return std::nullopt;
  size_t slash = text.find('/');
  auto parse_int = [](const std::string& s) -> std::optional<Int> {
    if (s.empty()) return std::nullopt;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    }
    return Int(s);
  };
  if (slash == std::string::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rat(*n);
  }
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  return Rat(*num, *den);
}

std::string format_fraction(const Rat& value) {
  std::string num = numerator(value).str();
  Int den = denominator(value);
  if (den == 1) return num;
  return num + "/" + den.str();
}

Rat dot(const RationalPoint& a, const RationalPoint& b) {
  assert(a.size() == b.size());
  Rat out = 0;
  for (size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

Rat norm_squared(const RationalPoint& p) { return dot(p, p); }

}  // namespace vtc
