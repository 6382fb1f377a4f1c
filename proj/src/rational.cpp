#include "drum/rational.hpp"

#include <cctype>

#include "drum/error.hpp"

namespace drum {

namespace {

bool isIntegerText(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parseInteger(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parseRational(std::string_view text) {
  const auto bad = [&]() -> Error {
    return Error(ErrorKind::InvalidInput,
                 "not a rational number: '" + std::string(text) + "'");
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!isIntegerText(num) || !isIntegerText(den)) throw bad();
    mpz_class d = parseInteger(den);
    if (d == 0) throw bad();
    Rational r(parseInteger(num), d);
    r.canonicalize();
    return r;
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) throw bad();
    if (!whole.empty() && !isIntegerText(whole)) throw bad();
    if (!frac.empty() && (!isIntegerText(frac) || frac.front() == '-' ||
                          frac.front() == '+')) {
      throw bad();
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class num = whole.empty() ? mpz_class(0) : parseInteger(whole);
    num = num * scale + (frac.empty() ? mpz_class(0) : parseInteger(frac));
    Rational r(negative ? mpz_class(-num) : num, scale);
    r.canonicalize();
    return r;
  }
  if (!isIntegerText(text)) throw bad();
  return Rational(parseInteger(text));
}

std::string toString(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

}  // namespace drum
