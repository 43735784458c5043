#include <cctype>
#include <cstdio>

#include "mls/element_set.hpp"
#include "mls/error.hpp"
#include "mls/rational.hpp"

namespace mls {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::BudgetExceedsUniverse: return "BudgetExceedsUniverse";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotUniform: return "NotUniform";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::IncompleteTournament: return "IncompleteTournament";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::vector<int> ElementSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](int e) { out.push_back(e); });
  return out;
}

ElementSet ElementSet::deposit(ElementSet positions) const {
  ElementSet out;
  int index = 0;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1, ++index) {
    if (positions.contains(index)) out.insert(std::countr_zero(b));
  }
  return out;
}

std::string ElementSet::to_hex() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(bits_));
  return buf;
}

ElementSet ElementSet::from_hex(const std::string& text) {
  if (text.empty() || text.size() > 16) throw Error(ErrorCode::ParseError, "bad hex mask '" + text + "'");
  std::uint64_t v = 0;
  for (char ch : text) {
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else throw Error(ErrorCode::ParseError, "bad hex mask '" + text + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return ElementSet(v);
}

UniverseInfo::UniverseInfo(int size) : n(size) {
  if (size < 0 || size > kMaxUniverse)
    throw Error(ErrorCode::TooLarge, "universe size " + std::to_string(size) + " outside [0, 64]");
}

std::string UniverseInfo::name(int e) const {
  if (static_cast<std::size_t>(e) < element_names.size()) return element_names[static_cast<std::size_t>(e)];
  return std::to_string(e + 1);
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return Error(ErrorCode::InvalidParams, "not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) throw bad();
    BigInt v = 0;
    for (std::size_t j = from; j < to; ++j) {
      if (!std::isdigit(static_cast<unsigned char>(text[j]))) throw bad();
      v = v * 10 + (text[j] - '0');
    }
    return v;
  };
  Rational r;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num = digits(i, slash);
    BigInt den = digits(slash + 1, text.size());
    if (den == 0) throw bad();
    r = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    BigInt whole = dot > i ? digits(i, dot) : BigInt(0);
    BigInt frac = digits(dot + 1, text.size());
    BigInt scale = 1;
    for (std::size_t j = dot + 1; j < text.size(); ++j) scale *= 10;
    r = Rational(whole * scale + frac, scale);
  } else {
    r = Rational(digits(i, text.size()));
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_fixed(const Rational& r, int decimals) {
  BigInt scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (2 * num * scale + den) / (2 * den);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (decimals > 0) {
    std::string f = frac.str();
    out += "." + std::string(static_cast<std::size_t>(decimals) - f.size(), '0') + f;
  }
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt ceil(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  return (num + den - 1) / den;
}

Rational pow(const Rational& base, int exponent) {
  Rational out = 1;
  Rational b = exponent < 0 ? Rational(1) / base : base;
  for (int e = exponent < 0 ? -exponent : exponent; e > 0; --e) out *= b;
  return out;
}

}  // namespace mls
