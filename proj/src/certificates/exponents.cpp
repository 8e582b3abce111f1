#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"

namespace besilab {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorKind::invalid_argument, "cannot parse " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

// "2^-3" -> 0.125; plain numbers pass through.
double parse_power(const std::string& s) {
  auto caret = s.find('^');
  if (caret == std::string::npos) return parse_real(s, "sweep value");
  double base = parse_real(s.substr(0, caret), "sweep base");
  double e = parse_real(s.substr(caret + 1), "sweep exponent");
  return std::pow(base, e);
}

}  // namespace

Exponent parse_exponent(const std::string& raw) {
  Exponent e;
  e.text = trim(raw);
  const std::string& t = e.text;
  if (t == "inf" || t == "+inf" || t == "infinity") {
    e.value = std::numeric_limits<double>::infinity();
    e.reciprocal = 0.0;
    return e;
  }
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    double num = parse_real(t.substr(0, slash), "exponent numerator");
    double den = parse_real(t.substr(slash + 1), "exponent denominator");
    if (num == 0.0 || den == 0.0) throw Error(ErrorKind::invalid_argument, "exponent '" + t + "' is not a nonzero rational");
    e.value = num / den;
    e.reciprocal = den / num;
  } else {
    e.value = parse_real(t, "exponent");
    if (e.value == 0.0) throw Error(ErrorKind::invalid_argument, "exponent must be nonzero");
    e.reciprocal = 1.0 / e.value;
  }
  if (!std::isfinite(e.value)) throw Error(ErrorKind::invalid_argument, "exponent '" + t + "' is not finite; use inf");
  return e;
}

ExponentTriple::ExponentTriple(std::array<Exponent, 3> p) : p_(std::move(p)) {
  double sum = p_[0].reciprocal + p_[1].reciprocal + p_[2].reciprocal;
  if (std::abs(sum - 1.0) > 1e-12)
    throw Error(ErrorKind::homogeneity_violated,
                "1/p1 + 1/p2 + 1/p3 = " + std::to_string(sum) + " for (" + str() + "), expected 1");
  int negative = 0;
  for (const auto& e : p_) {
    if (!e.infinite() && std::abs(e.value) < 1.0)
      throw Error(ErrorKind::invalid_argument, "exponent " + e.text + " has |p| < 1");
    negative += e.value <= -1.0;
  }
  if (negative > 1) throw Error(ErrorKind::invalid_argument, "at most one exponent may be negative");
}

ExponentTriple ExponentTriple::parse(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 3) throw Error(ErrorKind::invalid_argument, "exponent triple needs three entries: '" + text + "'");
  return ExponentTriple({parse_exponent(parts[0]), parse_exponent(parts[1]), parse_exponent(parts[2])});
}

std::string ExponentTriple::str() const { return p_[0].text + "," + p_[1].text + "," + p_[2].text; }

std::vector<int> parse_int_sweep(const std::string& text) {
  std::vector<int> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    double a = parse_real(trim(text.substr(0, dots)), "sweep start");
    double b = parse_real(trim(text.substr(dots + 2)), "sweep end");
    if (a != std::floor(a) || b != std::floor(b)) throw Error(ErrorKind::invalid_argument, "integer sweep expected: " + text);
    int step = a <= b ? 1 : -1;
    for (int k = static_cast<int>(a);; k += step) {
      out.push_back(k);
      if (k == static_cast<int>(b)) break;
    }
    return out;
  }
  for (const auto& s : split(text, ',')) {
    double v = parse_real(s, "sweep value");
    if (v != std::floor(v)) throw Error(ErrorKind::invalid_argument, "integer sweep expected: " + text);
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw Error(ErrorKind::invalid_argument, "empty sweep");
  return out;
}

std::vector<double> parse_real_sweep(const std::string& text) {
  std::vector<double> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::string a = trim(text.substr(0, dots)), b = trim(text.substr(dots + 2));
    auto ca = a.find('^'), cb = b.find('^');
    if (ca == std::string::npos || cb == std::string::npos || a.substr(0, ca) != b.substr(0, cb))
      throw Error(ErrorKind::invalid_argument, "range sweeps must be powers of one base, e.g. 2^-3..2^-8: " + text);
    double base = parse_real(a.substr(0, ca), "sweep base");
    double ea = parse_real(a.substr(ca + 1), "sweep exponent");
    double eb = parse_real(b.substr(cb + 1), "sweep exponent");
    if (ea != std::floor(ea) || eb != std::floor(eb)) throw Error(ErrorKind::invalid_argument, "integer exponents expected: " + text);
    double step = ea <= eb ? 1.0 : -1.0;
    for (double e = ea;; e += step) {
      out.push_back(std::pow(base, e));
      if (e == eb) break;
    }
    return out;
  }
  for (const auto& s : split(text, ',')) out.push_back(parse_power(s));
  if (out.empty()) throw Error(ErrorKind::invalid_argument, "empty sweep");
  return out;
}

}  // namespace besilab
