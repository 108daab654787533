#include "mnorm/exponent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mnorm {

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("exponent must be >= 1");
  }
  if (std::isinf(p)) {
    *this = infinity();
    return;
  }
  value_ = p;
  inf_ = false;
  if (p == 1.0) {
    conj_inf_ = true;
    conj_value_ = 0.0;
  } else {
    conj_inf_ = false;
    conj_value_ = p / (p - 1.0);
  }
}

Exponent Exponent::infinity() { return Exponent(0.0, true, 1.0, false); }

Exponent Exponent::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(c)));
  }
  if (t == "inf" || t == "infinity" || t == "+inf") return infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse exponent '" + text + "'");
  }
  if (used != t.size()) throw std::invalid_argument("cannot parse exponent '" + text + "'");
  return Exponent(v);
}

Exponent Exponent::conjugate() const { return Exponent(conj_value_, conj_inf_, value_, inf_); }

std::string Exponent::to_string() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

Exponent conjugate(const Exponent& p) { return p.conjugate(); }

}  // namespace mnorm
