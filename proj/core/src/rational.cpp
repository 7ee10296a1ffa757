#include "pardyn/rational.hpp"

#include "pardyn/error.hpp"

#include <cctype>
#include <ostream>

namespace pardyn {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text)) {
    throw ValidationError("malformed fraction '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(num_text));
  }
  const auto den_text = text.substr(slash + 1);
  if (!is_integer_literal(den_text) || den_text.front() == '-') {
    throw ValidationError("malformed fraction '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text);
  if (den == 0) {
    throw ValidationError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(parse_integer(num_text), den);
}

Complex& Complex::operator*=(const Complex& o) {
  if (im_ == 0 && o.im_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Rational n = o.norm();
  if (n == 0) {
    throw std::domain_error("complex division by zero");
  }
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  os << to_string(z.real());
  if (!z.is_real()) {
    os << (z.imag() < 0 ? "-" : "+") << to_string(abs(z.imag())) << "i";
  }
  return os;
}

}  // namespace pardyn
