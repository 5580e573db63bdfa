#include "pcr3bp/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace pcr3bp::verifier {

static const Rational kZero = 0;

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t k) {
  if (c == 0) return RationalPolynomial();
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return RationalPolynomial(std::move(v));
}

const Rational& RationalPolynomial::coeff(std::size_t k) const {
  return k < c_.size() ? c_[k] : kZero;
}

void RationalPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  return *this + (-o);
}

RationalPolynomial RationalPolynomial::operator-() const {
  std::vector<Rational> v = c_;
  for (auto& x : v) x = -x;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  if (is_zero() || o.is_zero()) return RationalPolynomial();
  std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::compose(const RationalPolynomial& g) const {
  RationalPolynomial out;  // Horner in the polynomial ring
  for (std::size_t i = c_.size(); i-- > 0;) {
    out = out * g + RationalPolynomial{c_[i]};
  }
  return out;
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
  Rational out = 0;
  for (std::size_t i = c_.size(); i-- > 0;) out = out * x + c_[i];
  return out;
}

double RationalPolynomial::evaluate(double x) const {
  double out = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) out = out * x + static_cast<double>(c_[i]);
  return out;
}

std::string RationalPolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (os.tellp() > 0) os << " + ";
    os << c_[i];
    if (i > 0) os << "*x^" << i;
  }
  return os.str();
}

RationalPolynomial poly_x() { return RationalPolynomial::monomial(1, 1); }

}  // namespace pcr3bp::verifier
