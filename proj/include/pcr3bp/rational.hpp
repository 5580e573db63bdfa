#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <string>
#include <vector>

namespace pcr3bp::verifier {

using Rational = boost::multiprecision::cpp_rational;

/// Univariate polynomial with exact rational coefficients, indexed by
/// degree. All arithmetic is exact; equality is coefficientwise.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  RationalPolynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// c * x^k
  static RationalPolynomial monomial(const Rational& c, std::size_t k);
  static RationalPolynomial constant(const Rational& c) { return monomial(c, 0); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(std::size_t k) const;

  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  RationalPolynomial operator-() const;
  bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }

  /// this(g(x)), exact.
  RationalPolynomial compose(const RationalPolynomial& g) const;

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// x as a polynomial.
RationalPolynomial poly_x();

}  // namespace pcr3bp::verifier
