#pragma once

#include <vector>

#include "bggforge/rational.hpp"

namespace bgg {

/// Dense univariate polynomial c[0] + c[1] x + ... in the global coordinate.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(int degree, const Rational& c = 1);

  /// -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i < int(c_.size()) ? c_[i] : Rational(0); }
  bool is_zero() const { return c_.empty(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  Polynomial derivative(int order = 1) const;
  /// Antiderivative vanishing at x = 0.
  Polynomial antiderivative() const;
  Rational integrate(const Rational& a, const Rational& b) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Legendre polynomial of degree i on [a, b] in the global coordinate, scaled so that ℓ_i(b) = 1.
Polynomial legendre_on(int i, const Rational& a, const Rational& b);

/// Piecewise polynomial on breakpoints x_0 < ... < x_m. A point shared by two
/// intervals belongs to the right one, except x_m which belongs to the last.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<Rational> breaks, std::vector<Polynomial> pieces);
  static PiecewisePoly zero(std::vector<Rational> breaks);
  static PiecewisePoly from_polynomial(const Polynomial& p, std::vector<Rational> breaks);

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  Polynomial& piece(int i) { return pieces_[i]; }
  const Polynomial& piece(int i) const { return pieces_[i]; }
  int intervals() const { return int(pieces_.size()); }
  int max_degree() const;

  int locate(const Rational& x) const;
  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  PiecewisePoly derivative(int order = 1) const;
  /// Continuous antiderivative vanishing at the first breakpoint.
  PiecewisePoly antiderivative() const;
  /// Continuous function W(s) = ∫_s^{x_m} w(x) dx.
  PiecewisePoly tail_integral() const;
  /// Same function expressed on a refinement of the breakpoints.
  PiecewisePoly refine(const std::vector<Rational>& finer) const;
  bool is_zero() const;

  Rational integrate() const;
  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator*(const Rational& s, const PiecewisePoly& a);
  friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
    return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
  }

 private:
  std::vector<Rational> breaks_;
  std::vector<Polynomial> pieces_;
};

std::vector<Rational> merge_breaks(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// ∫ a(x) b(x) dx over the common range, exact.
Rational integrate_product(const PiecewisePoly& a, const PiecewisePoly& b);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss–Legendre rule with `points` nodes on [a, b].
GaussRule gauss_legendre(int points, double a = 0.0, double b = 1.0);

}  // namespace bgg
