#pragma once

#include <vector>

#include "bggforge/polynomial.hpp"

namespace bgg {

/// Scalar function of one variable: exact (polynomial or piecewise polynomial)
/// or a closed-form sinusoid amp * sin(omega x + phase) evaluated in double.
class Func1D {
 public:
  enum class Kind { polynomial, piecewise, trig };

  static Func1D polynomial(const Polynomial& p);
  static Func1D piecewise(const PiecewisePoly& p);
  static Func1D trig(double amp, double omega, double phase);

  Kind kind() const { return kind_; }
  bool exact() const { return kind_ != Kind::trig; }
  /// Exact kinds only.
  const PiecewisePoly& as_piecewise() const { return pp_; }
  double amp() const { return amp_; }
  double omega() const { return omega_; }
  double phase() const { return phase_; }

  Func1D derivative(int order = 1) const;
  double eval(double x) const;
  /// Highest polynomial degree, or -2 for a sinusoid.
  int degree() const;

 private:
  Kind kind_ = Kind::polynomial;
  PiecewisePoly pp_;
  double amp_ = 0, omega_ = 0, phase_ = 0;
};

/// u^{(order)}(x); side -1/+1 takes the left/right limit, side 0 requires both to agree.
struct PointAtom {
  Rational coef;
  int order = 0;
  Rational x;
  int side = 0;
};

/// ∫_0^1 weight(x) u^{(order)}(x) dx.
struct MomentAtom {
  Rational coef;
  int order = 0;
  PiecewisePoly weight;
};

/// Linear functional on functions of one variable, a finite sum of atoms.
struct Functional1D {
  std::vector<PointAtom> points;
  std::vector<MomentAtom> moments;

  Functional1D& add(const Functional1D& other, const Rational& scale = 1);
  bool empty() const { return points.empty() && moments.empty(); }
  /// Largest derivative order any atom uses.
  int max_order() const;
};

/// Raises InsufficientRegularity when a two-sided point atom sees a jump.
Rational apply_exact(const Functional1D& f, const Func1D& u);
double apply_float(const Functional1D& f, const Func1D& u);

/// The functional v ↦ f(∫_0^x v(s) ds) written again as a sum of atoms.
Functional1D antiderivative_transform(const Functional1D& f);

/// ∫_a^b P(x) amp sin(omega x + phase) dx in closed form.
double trig_moment(const Polynomial& p, double a, double b, double amp, double omega, double phase);

/// Exact one-sided limit u^{(order)}(x±); side 0 is treated as the right limit.
Rational limit_value(const PiecewisePoly& u, const Rational& x, int side, int order);

}  // namespace bgg
