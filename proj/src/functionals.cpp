#include "bggforge/functionals.hpp"

#include <cmath>
#include <numbers>

#include "bggforge/errors.hpp"

namespace bgg {

Func1D Func1D::polynomial(const Polynomial& p) {
  Func1D f;
  f.kind_ = Kind::polynomial;
  f.pp_ = PiecewisePoly::from_polynomial(p, {Rational(0), Rational(1)});
  return f;
}

Func1D Func1D::piecewise(const PiecewisePoly& p) {
  Func1D f;
  f.kind_ = Kind::piecewise;
  f.pp_ = p;
  return f;
}

Func1D Func1D::trig(double amp, double omega, double phase) {
  Func1D f;
  f.kind_ = Kind::trig;
  f.amp_ = amp;
  f.omega_ = omega;
  f.phase_ = phase;
  return f;
}

Func1D Func1D::derivative(int order) const {
  Func1D f = *this;
  if (kind_ == Kind::trig) {
    f.amp_ = amp_ * std::pow(omega_, order);
    f.phase_ = phase_ + order * std::numbers::pi / 2;
  } else {
    f.pp_ = pp_.derivative(order);
  }
  return f;
}

double Func1D::eval(double x) const {
  if (kind_ == Kind::trig) return amp_ * std::sin(omega_ * x + phase_);
  return pp_.eval(x);
}

int Func1D::degree() const { return kind_ == Kind::trig ? -2 : pp_.max_degree(); }

Functional1D& Functional1D::add(const Functional1D& other, const Rational& scale) {
  if (is_zero(scale)) return *this;
  for (auto a : other.points) {
    a.coef *= scale;
    points.push_back(std::move(a));
  }
  for (auto a : other.moments) {
    a.coef *= scale;
    moments.push_back(std::move(a));
  }
  return *this;
}

int Functional1D::max_order() const {
  int m = 0;
  for (const auto& a : points) m = std::max(m, a.order);
  for (const auto& a : moments) m = std::max(m, a.order);
  return m;
}

Rational limit_value(const PiecewisePoly& u, const Rational& x, int side, int order) {
  const auto& b = u.breaks();
  int idx = u.locate(x);
  if (side < 0 && idx > 0 && x == b[idx]) --idx;
  return u.piece(idx).derivative(order)(x);
}

Rational apply_exact(const Functional1D& f, const Func1D& u) {
  if (!u.exact()) throw InvalidArgument("exact evaluation of a non-polynomial function");
  const PiecewisePoly& pp = u.as_piecewise();
  Rational s = 0;
  for (const auto& a : f.points) {
    Rational v;
    if (a.side != 0) {
      v = limit_value(pp, a.x, a.side, a.order);
    } else {
      Rational l = limit_value(pp, a.x, -1, a.order);
      Rational r = limit_value(pp, a.x, +1, a.order);
      if (l != r)
        throw InsufficientRegularity("derivative of order " + std::to_string(a.order) + " jumps at x = " +
                                     to_string(a.x));
      v = l;
    }
    s += a.coef * v;
  }
  for (const auto& a : f.moments) {
    if (a.order == 0)
      s += a.coef * integrate_product(a.weight, pp);
    else
      s += a.coef * integrate_product(a.weight, pp.derivative(a.order));
  }
  return s;
}

double trig_moment(const Polynomial& p, double a, double b, double amp, double omega, double phase) {
  if (p.is_zero() || a == b) return 0.0;
  if (omega == 0.0) return amp * std::sin(phase) * (p.integrate(Rational(a), Rational(b))).get_d();
  // Gauss–Legendre on [a, b]; the polynomial is evaluated exactly at each node.
  const int points = 12 + p.degree() / 2 + int(std::ceil(std::abs(omega) * (b - a)));
  const GaussRule g = gauss_legendre(points, a, b);
  double s = 0;
  for (std::size_t q = 0; q < g.nodes.size(); ++q)
    s += g.weights[q] * p(Rational(g.nodes[q])).get_d() * amp * std::sin(omega * g.nodes[q] + phase);
  return s;
}

double apply_float(const Functional1D& f, const Func1D& u) {
  if (u.exact()) return apply_exact(f, u).get_d();
  double s = 0;
  for (const auto& a : f.points) s += a.coef.get_d() * u.derivative(a.order).eval(a.x.get_d());
  for (const auto& a : f.moments) {
    Func1D du = u.derivative(a.order);
    const auto& w = a.weight;
    double m = 0;
    for (int i = 0; i < w.intervals(); ++i)
      m += trig_moment(w.piece(i), w.breaks()[i].get_d(), w.breaks()[i + 1].get_d(), du.amp(), du.omega(),
                       du.phase());
    s += a.coef.get_d() * m;
  }
  return s;
}

Functional1D antiderivative_transform(const Functional1D& f) {
  Functional1D out;
  for (const auto& a : f.points) {
    if (a.order >= 1) {
      PointAtom b = a;
      --b.order;
      out.points.push_back(b);
      continue;
    }
    // V(x0) = ∫_0^{x0} v
    if (a.x == 0) continue;
    std::vector<Rational> br{Rational(0), a.x};
    std::vector<Polynomial> pieces{Polynomial::constant(1)};
    if (a.x < 1) {
      br.push_back(Rational(1));
      pieces.emplace_back();
    }
    out.moments.push_back({a.coef, 0, PiecewisePoly(br, pieces)});
  }
  for (const auto& a : f.moments) {
    if (a.order >= 1) {
      MomentAtom b = a;
      --b.order;
      out.moments.push_back(std::move(b));
    } else {
      if (a.weight.breaks().front() != 0 || a.weight.breaks().back() != 1)
        throw InternalError("moment weight must be defined on [0,1]");
      out.moments.push_back({a.coef, 0, a.weight.tail_integral()});
    }
  }
  return out;
}

}  // namespace bgg
