#include "bggforge/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bggforge/errors.hpp"

namespace bgg {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && bgg::is_zero(c_.back())) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double Polynomial::eval(double x) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<Rational> v = c_;
  for (int o = 0; o < order; ++o) {
    if (v.empty()) break;
    for (std::size_t i = 1; i < v.size(); ++i) v[i - 1] = v[i] * int(i);
    v.pop_back();
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<Rational> v(c_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i + 1] = c_[i] / int(i + 1);
  return Polynomial(std::move(v));
}

Rational Polynomial::integrate(const Rational& a, const Rational& b) const {
  Polynomial p = antiderivative();
  return p(b) - p(a);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  std::vector<Rational> v = a.c_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

Polynomial legendre_on(int i, const Rational& a, const Rational& b) {
  if (i < 0) throw InvalidArgument("negative Legendre index");
  // t = (2x - a - b) / (b - a)
  const Polynomial t({-(a + b) / (b - a), Rational(2) / (b - a)});
  Polynomial prev = Polynomial::constant(1);
  if (i == 0) return prev;
  Polynomial cur = t;
  for (int k = 1; k < i; ++k) {
    Polynomial next = Rational(2 * k + 1, k + 1) * (t * cur) - Rational(k, k + 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breaks, std::vector<Polynomial> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
    throw InvalidArgument("piecewise polynomial needs one piece per interval");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i - 1] < breaks_[i])) throw InvalidArgument("breakpoints must increase strictly");
}

PiecewisePoly PiecewisePoly::zero(std::vector<Rational> breaks) {
  std::vector<Polynomial> p(breaks.size() - 1);
  return PiecewisePoly(std::move(breaks), std::move(p));
}

PiecewisePoly PiecewisePoly::from_polynomial(const Polynomial& p, std::vector<Rational> breaks) {
  std::vector<Polynomial> pieces(breaks.size() - 1, p);
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

int PiecewisePoly::max_degree() const {
  int d = -1;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

int PiecewisePoly::locate(const Rational& x) const {
  if (x < breaks_.front() || x > breaks_.back()) throw InvalidArgument("point outside the breakpoint range");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  int i = int(it - breaks_.begin()) - 1;
  return std::min(i, intervals() - 1);
}

Rational PiecewisePoly::operator()(const Rational& x) const { return pieces_[locate(x)](x); }

double PiecewisePoly::eval(double x) const {
  int i = 0;
  while (i + 1 < intervals() && x >= breaks_[i + 1].get_d()) ++i;
  return pieces_[i].eval(x);
}

PiecewisePoly PiecewisePoly::derivative(int order) const {
  PiecewisePoly r = *this;
  for (auto& p : r.pieces_) p = p.derivative(order);
  return r;
}

PiecewisePoly PiecewisePoly::antiderivative() const {
  PiecewisePoly r = *this;
  Rational acc = 0;
  for (int i = 0; i < intervals(); ++i) {
    Polynomial a = pieces_[i].antiderivative();
    r.pieces_[i] = a + Polynomial::constant(acc - a(breaks_[i]));
    acc += pieces_[i].integrate(breaks_[i], breaks_[i + 1]);
  }
  return r;
}

PiecewisePoly PiecewisePoly::tail_integral() const {
  PiecewisePoly r = *this;
  Rational acc = 0;
  for (int i = intervals() - 1; i >= 0; --i) {
    Polynomial a = pieces_[i].antiderivative();
    // W(s) = acc + a(b_{i+1}) - a(s)
    r.pieces_[i] = Polynomial::constant(acc + a(breaks_[i + 1])) - a;
    acc += pieces_[i].integrate(breaks_[i], breaks_[i + 1]);
  }
  return r;
}

PiecewisePoly PiecewisePoly::refine(const std::vector<Rational>& finer) const {
  std::vector<Polynomial> p;
  p.reserve(finer.size() - 1);
  for (std::size_t i = 0; i + 1 < finer.size(); ++i) {
    Rational mid = (finer[i] + finer[i + 1]) / 2;
    p.push_back(pieces_[locate(mid)]);
  }
  return PiecewisePoly(finer, std::move(p));
}

bool PiecewisePoly::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Rational PiecewisePoly::integrate() const {
  Rational s = 0;
  for (int i = 0; i < intervals(); ++i) s += pieces_[i].integrate(breaks_[i], breaks_[i + 1]);
  return s;
}

std::vector<Rational> merge_breaks(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> m;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
  if (a.breaks_ == b.breaks_) {
    PiecewisePoly r = a;
    for (int i = 0; i < r.intervals(); ++i) r.pieces_[i] = r.pieces_[i] + b.pieces_[i];
    return r;
  }
  auto m = merge_breaks(a.breaks_, b.breaks_);
  return a.refine(m) + b.refine(m);
}

PiecewisePoly operator*(const Rational& s, const PiecewisePoly& a) {
  PiecewisePoly r = a;
  for (auto& p : r.pieces_) p = s * p;
  return r;
}

Rational integrate_product(const PiecewisePoly& a, const PiecewisePoly& b) {
  const Rational lo = std::max(a.breaks().front(), b.breaks().front());
  const Rational hi = std::min(a.breaks().back(), b.breaks().back());
  if (!(lo < hi)) return 0;
  std::vector<Rational> pts = merge_breaks(a.breaks(), b.breaks());
  Rational s = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i] < lo || pts[i + 1] > hi) continue;
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    const Polynomial& pa = a.piece(a.locate(mid));
    const Polynomial& pb = b.piece(b.locate(mid));
    if (pa.is_zero() || pb.is_zero()) continue;
    s += (pa * pb).integrate(pts[i], pts[i + 1]);
  }
  return s;
}

GaussRule gauss_legendre(int points, double a, double b) {
  if (points < 1) throw InvalidArgument("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= points; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= points; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = points * (x * p1 - p0) / (x * x - 1);
    rule.nodes[points - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    rule.weights[points - 1 - i] = (b - a) / ((1 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace bgg
