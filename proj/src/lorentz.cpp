#include "plateau/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plateau::lorentz {

double dot(const Vec& x, const Vec& y) {
  return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

Vec origin(int n) {
  Vec o = Vec::Zero(n + 1);
  o(0) = 1.0;
  return o;
}

double distance(const Vec& x, const Vec& y) {
  const double c = -dot(x, y);
  if (c < 2.0) {
    const Vec d = x - y;
    const double chord2 = std::max(0.0, dot(d, d));
    return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
  }
  return std::acosh(c);
}

Mat boost(int n, int axis, double t) {
  Mat m = Mat::Identity(n + 1, n + 1);
  m(0, 0) = std::cosh(t);
  m(axis, axis) = std::cosh(t);
  m(0, axis) = std::sinh(t);
  m(axis, 0) = std::sinh(t);
  return m;
}

Mat rotation(int n, int axis_a, int axis_b, double phi) {
  Mat m = Mat::Identity(n + 1, n + 1);
  m(axis_a, axis_a) = std::cos(phi);
  m(axis_b, axis_b) = std::cos(phi);
  m(axis_a, axis_b) = -std::sin(phi);
  m(axis_b, axis_a) = std::sin(phi);
  return m;
}

Vec renormalize(const Vec& x) {
  Vec y = x;
  const double s2 = y.tail(y.size() - 1).squaredNorm();
  y(0) = std::sqrt(1.0 + s2);
  return y;
}

namespace {

Eigen::Matrix2d symmetric_of(const Eigen::Vector3d& x) {
  Eigen::Matrix2d s;
  s << x(0) + x(1), x(2), x(2), x(0) - x(1);
  return s;
}

Eigen::Vector3d point_of(const Eigen::Matrix2d& s) {
  return {0.5 * (s(0, 0) + s(1, 1)), 0.5 * (s(0, 0) - s(1, 1)), 0.5 * (s(0, 1) + s(1, 0))};
}

}  // namespace

Eigen::Matrix3d so21_from_sl2(const Eigen::Matrix2d& g) {
  Eigen::Matrix3d m;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d e = Eigen::Vector3d::Unit(k);
    m.col(k) = point_of(g * symmetric_of(e) * g.transpose());
  }
  return m;
}

Eigen::Matrix2d sl2_rotation(double phi) {
  // Acts on (x1, x2) as a rotation by +phi.
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  Eigen::Matrix2d k;
  k << c, -s, s, c;
  return k;
}

Eigen::Matrix2d sl2_boost(double t) {
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  a(0, 0) = std::exp(0.5 * t);
  a(1, 1) = std::exp(-0.5 * t);
  return a;
}

Eigen::Matrix2d sl2_half_turn(double theta, double r) {
  return sl2_rotation(theta) * sl2_boost(r) * sl2_rotation(std::numbers::pi) * sl2_boost(-r) *
         sl2_rotation(-theta);
}

double psl2_relative_gap(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  const double plus = (a - b).cwiseAbs().maxCoeff();
  const double minus = (a + b).cwiseAbs().maxCoeff();
  return std::min(plus, minus) / scale;
}

}  // namespace plateau::lorentz
