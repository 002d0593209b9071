#pragma once

// Hyperboloid-model primitives shared by the group layer and the geometry
// modules. Points of H^n are vectors x in R^{n+1} with <x,x>_L = -1, x0 > 0.

#include <Eigen/Dense>

namespace plateau::lorentz {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Lorentzian form -x0*y0 + x1*y1 + ... + xn*yn.
double dot(const Vec& x, const Vec& y);

/// Base point (1, 0, ..., 0) of H^n.
Vec origin(int n);

/// Hyperbolic distance; uses the chordal asinh form for nearby points.
double distance(const Vec& x, const Vec& y);

/// Lorentz boost translating the base point a distance t along axis (1..n).
Mat boost(int n, int axis, double t);

/// Rotation by phi in the (axis_a, axis_b) coordinate plane, fixing the base point.
Mat rotation(int n, int axis_a, int axis_b, double phi);

/// Re-project a drifted point back onto the hyperboloid.
Vec renormalize(const Vec& x);

// ---- PSL(2,R) realization of Isom+(H^2) ---------------------------------
//
// A point x of H^2 corresponds to the symmetric matrix
//   S(x) = [[x0 + x1, x2], [x2, x0 - x1]],  det S = 1,
// and g in SL(2,R) acts by S -> g S g^T.

Eigen::Matrix3d so21_from_sl2(const Eigen::Matrix2d& g);
Eigen::Matrix2d sl2_rotation(double phi);
Eigen::Matrix2d sl2_boost(double t);

/// Half-turn about the point at distance r in direction theta from the base point.
Eigen::Matrix2d sl2_half_turn(double theta, double r);

/// Max-entry distance between A and +/-B relative to max(1, |A|_max).
double psl2_relative_gap(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b);

}  // namespace plateau::lorentz
