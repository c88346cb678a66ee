#pragma once

#include <utility>
#include <vector>

namespace k41::oseen {

/// Horizontal velocity of the viscous Oseen vortex line (axis e3):
/// u_h(t,x) = (nu t)^{-1/2} v(x / sqrt(nu t)),
/// v(xi) = (Gamma / 2 pi) xi_perp / |xi|^2 (1 - e^{-|xi|^2/4}).
/// Finite at the axis: |u_h| ~ (Gamma/8 pi)|xi|/sqrt(nu t).
std::pair<double, double> velocity(double gamma, double nu, double t, double x,
                                   double y);

/// Plane sample of u_h over the bounding box [-1,1]^2 of the unit-radius
/// cylinder; points with x^2+y^2 >= 1 are masked to zero. The field does
/// not depend on z, so cylinder norms are plane norms times the height.
struct PlaneField {
  int M = 0;            // grid points per direction
  double gamma = 0.0;
  double nu = 0.0;
  double t = 0.0;
  std::vector<double> ux, uy;  // row-major over the (x,y) grid
};

PlaneField sample_plane(double gamma, double nu, double t, int M);

/// int_{cylinder} |u| dx and int |u|^2 dx for height-1 cylinder (masked
/// plane quadrature; cell-centered grid avoids the axis).
double cylinder_l1(const PlaneField& p);
double cylinder_l2sq(const PlaneField& p);

/// Vol(u;[t/2,t]) on the cylinder: trapezoidal time average over
/// n_time log-spaced nodes, plane resolution M.
double volume_on_window(double gamma, double nu, double t, int M, int n_time);

/// Volume of the reference cylinder {x^2+y^2<1, 0<z<1}.
double cylinder_volume();

}  // namespace k41::oseen
