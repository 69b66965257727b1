#pragma once

namespace catena {

/// Signed intensities of the four classical string loads.
///
/// Gravity g pulls in -y; bridge load p, Newtonian wind w and hydrostatic
/// pressure h act against it (+y, respectively along the left normal).
/// All intensities are non-negative; the opposition of g to the other
/// three is baked into the force densities, not into signs of the fields.
struct LoadSpec {
    double g = 0.0;  ///< gravity, per unit arclength
    double p = 0.0;  ///< bridge load, per unit horizontal projection
    double w = 0.0;  ///< Newtonian wind, per unit horizontal projection
    double h = 0.0;  ///< hydrostatic pressure, per unit arclength

    LoadSpec() = default;
    LoadSpec(double g_, double p_, double w_, double h_);

    bool all_zero() const { return g == 0.0 && p == 0.0 && w == 0.0 && h == 0.0; }
    bool pure_g() const { return g > 0.0 && p == 0.0 && w == 0.0 && h == 0.0; }
    bool pure_p() const { return g == 0.0 && p > 0.0 && w == 0.0 && h == 0.0; }
    bool pure_w() const { return g == 0.0 && p == 0.0 && w > 0.0 && h == 0.0; }
    bool pure_h() const { return g == 0.0 && p == 0.0 && w == 0.0 && h > 0.0; }
};

/// Normal and tangential force densities at a given slope angle.
/// Positive f_n is the gravity-dominated (sagging) orientation.
struct LoadSample {
    double f_n = 0.0;
    double f_t = 0.0;

    /// Curvature radius of an equilibrium through this point, R = T/f_n.
    double curvature_radius(double tension) const { return tension / f_n; }
};

/// Force densities of the combined load at slope alpha:
///
///   f_n(a) = g cos a - (p + w) |cos a| cos a - h
///   f_t(a) = g sin a - p |cos a| sin a
///
/// The |cos a| factor in the projected loads keeps both densities
/// 2*pi-periodic and gives the six-root structure of the combined
/// vertical loads on |a| > pi/2; on |a| <= pi/2 it reduces to the
/// familiar cos^2 forms.
LoadSample evaluate(const LoadSpec& spec, double alpha);

/// Analytic d f_n / d alpha, used for root refinement and saddle-node
/// detection: -g sin a + 2 (p + w) |cos a| sin a.
double fn_derivative(const LoadSpec& spec, double alpha);

}  // namespace catena
