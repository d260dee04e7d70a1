#ifndef CASIMIR_RESUMMATION_HPP
#define CASIMIR_RESUMMATION_HPP

// Closed-form resummations behind the Accelerated strategy. All functions work in
// finite-part mode (sigma = 0) and return the bare triple-sum contributions, without
// the edge terms pi / (48 V a_i).

#include "casimir/geometry.hpp"
#include "casimir/sumkernel.hpp"

namespace casimir::resummed
{

// Z(b_p, b_q) = sum'_{(m,n)} [(2 b_p m)^2 + (2 b_q n)^2]^{-3/2} and its partial derivatives,
// via the Bessel-K form of the inner Poisson resummation.
struct EpsteinCubic
{
    double value = 0.0;
    double d_bp = 0.0;
    double d_bq = 0.0;
    double error = 0.0;
};
EpsteinCubic epstein_cubic(double bp, double bq);

// sum'_{(m,n)} [(2 b_p m)^2 + (2 b_q n)^2]^{-2}
Estimate epstein_quartic(double bp, double bq);

// Index of the shortest side, lowest index on ties.
Axis shortest_axis(const CavityGeometry &geom);

// Energy triple sum, resummed along the shortest side.
Estimate energy_triple(const CavityGeometry &geom);

// Stress triple sum on `axis`, resumming that axis' own index. The remainder is a double
// sum of coth(pi x) / (rho sinh^2(pi x)) terms with x = rho / (2 a_axis).
Estimate axial_stress_triple(const CavityGeometry &geom, Axis axis);

// Stress triple sum on `axis` obtained by differentiating the energy representation
// resummed along `resummed` (which must differ from `axis`).
Estimate transverse_stress_triple(const CavityGeometry &geom, Axis axis, Axis resummed);

// Stress triple sum on `axis` through whichever representation is cheaper.
Estimate stress_triple(const CavityGeometry &geom, Axis axis);

// Excess of a cavity over the infinitely long waveguide with the same cross section, with
// both transverse indices Poisson-resummed. For axis r and cross section (a_p, a_q):
//   stress: T_rr - T_inf = -(1 / 2 pi a_p a_q) sum_{n >= 1} sum'_k q^2 [K0(x) + K1(x) / x]
//   energy: E^f + a_p a_q a_r T_inf - (pi / 48)(1 / a_p + 1 / a_q) = -(1 / 4 pi) sum_{n >= 1} sum'_k q K1(x) / n
// with k = (m_p / 2 a_p, m_q / 2 a_q), q = 2 pi |k| and x = 2 a_r n q. Every term is negative
// and shrinks monotonically with a_r. E^f here is the total energy, not the density.
struct WaveguideExcess
{
    Estimate energy;
    Estimate stress;
};
WaveguideExcess waveguide_excess(const CavityGeometry &geom, Axis axis);

// The excess series needs few terms once a_axis is not small against the cross section.
bool waveguide_excess_is_short(const CavityGeometry &geom, Axis axis);

} // namespace casimir::resummed

#endif
