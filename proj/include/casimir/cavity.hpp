#ifndef CASIMIR_CAVITY_HPP
#define CASIMIR_CAVITY_HPP

#include "casimir/geometry.hpp"
#include "casimir/sumkernel.hpp"

namespace casimir
{

// Finite parts of the energy density and diagonal stresses of one cavity.
// The stress tensor is traceless: energy_density == t11 + t22 + t33 up to 4 * error_bound.
struct StressState
{
    double energy_density = 0.0;
    double t11 = 0.0, t22 = 0.0, t33 = 0.0;
    double error_bound = 0.0;

    double stress(Axis axis) const
    {
        return axis == Axis::One ? t11 : axis == Axis::Two ? t22 : t33;
    }
};

// Coefficients of the sigma^-4 and sigma^-2 divergences removed from a finite part.
struct DivergentParts
{
    double quartic_coeff = 0.0;   // dimensionless
    double quadratic_coeff = 0.0; // length^2
};

// Energy density, or the wall pressure T_ii on one axis.
struct Quantity
{
    enum class Kind
    {
        Energy,
        Stress
    };
    Kind kind = Kind::Energy;
    Axis axis = Axis::Three;

    static Quantity energy() { return {Kind::Energy, Axis::Three}; }
    static Quantity stress(Axis a) { return {Kind::Stress, a}; }
};

Estimate energy_density_finite(const CavityGeometry &geom, const SumConfig &cfg);
Estimate stress_finite(const CavityGeometry &geom, Axis axis, const SumConfig &cfg);
StressState stress_state(const CavityGeometry &geom, const SumConfig &cfg);

DivergentParts divergent_parts(Quantity what, const CavityGeometry &geom);

// Finite terms evaluated at a finite regulator. sigma = 0 reproduces the finite parts exactly.
Estimate regularized_quantity(Quantity what, const CavityGeometry &geom, const Regulator &reg,
                              const SumConfig &cfg);
// All four regularized quantities from a single lattice pass.
StressState regularized_stress_state(const CavityGeometry &geom, const Regulator &reg,
                                     const SumConfig &cfg);

// E^f = V * energy density, in units of 1/length.
Estimate total_energy_finite(const CavityGeometry &geom, const SumConfig &cfg);

} // namespace casimir

#endif
