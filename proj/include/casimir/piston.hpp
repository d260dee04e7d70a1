#ifndef CASIMIR_PISTON_HPP
#define CASIMIR_PISTON_HPP

#include <optional>

#include "casimir/geometry.hpp"
#include "casimir/sumkernel.hpp"

namespace casimir
{

// Which separation normalises the ratio dp3 / P_Cas.
enum class RatioReference
{
    InterfacePosition, // P_Cas(a3), the coordinate on the sweep axis
    NearestWall        // P_Cas(min(a3, L - a3))
};

struct PistonObservables
{
    double energy_rel_midpoint = 0.0; // E(a3) + E(L - a3) - 2 E(L/2)
    double dp3 = 0.0;                 // positive pushes the interface towards +e3
    double p_cas = 0.0;
    double ratio = 0.0;
    double error_bound = 0.0; // on dp3
};

// Energy measured from the configuration with the interface at L/2.
Estimate piston_energy(const PistonGeometry &p, const SumConfig &cfg);
Estimate piston_energy(const PistonGeometry &p, const Regulator &reg, const SumConfig &cfg);

// dp3 = T33^f(a1, a2, a3) - T33^f(a1, a2, L - a3).
Estimate pressure_difference(const PistonGeometry &p, const SumConfig &cfg);
Estimate pressure_difference(const PistonGeometry &p, const Regulator &reg, const SumConfig &cfg);

// Central-difference force -(1/a1 a2) d/da3 [E^f(a3) + E^f(L - a3)] against the stress form.
struct ConsistencyReport
{
    double finite_difference = 0.0;
    double stress_difference = 0.0;
    double discrepancy = 0.0;         // |finite_difference - stress_difference|
    double step = 0.0;                // h
    double truncation_estimate = 0.0; // O(h^2) term, from comparing steps h and 2h
    double noise_estimate = 0.0;      // energy errors and rounding divided by 2h

    // max(1e-6 relative, 2 * O(h^2) estimate + noise)
    double tolerance() const;
    bool consistent() const { return discrepancy <= tolerance(); }
};
ConsistencyReport pressure_difference_consistency(const PistonGeometry &p, const SumConfig &cfg,
                                                  std::optional<double> step = std::nullopt);

// Semi-infinite square piston (a2 = a1, L -> infinity), n3 resummed in closed form.
Estimate semi_infinite_pressure(double a1, double a3, const SumConfig &cfg);

// Axial stress of the infinitely long (a1, a2) waveguide: (1/pi^2) sum'_{(n1,n2)} rho^-4.
Estimate waveguide_t33_limit(double a1, double a2, const SumConfig &cfg);

// pi^2 / (240 a3^4)
double parallel_plate_pressure(double a3);

double pressure_ratio(const PistonGeometry &p, const SumConfig &cfg,
                      RatioReference ref = RatioReference::InterfacePosition);

PistonObservables piston_observables(const PistonGeometry &p, const SumConfig &cfg,
                                     RatioReference ref = RatioReference::InterfacePosition);
PistonObservables piston_observables(const PistonGeometry &p, const Regulator &reg, const SumConfig &cfg,
                                     RatioReference ref = RatioReference::InterfacePosition);

} // namespace casimir

#endif
