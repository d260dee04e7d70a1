#include "casimir/piston.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "casimir/cavity.hpp"
#include "casimir/errors.hpp"
#include "casimir/resummation.hpp"

namespace casimir
{

using std::numbers::pi;

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();

Estimate cavity_energy(const CavityGeometry &g, const Regulator &reg, const SumConfig &cfg)
{
    return g.volume() * regularized_quantity(Quantity::energy(), g, reg, cfg);
}

Estimate axial_stress(const CavityGeometry &g, const Regulator &reg, const SumConfig &cfg)
{
    return regularized_quantity(Quantity::stress(Axis::Three), g, reg, cfg);
}

// Piston combinations are differences of cavities sharing a cross section. Measured from the
// infinitely long waveguide, the cavity values lose only pieces linear in a3, which cancel in
// every combination, and keep full relative precision once a3 is comparable to the cross section.
bool use_excess(const Regulator &reg, const SumConfig &cfg)
{
    return reg.finite_part_mode() && cfg.strategy == Strategy::Accelerated;
}

Estimate stress_excess(const CavityGeometry &g, const SumConfig &cfg, const Estimate &t_inf)
{
    if (resummed::waveguide_excess_is_short(g, Axis::Three))
        return resummed::waveguide_excess(g, Axis::Three).stress;
    return axial_stress(g, Regulator{}, cfg) - t_inf;
}

Estimate energy_excess(const CavityGeometry &g, const SumConfig &cfg, const Estimate &t_inf)
{
    if (resummed::waveguide_excess_is_short(g, Axis::Three))
        return resummed::waveguide_excess(g, Axis::Three).energy;
    Estimate e = cavity_energy(g, Regulator{}, cfg) + g.volume() * t_inf;
    e.value -= pi / 48.0 * (1.0 / g.side(0) + 1.0 / g.side(1));
    return e;
}

double reference_separation(const PistonGeometry &p, RatioReference ref)
{
    return ref == RatioReference::InterfacePosition ? p.a3() : std::min(p.a3(), p.length() - p.a3());
}

} // namespace

Estimate piston_energy(const PistonGeometry &p, const Regulator &reg, const SumConfig &cfg)
{
    if (p.a3() == 0.5 * p.length())
        return {0.0, 0.0};
    if (use_excess(reg, cfg)) {
        const Estimate t_inf = waveguide_t33_limit(p.a1(), p.a2(), cfg);
        return energy_excess(p.left(), cfg, t_inf) + energy_excess(p.right(), cfg, t_inf) -
               2.0 * energy_excess(p.midpoint_cavity(), cfg, t_inf);
    }
    const Estimate mid = cavity_energy(p.midpoint_cavity(), reg, cfg);
    return cavity_energy(p.left(), reg, cfg) + cavity_energy(p.right(), reg, cfg) - 2.0 * mid;
}

Estimate piston_energy(const PistonGeometry &p, const SumConfig &cfg) { return piston_energy(p, Regulator{}, cfg); }

Estimate pressure_difference(const PistonGeometry &p, const Regulator &reg, const SumConfig &cfg)
{
    if (p.a3() == 0.5 * p.length())
        return {0.0, 0.0};
    if (use_excess(reg, cfg)) {
        const Estimate t_inf = waveguide_t33_limit(p.a1(), p.a2(), cfg);
        return stress_excess(p.left(), cfg, t_inf) - stress_excess(p.right(), cfg, t_inf);
    }
    return axial_stress(p.left(), reg, cfg) - axial_stress(p.right(), reg, cfg);
}

Estimate pressure_difference(const PistonGeometry &p, const SumConfig &cfg)
{
    return pressure_difference(p, Regulator{}, cfg);
}

double ConsistencyReport::tolerance() const
{
    return std::max(1e-6 * std::abs(stress_difference), 2.0 * std::abs(truncation_estimate) + noise_estimate);
}

ConsistencyReport pressure_difference_consistency(const PistonGeometry &p, const SumConfig &cfg,
                                                  std::optional<double> step)
{
    const double a3 = p.a3(), len = p.length();
    const double h = step.value_or(1e-3 * std::min(a3, len - a3));
    if (!(h > 0.0) || a3 - 2.0 * h <= 0.0 || a3 + 2.0 * h >= len)
        throw ValidationError("finite-difference step must keep a3 +- 2h inside (0, L)");
    const double area = p.a1() * p.a2();
    const Regulator none;
    const bool excess = use_excess(none, cfg);
    const Estimate t_inf = excess ? waveguide_t33_limit(p.a1(), p.a2(), cfg) : Estimate{};
    auto energy = [&](const CavityGeometry &g) {
        return excess ? energy_excess(g, cfg, t_inf) : cavity_energy(g, none, cfg);
    };

    double noise = 0.0;
    // E(x) + E(L - x), up to a constant when measured from the waveguide
    auto bracket = [&](double x) {
        const CavityGeometry l{p.a1(), p.a2(), x}, r{p.a1(), p.a2(), len - x};
        const Estimate el = energy(l), er = energy(r);
        noise += el.error + er.error + 4.0 * kEps * (std::abs(el.value) + std::abs(er.value));
        return el.value + er.value;
    };
    const double fd1 = -(bracket(a3 + h) - bracket(a3 - h)) / (2.0 * h * area);
    const double noise1 = noise / (2.0 * h * area);
    const double fd2 = -(bracket(a3 + 2.0 * h) - bracket(a3 - 2.0 * h)) / (4.0 * h * area);

    ConsistencyReport rep;
    rep.finite_difference = fd1;
    rep.stress_difference = pressure_difference(p, cfg).value;
    rep.discrepancy = std::abs(fd1 - rep.stress_difference);
    rep.step = h;
    rep.truncation_estimate = (fd2 - fd1) / 3.0;
    rep.noise_estimate = noise1;
    return rep;
}

Estimate semi_infinite_pressure(double a1, double a3, const SumConfig &cfg)
{
    cfg.validate();
    const CavityGeometry g{a1, a1, a3};
    return accelerated_t33(g, cfg) - waveguide_t33_limit(a1, a1, cfg);
}

Estimate waveguide_t33_limit(double a1, double a2, const SumConfig &cfg)
{
    cfg.validate();
    const CavityGeometry cross{a1, a2, 1.0}; // validates the cross section
    return (1.0 / (pi * pi)) * resummed::epstein_quartic(cross.side(0), cross.side(1));
}

double parallel_plate_pressure(double a3)
{
    if (!std::isfinite(a3) || a3 <= 0.0) {
        if (a3 == std::numeric_limits<double>::infinity())
            return 0.0;
        throw ValidationError("plate separation must be positive");
    }
    return pi * pi / (240.0 * a3 * a3 * a3 * a3);
}

PistonObservables piston_observables(const PistonGeometry &p, const Regulator &reg, const SumConfig &cfg,
                                     RatioReference ref)
{
    PistonObservables out;
    const Estimate dp = pressure_difference(p, reg, cfg);
    out.energy_rel_midpoint = piston_energy(p, reg, cfg).value;
    out.dp3 = dp.value;
    out.p_cas = parallel_plate_pressure(reference_separation(p, ref));
    out.ratio = out.dp3 / out.p_cas;
    out.error_bound = dp.error;
    return out;
}

PistonObservables piston_observables(const PistonGeometry &p, const SumConfig &cfg, RatioReference ref)
{
    return piston_observables(p, Regulator{}, cfg, ref);
}

double pressure_ratio(const PistonGeometry &p, const SumConfig &cfg, RatioReference ref)
{
    return pressure_difference(p, cfg).value / parallel_plate_pressure(reference_separation(p, ref));
}

} // namespace casimir
