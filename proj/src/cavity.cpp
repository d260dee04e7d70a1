#include "casimir/cavity.hpp"

#include <numbers>

#include "casimir/resummation.hpp"

namespace casimir
{

using std::numbers::pi;

namespace
{

constexpr std::array<Axis, 3> kAxes{Axis::One, Axis::Two, Axis::Three};

StressState assemble(const Estimate &e, const std::array<Estimate, 3> &t)
{
    StressState s;
    s.energy_density = e.value;
    s.t11 = t[0].value;
    s.t22 = t[1].value;
    s.t33 = t[2].value;
    s.error_bound = e.error + t[0].error + t[1].error + t[2].error;
    return s;
}

StressState direct_state(const CavityGeometry &geom, const Regulator &reg, const SumConfig &cfg)
{
    std::array<Estimate, 3> edges;
    Estimate edge_total;
    for (Axis ax : kAxes) {
        edges[index(ax)] = edge_sum(geom, ax, reg, cfg);
        edge_total += edges[index(ax)];
    }
    const TripleSums sums = direct_triple_sums(
        geom, reg, cfg, {edge_total.value, edges[0].value, edges[1].value, edges[2].value});
    return assemble(sums.energy + edge_total,
                    {sums.stress[0] + edges[0], sums.stress[1] + edges[1], sums.stress[2] + edges[2]});
}

} // namespace

Estimate energy_density_finite(const CavityGeometry &geom, const SumConfig &cfg)
{
    const Regulator none;
    Estimate out = energy_triple_sum(geom, none, cfg);
    for (Axis ax : kAxes)
        out += edge_sum(geom, ax, none, cfg);
    return out;
}

Estimate stress_finite(const CavityGeometry &geom, Axis axis, const SumConfig &cfg)
{
    const Regulator none;
    return stress_triple_sum(geom, axis, none, cfg) + edge_sum(geom, axis, none, cfg);
}

StressState stress_state(const CavityGeometry &geom, const SumConfig &cfg)
{
    cfg.validate();
    if (cfg.strategy == Strategy::Direct)
        return direct_state(geom, Regulator{}, cfg);
    return assemble(energy_density_finite(geom, cfg),
                    {stress_finite(geom, Axis::One, cfg), stress_finite(geom, Axis::Two, cfg),
                     stress_finite(geom, Axis::Three, cfg)});
}

DivergentParts divergent_parts(Quantity what, const CavityGeometry &geom)
{
    const double v = geom.volume();
    if (what.kind == Quantity::Kind::Energy) {
        const auto &a = geom.sides();
        return {3.0 / (pi * pi), (a[0] + a[1] + a[2]) / (4.0 * pi * v)};
    }
    return {1.0 / (pi * pi), geom.side(what.axis) / (4.0 * pi * v)};
}

Estimate regularized_quantity(Quantity what, const CavityGeometry &geom, const Regulator &reg,
                              const SumConfig &cfg)
{
    if (reg.finite_part_mode())
        return what.kind == Quantity::Kind::Energy ? energy_density_finite(geom, cfg)
                                                   : stress_finite(geom, what.axis, cfg);
    if (what.kind == Quantity::Kind::Stress)
        return stress_triple_sum(geom, what.axis, reg, cfg) + edge_sum(geom, what.axis, reg, cfg);
    Estimate out = energy_triple_sum(geom, reg, cfg);
    for (Axis ax : kAxes)
        out += edge_sum(geom, ax, reg, cfg);
    return out;
}

StressState regularized_stress_state(const CavityGeometry &geom, const Regulator &reg,
                                     const SumConfig &cfg)
{
    if (reg.finite_part_mode())
        return stress_state(geom, cfg);
    cfg.validate();
    return direct_state(geom, reg, cfg);
}

Estimate total_energy_finite(const CavityGeometry &geom, const SumConfig &cfg)
{
    return geom.volume() * energy_density_finite(geom, cfg);
}

} // namespace casimir
