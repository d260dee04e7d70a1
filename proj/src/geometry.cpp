#include "casimir/geometry.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir
{

Axis axis_from_number(int one_based)
{
    if (one_based < 1 || one_based > 3)
        throw ValidationError("axis must be 1, 2 or 3, got " + std::to_string(one_based));
    return static_cast<Axis>(one_based - 1);
}

namespace
{

void require_length(double v, const char *name)
{
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(std::string(name) + " must be a positive finite length, got " +
                              std::to_string(v));
}

} // namespace

CavityGeometry::CavityGeometry(double a1, double a2, double a3) : sides_{a1, a2, a3}
{
    require_length(a1, "a1");
    require_length(a2, "a2");
    require_length(a3, "a3");
}

CavityGeometry::CavityGeometry(const std::array<double, 3> &sides)
    : CavityGeometry(sides[0], sides[1], sides[2])
{
}

CavityGeometry CavityGeometry::scaled(double lambda) const
{
    return {lambda * sides_[0], lambda * sides_[1], lambda * sides_[2]};
}

CavityGeometry CavityGeometry::permuted(const std::array<int, 3> &perm) const
{
    return {sides_.at(perm[0]), sides_.at(perm[1]), sides_.at(perm[2])};
}

PistonGeometry::PistonGeometry(double a1, double a2, double length, double a3)
    : a1_(a1), a2_(a2), length_(length), a3_(a3)
{
    require_length(a1, "a1");
    require_length(a2, "a2");
    require_length(length, "L");
    if (!std::isfinite(a3) || a3 <= 0.0 || a3 >= length)
        throw ValidationError("interface position a3 must lie strictly inside (0, L), got " +
                              std::to_string(a3));
}

} // namespace casimir
