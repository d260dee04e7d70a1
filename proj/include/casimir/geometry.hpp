#ifndef CASIMIR_GEOMETRY_HPP
#define CASIMIR_GEOMETRY_HPP

#include <array>
#include <cstddef>

namespace casimir
{

// Cavity walls are labelled by the axis of their normal.
enum class Axis : int
{
    One = 0,
    Two = 1,
    Three = 2
};

constexpr std::size_t index(Axis axis) { return static_cast<std::size_t>(axis); }
Axis axis_from_number(int one_based); // throws ValidationError outside 1..3

// Rectangular cavity with perfectly conducting walls, sides in natural units.
class CavityGeometry
{
public:
    CavityGeometry(double a1, double a2, double a3); // throws ValidationError
    explicit CavityGeometry(const std::array<double, 3> &sides);

    double side(Axis axis) const { return sides_[index(axis)]; }
    double side(std::size_t i) const { return sides_[i]; }
    const std::array<double, 3> &sides() const { return sides_; }
    double volume() const { return sides_[0] * sides_[1] * sides_[2]; }

    CavityGeometry scaled(double lambda) const;
    // Relabels sides: result.side(i) == side(perm[i]).
    CavityGeometry permuted(const std::array<int, 3> &perm) const;

    bool operator==(const CavityGeometry &) const = default;

private:
    std::array<double, 3> sides_;
};

// Two cavities (a1, a2, a3) and (a1, a2, L - a3) sharing a movable interface.
class PistonGeometry
{
public:
    PistonGeometry(double a1, double a2, double length, double a3); // throws ValidationError

    double a1() const { return a1_; }
    double a2() const { return a2_; }
    double length() const { return length_; }
    double a3() const { return a3_; }

    CavityGeometry left() const { return {a1_, a2_, a3_}; }
    CavityGeometry right() const { return {a1_, a2_, length_ - a3_}; }
    CavityGeometry midpoint_cavity() const { return {a1_, a2_, 0.5 * length_}; }
    PistonGeometry with_interface(double a3) const { return {a1_, a2_, length_, a3}; }

private:
    double a1_, a2_, length_, a3_;
};

} // namespace casimir

#endif
