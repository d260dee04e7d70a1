#ifndef CASIMIR_SUMKERNEL_HPP
#define CASIMIR_SUMKERNEL_HPP

#include <array>
#include <cstdint>

#include "casimir/geometry.hpp"

namespace casimir
{

// Image (mode) index of the cavity lattice. The all-zero triple is the Weyl term.
struct ImageIndex
{
    std::int64_t n1 = 0, n2 = 0, n3 = 0;
};

// u_n^2 = sum_i (2 a_i n_i)^2
double image_norm_sq(const ImageIndex &n, const CavityGeometry &geom);

enum class Strategy
{
    Direct,     // box-shell partial sums with Richardson extrapolation of the tail
    Accelerated // one index resummed in closed form, exponentially convergent remainder
};

struct SumConfig
{
    Strategy strategy = Strategy::Accelerated;
    double rel_tol = 1e-8;
    int max_shell = 2048; // cap on max |n_i|
    int min_shell = 4;    // shells summed before convergence may be declared

    void validate() const; // throws ValidationError
};

// Time-splitting parameter of the two-point functions. sigma == 0 selects finite-part mode.
class Regulator
{
public:
    explicit Regulator(double sigma = 0.0); // throws ValidationError
    double sigma() const { return sigma_; }
    bool finite_part_mode() const { return sigma_ == 0.0; }

private:
    double sigma_;
};

// Value with an estimated absolute error.
struct Estimate
{
    double value = 0.0;
    double error = 0.0;

    Estimate &operator+=(const Estimate &o)
    {
        value += o.value;
        error += o.error;
        return *this;
    }
    friend Estimate operator+(Estimate a, const Estimate &b) { return a += b; }
    friend Estimate operator-(Estimate a, const Estimate &b)
    {
        a.value -= b.value;
        a.error += b.error;
        return a;
    }
    friend Estimate operator*(double s, Estimate a)
    {
        a.value *= s;
        a.error *= (s < 0 ? -s : s);
        return a;
    }
};

// -(1/pi^2) sum_n (3 sigma^2 + u^2) / (u^2 - sigma^2)^3, all-zero index excluded.
Estimate energy_triple_sum(const CavityGeometry &geom, const Regulator &reg, const SumConfig &cfg);

// -(1/pi^2) sum_n (4 (2 a_i n_i)^2 - u^2 + sigma^2) / (u^2 - sigma^2)^3, all-zero index excluded.
Estimate stress_triple_sum(const CavityGeometry &geom, Axis axis, const Regulator &reg,
                           const SumConfig &cfg);

// (a_i / 4 pi V) sum_l (sigma^2 + (2 a_i l)^2) / ((2 a_i l)^2 - sigma^2)^2, l = 0 excluded.
// At sigma = 0 this is pi / (48 V a_i).
Estimate edge_sum(const CavityGeometry &geom, Axis axis, const Regulator &reg, const SumConfig &cfg);

// Finite T_33 with the n_3 index resummed analytically (finite-part mode only).
Estimate accelerated_t33(const CavityGeometry &geom, const SumConfig &cfg);

// Energy and the three stress triple sums, evaluated in one direct lattice pass.
struct TripleSums
{
    Estimate energy;
    std::array<Estimate, 3> stress;
    int shells = 0;         // last shell counter reached
    std::int64_t terms = 0; // lattice points visited (octant representatives)
};

// Direct evaluation of all four triple sums. Convergence is judged on value + offsets[c]
// for the channels selected in `active` (energy, t11, t22, t33), which lets callers
// demand relative accuracy on the finite quantity rather than on the bare sum.
TripleSums direct_triple_sums(const CavityGeometry &geom, const Regulator &reg, const SumConfig &cfg,
                              const std::array<double, 4> &offsets = {},
                              const std::array<bool, 4> &active = {true, true, true, true});

// Throws RegulatorResonance if sigma^2 is within 1e-6 (relative) of some u_n^2, n != 0.
void check_resonance(const CavityGeometry &geom, const Regulator &reg);

} // namespace casimir

#endif
