#ifndef CASIMIR_ANALYSIS_HPP
#define CASIMIR_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "casimir/piston.hpp"
#include "casimir/sumkernel.hpp"

namespace casimir
{

// Grid over aspect ratio y = a2/a1 and interface position z = a3/a1, with a1 = 1.
struct SweepSpec
{
    double L_rel = 5.0;
    std::vector<double> y_values;
    std::vector<double> z_values;
    SumConfig cfg;
    RatioReference ref = RatioReference::InterfacePosition;

    void validate() const; // throws ValidationError
};

struct SweepRow
{
    double y = 0.0, z = 0.0, L_rel = 0.0;
    double energy = 0.0, dp3 = 0.0, p_cas = 0.0, ratio = 0.0, error_bound = 0.0;
    std::string status = "ok"; // failure message for rows that could not be computed

    bool ok() const { return status == "ok"; }
};

// Rows in y-major, z-minor order. Failed rows carry NaN values and a status message.
std::vector<SweepRow> sweep(const SweepSpec &spec);

// Worker count: CASIMIR_THREADS if set and non-zero, otherwise hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to `threads` workers; results must go to slot i.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body);

// Bisection on a scalar sign change.
struct BisectionResult
{
    double root = 0.0;
    double lo = 0.0, hi = 0.0;
    int iterations = 0;
    double f_lo = 0.0, f_hi = 0.0;
};
BisectionResult bisect(const std::function<double(double)> &f, double lo, double hi, double rel_width);

struct CriticalRatioResult
{
    double y_crit = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    int iterations = 0;
    double criterion_lo = 0.0, criterion_hi = 0.0;
};

// d^2 E_piston / da3^2 at a3 = L/2 (a1 = 1): second central difference with h = L/100 and one
// Richardson refinement. Positive means the midpoint is a local energy minimum.
double midpoint_curvature(double L_rel, double y, const SumConfig &cfg);

// Aspect ratio where midpoint_curvature changes sign. Throws BadBracket without a sign change.
CriticalRatioResult find_critical_ratio(double L_rel, const SumConfig &cfg, double y_lo = 0.005,
                                        double y_hi = 1.0);

struct StiffnessResult
{
    double k = 0.0; // restoring constant, force = -k * displacement
    std::optional<double> omega;
};

// k = -a1 a2 d(dp3)/da3 at the midpoint; omega = sqrt(k / mass) when k > 0 and a mass is given.
StiffnessResult midpoint_stiffness(const PistonGeometry &p, const SumConfig &cfg, double h,
                                   std::optional<double> mass = std::nullopt);

struct CutoffSpec
{
    double L_rel = 5.0;
    double y = 1.0;
    std::vector<double> sigma_values; // in units of a1; sigma = 0 is always added
    std::vector<double> z_values;
    SumConfig cfg;

    void validate() const;
};

struct CutoffRow
{
    double sigma = 0.0;
    SweepRow row;
};

// One row per (sigma, z); the sigma = 0 block comes first.
std::vector<CutoffRow> cutoff_study(const CutoffSpec &spec);

} // namespace casimir

#endif
