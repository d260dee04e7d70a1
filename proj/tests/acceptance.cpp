// Acceptance suite. One line per criterion: "criterion N: PASS|FAIL <detail>".
// Exit status is non-zero if any selected criterion fails.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "casimir/analysis.hpp"
#include "casimir/cavity.hpp"
#include "casimir/errors.hpp"
#include "casimir/piston.hpp"
#include "oracle.hpp"

using namespace casimir;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

CavityGeometry log_uniform_cavity(std::mt19937_64 &rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return {std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))};
}

PistonGeometry random_piston(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double L = 1.0 + 9.0 * u(rng);
    const double y = std::exp(std::log(0.01) + u(rng) * std::log(100.0));
    const double z = L * (0.05 + 0.9 * u(rng));
    return {1.0, y, L, z};
}

int sign_changes(const std::vector<double> &v)
{
    int n = 0;
    double last = 0.0;
    for (double x : v) {
        if (x == 0.0)
            continue;
        if (last != 0.0 && (x > 0) != (last > 0))
            ++n;
        last = x;
    }
    return n;
}

std::vector<double> dp3_profile(double L, double y, const std::vector<double> &zs)
{
    std::vector<double> out;
    for (double z : zs)
        out.push_back(pressure_difference(PistonGeometry{1.0, y, L, z}, SumConfig{}).value);
    return out;
}

Outcome trace_identity()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const StressState s = stress_state(log_uniform_cavity(rng, 0.1, 10.0), SumConfig{});
        const double gap = std::abs(s.energy_density - (s.t11 + s.t22 + s.t33));
        worst = std::max(worst, gap / std::max(s.error_bound, 1e-300));
        bad += gap > 4.0 * s.error_bound;
    }
    const double t = seconds_since(t0);
    return {bad == 0 && t <= 60.0, fmt("%d/100 violations, worst gap %.2f x error bound, %.2f s", bad, worst, t)};
}

Outcome parallel_plates()
{
    const StressState s = stress_state(CavityGeometry{400, 400, 1}, SumConfig{});
    const double de = rel(s.energy_density, oracle::plate_energy), dt = rel(s.t33, oracle::plate_pressure);
    return {de <= 5e-3 && dt <= 5e-3,
            fmt("energy %.10g (off %.3g%%), T33 %.10g (off %.3g%%)", s.energy_density, 100 * de, s.t33, 100 * dt)};
}

Outcome elongated()
{
    const StressState s = stress_state(CavityGeometry{1, 1, 400}, SumConfig{});
    const double de = rel(s.energy_density, -oracle::waveguide), dt = rel(s.t33, oracle::waveguide);
    return {de <= 5e-3 && dt <= 5e-3,
            fmt("energy %.10g vs -G/24 (off %.3g%%), T33 %.10g vs G/24 (off %.3g%%)", s.energy_density, 100 * de,
                s.t33, 100 * dt)};
}

Outcome piston_symmetry()
{
    std::mt19937_64 rng(77);
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const PistonGeometry p = random_piston(rng);
        const PistonGeometry q = p.with_interface(p.length() - p.a3());
        const double e_scale = std::abs(total_energy_finite(p.left(), SumConfig{}).value) +
                               std::abs(total_energy_finite(p.right(), SumConfig{}).value) +
                               2 * std::abs(total_energy_finite(p.midpoint_cavity(), SumConfig{}).value);
        const double t_scale = std::abs(stress_finite(p.left(), Axis::Three, SumConfig{}).value) +
                               std::abs(stress_finite(p.right(), Axis::Three, SumConfig{}).value);
        const double de = std::abs(piston_energy(p, SumConfig{}).value - piston_energy(q, SumConfig{}).value) / e_scale;
        const double dp = std::abs(pressure_difference(p, SumConfig{}).value + pressure_difference(q, SumConfig{}).value) /
                          t_scale;
        const PistonGeometry mid = p.with_interface(0.5 * p.length());
        const bool zero = piston_energy(mid, SumConfig{}).value == 0.0 && pressure_difference(mid, SumConfig{}).value == 0.0;
        worst = std::max({worst, de, dp});
        bad += de > 1e-10 || dp > 1e-10 || !zero;
    }
    return {bad == 0, fmt("%d/50 violations, worst relative asymmetry %.3g", bad, worst)};
}

Outcome energy_force()
{
    std::mt19937_64 rng(91);
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const ConsistencyReport r = pressure_difference_consistency(random_piston(rng), SumConfig{});
        worst = std::max(worst, r.discrepancy / r.tolerance());
        bad += !r.consistent();
    }
    return {bad == 0, fmt("%d/20 inconsistent, worst discrepancy %.3g x tolerance", bad, worst)};
}

Outcome semi_infinite()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double a3 : {0.5, 1.0, 2.0}) {
        const double inf = semi_infinite_pressure(1.0, a3, SumConfig{}).value;
        const double fin = pressure_difference(PistonGeometry{1, 1, 50, a3}, SumConfig{}).value;
        worst = std::max(worst, std::abs(inf - fin));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-6 && t <= 30.0, fmt("max |difference| %.3g, %.2f s", worst, t)};
}

Outcome regime_structure()
{
    std::vector<double> zs;
    for (int k = 1; k < 200; ++k)
        zs.push_back(0.0125 * k);
    const int square = sign_changes(dp3_profile(5.0, 1.0, zs));
    const int thin = sign_changes(dp3_profile(5.0, 0.01, zs));
    const double curvature = midpoint_curvature(5.0, 0.01, SumConfig{});
    return {square == 0 && thin == 1 && curvature > 0,
            fmt("y=1: %d sign changes; y=0.01: %d sign changes, midpoint curvature %.4g (%s)", square, thin, curvature,
                curvature > 0 ? "minimum" : "maximum")};
}

Outcome critical_ratio()
{
    try {
        const CriticalRatioResult r = find_critical_ratio(5.0, SumConfig{});
        return {r.y_crit >= 0.01 && r.y_crit <= 0.04, fmt("y_crit = %.5g after %d bisections", r.y_crit, r.iterations)};
    } catch (const BadBracket &e) {
        return {false, std::string("no critical ratio: ") + e.what()};
    }
}

Outcome ratio_magnitude()
{
    const double thin = pressure_ratio(PistonGeometry{1, 0.01, 5, 1}, SumConfig{});
    double worst = 0.0, at = 0.0;
    for (int k = 0; k <= 42; ++k) {
        const double z = 0.2 + 0.05 * k;
        const double r = std::abs(pressure_ratio(PistonGeometry{1, 1, 5, z}, SumConfig{}));
        if (r > worst) {
            worst = r;
            at = z;
        }
    }
    const bool thin_ok = std::abs(thin) >= 35 && std::abs(thin) <= 65;
    return {thin_ok && worst < 0.1,
            fmt("y=0.01, z=1: ratio %.4g; y=1: max |ratio| %.4g at z=%.2f", thin, worst, at)};
}

Outcome strategies()
{
    SumConfig direct;
    direct.strategy = Strategy::Direct;
    double worst = 0.0, t_acc = 0.0, t_dir = 0.0;
    for (double a2 : {0.5, 0.75, 1.0, 1.5, 2.0})
        for (double a3 : {1.0, 1.5, 2.0, 3.0, 4.0}) {
            const CavityGeometry g{1.0, a2, a3};
            auto t0 = std::chrono::steady_clock::now();
            const StressState a = stress_state(g, SumConfig{});
            t_acc += seconds_since(t0);
            t0 = std::chrono::steady_clock::now();
            const StressState d = stress_state(g, direct);
            t_dir += seconds_since(t0);
            for (auto [x, y] : {std::pair{a.energy_density, d.energy_density}, {a.t11, d.t11}, {a.t22, d.t22}, {a.t33, d.t33}})
                worst = std::max(worst, rel(x, y));
        }
    const double speedup = t_dir / t_acc;
    std::string note = speedup >= 10 ? "" : " (below 10x, informative)";
    return {worst <= 1e-8 && speedup >= 2.0,
            fmt("max relative disagreement %.3g, speedup %.1fx%s", worst, speedup, note.c_str())};
}

Outcome scaling()
{
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const CavityGeometry g = log_uniform_cavity(rng, 0.2, 5.0);
        const StressState s = stress_state(g, SumConfig{});
        for (double lambda : {0.5, 2.0, 10.0}) {
            const StressState t = stress_state(g.scaled(lambda), SumConfig{});
            const double f = std::pow(lambda, -4.0);
            for (auto [x, y] : {std::pair{t.energy_density, s.energy_density}, {t.t11, s.t11}, {t.t22, s.t22}, {t.t33, s.t33}})
                worst = std::max(worst, rel(x, f * y));
        }
    }
    return {worst <= 1e-12, fmt("max relative deviation from lambda^-4 %.3g", worst)};
}

Outcome cutoff()
{
    std::vector<double> zs;
    for (int k = 1; k <= 9; ++k)
        if (k != 5)
            zs.push_back(0.5 * k);
    const auto rows = cutoff_study({5.0, 1.0, {1e-4}, zs, SumConfig{}});
    const std::size_t n = zs.size();
    double worst = 0.0;
    int failed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const SweepRow &f = rows[i].row, &r = rows[n + i].row;
        failed += !f.ok() || !r.ok();
        worst = std::max({worst, rel(r.dp3, f.dp3), rel(r.energy, f.energy)});
    }
    const std::vector<double> near{0.004, 0.008, 0.01, 0.015, 0.03};
    const auto close = cutoff_study({5.0, 1.0, {1e-2}, near, SumConfig{}});
    bool finite = true;
    std::ostringstream os;
    for (std::size_t i = 0; i < near.size(); ++i) {
        const SweepRow &r = close[near.size() + i].row;
        finite = finite && r.ok() && std::isfinite(r.dp3);
        os << " z=" << near[i] << ":" << (r.ok() ? fmt("%.3g", r.dp3) : r.status);
    }
    return {failed == 0 && worst <= 1e-3 && finite,
            fmt("sigma=1e-4 max relative change %.3g (%d failed cells); sigma=1e-2 dp3", worst, failed) + os.str()};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"trace identity", trace_identity},
        {"parallel-plate limit", parallel_plates},
        {"elongated limit", elongated},
        {"piston symmetry", piston_symmetry},
        {"energy-force consistency", energy_force},
        {"semi-infinite piston", semi_infinite},
        {"regime structure", regime_structure},
        {"critical ratio", critical_ratio},
        {"ratio magnitude", ratio_magnitude},
        {"direct vs accelerated", strategies},
        {"scaling", scaling},
        {"cutoff study", cutoff},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only)
            continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << "  "
                  << o.detail << std::endl;
    }
    return failures ? 1 : 0;
}
