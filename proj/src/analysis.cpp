#include "casimir/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "casimir/errors.hpp"

namespace casimir
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kContactGuard = 1e-3;

void require_increasing(const std::vector<double> &v, const char *name)
{
    if (v.empty())
        throw ValidationError(std::string(name) + " must not be empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw ValidationError(std::string(name) + " must be strictly increasing");
}

void require_interior(const std::vector<double> &zs, double L_rel)
{
    for (double z : zs)
        if (!(z >= kContactGuard && z <= L_rel - kContactGuard))
            throw ValidationError("z values must stay at least 1e-3 inside (0, L_rel)");
}

SweepRow failed_row(double y, double z, double L_rel, const std::string &why)
{
    SweepRow r;
    r.y = y;
    r.z = z;
    r.L_rel = L_rel;
    r.energy = r.dp3 = r.p_cas = r.ratio = r.error_bound = kNaN;
    r.status = why;
    return r;
}

SweepRow evaluate_row(double y, double z, double L_rel, const Regulator &reg, const SumConfig &cfg,
                      RatioReference ref)
{
    try {
        const PistonGeometry p{1.0, y, L_rel, z};
        const PistonObservables obs = piston_observables(p, reg, cfg, ref);
        SweepRow r;
        r.y = y;
        r.z = z;
        r.L_rel = L_rel;
        r.energy = obs.energy_rel_midpoint;
        r.dp3 = obs.dp3;
        r.p_cas = obs.p_cas;
        r.ratio = obs.ratio;
        r.error_bound = obs.error_bound;
        return r;
    } catch (const std::exception &e) {
        return failed_row(y, z, L_rel, e.what());
    }
}

} // namespace

void SweepSpec::validate() const
{
    if (!std::isfinite(L_rel) || L_rel <= 0.0)
        throw ValidationError("L_rel must be positive");
    require_increasing(y_values, "y values");
    require_increasing(z_values, "z values");
    for (double y : y_values)
        if (!std::isfinite(y) || y <= 0.0)
            throw ValidationError("y values must be positive");
    require_interior(z_values, L_rel);
    cfg.validate();
}

unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("CASIMIR_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            n = static_cast<unsigned>(v);
    }
    return n;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            body(i);
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
}

std::vector<SweepRow> sweep(const SweepSpec &spec)
{
    spec.validate();
    const std::size_t nz = spec.z_values.size();
    std::vector<SweepRow> rows(spec.y_values.size() * nz);
    parallel_for(rows.size(), worker_count(), [&](std::size_t i) {
        rows[i] = evaluate_row(spec.y_values[i / nz], spec.z_values[i % nz], spec.L_rel, Regulator{}, spec.cfg,
                               spec.ref);
    });
    return rows;
}

BisectionResult bisect(const std::function<double(double)> &f, double lo, double hi, double rel_width)
{
    if (!(lo < hi))
        throw ValidationError("bisection bracket must satisfy lo < hi");
    BisectionResult r;
    r.lo = lo;
    r.hi = hi;
    r.f_lo = f(lo);
    r.f_hi = f(hi);
    if (std::signbit(r.f_lo) == std::signbit(r.f_hi) && r.f_lo != 0.0 && r.f_hi != 0.0) {
        std::ostringstream os;
        os << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << r.f_lo << ", f(hi)=" << r.f_hi;
        throw BadBracket(os.str());
    }
    while (r.hi - r.lo > rel_width * 0.5 * (std::abs(r.lo) + std::abs(r.hi))) {
        const double mid = 0.5 * (r.lo + r.hi);
        const double fm = f(mid);
        ++r.iterations;
        if (fm == 0.0) {
            r.lo = r.hi = mid;
            r.f_lo = r.f_hi = 0.0;
            break;
        }
        if (std::signbit(fm) == std::signbit(r.f_lo)) {
            r.lo = mid;
            r.f_lo = fm;
        } else {
            r.hi = mid;
            r.f_hi = fm;
        }
    }
    r.root = 0.5 * (r.lo + r.hi);
    return r;
}

double midpoint_curvature(double L_rel, double y, const SumConfig &cfg)
{
    const PistonGeometry mid{1.0, y, L_rel, 0.5 * L_rel};
    auto second_difference = [&](double h) {
        const double up = piston_energy(mid.with_interface(0.5 * L_rel + h), cfg).value;
        const double down = piston_energy(mid.with_interface(0.5 * L_rel - h), cfg).value;
        return (up + down) / (h * h); // E_piston(L/2) = 0
    };
    const double h = 1e-2 * L_rel;
    return (4.0 * second_difference(0.5 * h) - second_difference(h)) / 3.0;
}

CriticalRatioResult find_critical_ratio(double L_rel, const SumConfig &cfg, double y_lo, double y_hi)
{
    if (!std::isfinite(L_rel) || L_rel <= 0.0)
        throw ValidationError("L_rel must be positive");
    if (!(y_lo > 0.0 && y_lo < y_hi))
        throw ValidationError("aspect-ratio bracket must satisfy 0 < y_lo < y_hi");
    const BisectionResult b =
        bisect([&](double y) { return midpoint_curvature(L_rel, y, cfg); }, y_lo, y_hi, 1e-3);
    return {b.root, b.lo, b.hi, b.iterations, b.f_lo, b.f_hi};
}

StiffnessResult midpoint_stiffness(const PistonGeometry &p, const SumConfig &cfg, double h,
                                   std::optional<double> mass)
{
    const double half = 0.5 * p.length();
    if (std::abs(p.a3() - half) > 1e-12 * p.length())
        throw ValidationError("stiffness is defined with the interface at L/2");
    if (!(h > 0.0 && h < half))
        throw ValidationError("stiffness step must lie in (0, L/2)");
    const double up = pressure_difference(p.with_interface(half + h), cfg).value;
    const double down = pressure_difference(p.with_interface(half - h), cfg).value;
    StiffnessResult r;
    r.k = -p.a1() * p.a2() * (up - down) / (2.0 * h);
    if (mass) {
        if (!(*mass > 0.0))
            throw ValidationError("plate mass must be positive");
        if (r.k > 0.0)
            r.omega = std::sqrt(r.k / *mass);
    }
    return r;
}

void CutoffSpec::validate() const
{
    if (!std::isfinite(L_rel) || L_rel <= 0.0)
        throw ValidationError("L_rel must be positive");
    if (!std::isfinite(y) || y <= 0.0)
        throw ValidationError("y must be positive");
    require_increasing(z_values, "z values");
    for (double z : z_values)
        if (!(z > 0.0 && z < L_rel))
            throw ValidationError("z values must lie inside (0, L_rel)");
    const double limit = 0.1 * std::min(1.0, y);
    for (double s : sigma_values)
        if (!(s > 0.0 && s <= limit))
            throw ValidationError("sigma values must lie in (0, min(a1, a2) / 10]");
    cfg.validate();
}

std::vector<CutoffRow> cutoff_study(const CutoffSpec &spec)
{
    spec.validate();
    std::vector<double> sigmas{0.0};
    sigmas.insert(sigmas.end(), spec.sigma_values.begin(), spec.sigma_values.end());
    const std::size_t nz = spec.z_values.size();
    std::vector<CutoffRow> rows(sigmas.size() * nz);
    parallel_for(rows.size(), worker_count(), [&](std::size_t i) {
        const double sigma = sigmas[i / nz];
        const double z = spec.z_values[i % nz];
        rows[i].sigma = sigma;
        rows[i].row = evaluate_row(spec.y, z, spec.L_rel, Regulator{sigma}, spec.cfg,
                                   RatioReference::InterfacePosition);
    });
    return rows;
}

} // namespace casimir
