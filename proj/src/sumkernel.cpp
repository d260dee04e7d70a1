#include "casimir/sumkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/resummation.hpp"
#include "summation.hpp"

namespace casimir
{

using std::numbers::pi;

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kResonanceBand = 1e-6;
constexpr std::size_t kRichardsonPoints = 6;

double square(double x) { return x * x; }

// Shell counters grow roughly by sqrt(2): 1, 2, 3, 4, 6, 8, 11, 16, 23, 32, 45, ...
std::int64_t next_shell(std::int64_t m, int step)
{
    const auto target = static_cast<std::int64_t>(std::llround(std::pow(std::numbers::sqrt2, step)));
    return std::max(m + 1, target);
}

// Polynomial extrapolation of (x_j, y_j) to x = 0 (Neville).
double extrapolate_to_zero(const std::vector<double> &xs, const std::vector<double> &ys)
{
    const std::size_t n = std::min({xs.size(), ys.size(), kRichardsonPoints});
    const std::size_t off = xs.size() - n;
    std::vector<double> p(ys.end() - static_cast<std::ptrdiff_t>(n), ys.end());
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i) {
            const double xi = xs[off + i], xk = xs[off + i + k];
            p[i] = (-xk * p[i] + xi * p[i + 1]) / (xi - xk);
        }
    return p[0];
}

// Tracks partial sums S(m) and their Richardson extrapolants for one channel.
class TailExtrapolator
{
public:
    void push(double x, double partial)
    {
        xs_.push_back(x);
        ys_.push_back(partial);
        if (xs_.size() < 2)
            return;
        const double ext = extrapolate_to_zero(xs_, ys_);
        if (has_ext_) {
            prev_err_ = err_;
            err_ = std::abs(ext - ext_);
            ++n_err_;
        }
        ext_ = ext;
        has_ext_ = true;
    }
    // Two consecutive extrapolant differences below `tol`.
    bool converged(double tol) const { return n_err_ >= 2 && err_ <= tol && prev_err_ <= tol; }
    double value() const { return has_ext_ ? ext_ : ys_.back(); }
    double error() const { return n_err_ > 0 ? err_ : std::numeric_limits<double>::infinity(); }

private:
    std::vector<double> xs_, ys_;
    double ext_ = 0.0, err_ = 0.0, prev_err_ = 0.0;
    bool has_ext_ = false;
    int n_err_ = 0;
};

double csc2_minus_inverse_square(double theta)
{
    // 1/sin^2(t) - 1/t^2, series near zero to avoid cancellation.
    if (theta < 0.05) {
        const double t2 = theta * theta;
        return 1.0 / 3.0 + t2 * (1.0 / 15.0 + t2 * (2.0 / 189.0 + t2 * (1.0 / 675.0 + t2 * (2.0 / 10395.0))));
    }
    const double s = std::sin(theta);
    return 1.0 / (s * s) - 1.0 / (theta * theta);
}

Estimate edge_closed_form(const CavityGeometry &geom, Axis axis, double sigma)
{
    const double a = geom.side(axis);
    const double coeff = a / (4.0 * pi * geom.volume());
    double sum;
    if (sigma == 0.0)
        sum = pi * pi / (12.0 * a * a);
    else
        sum = pi * pi / (4.0 * a * a) * csc2_minus_inverse_square(pi * sigma / (2.0 * a));
    const double value = coeff * sum;
    return {value, 8.0 * kEps * std::abs(value)};
}

Estimate edge_direct(const CavityGeometry &geom, Axis axis, double sigma, const SumConfig &cfg)
{
    const double a = geom.side(axis);
    const double coeff = a / (4.0 * pi * geom.volume());
    const double s2 = sigma * sigma;
    detail::CompensatedSum acc;
    TailExtrapolator tail;
    std::int64_t prev = 0;
    for (int step = 0;; ++step) {
        const std::int64_t m = next_shell(prev, step);
        if (m > cfg.max_shell) {
            std::ostringstream os;
            os << "edge sum did not converge within max_shell=" << cfg.max_shell
               << " (estimate " << coeff * tail.value() << ", error " << coeff * tail.error() << ")";
            throw NonConvergence(os.str());
        }
        for (std::int64_t l = prev + 1; l <= m; ++l) {
            const double w2 = square(2.0 * a * static_cast<double>(l));
            acc.add(2.0 * (s2 + w2) / square(w2 - s2));
        }
        prev = m;
        tail.push(1.0 / static_cast<double>(m), acc.value());
        const double floor = 64.0 * kEps * acc.abs_total();
        const double tol = std::max(cfg.rel_tol * std::abs(tail.value()), floor);
        if (m >= cfg.min_shell && tail.converged(tol))
            return {coeff * tail.value(), coeff * std::max(tail.error(), floor)};
    }
}

} // namespace

double image_norm_sq(const ImageIndex &n, const CavityGeometry &geom)
{
    const double x = 2.0 * geom.side(0) * static_cast<double>(n.n1);
    const double y = 2.0 * geom.side(1) * static_cast<double>(n.n2);
    const double z = 2.0 * geom.side(2) * static_cast<double>(n.n3);
    return x * x + y * y + z * z;
}

void SumConfig::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ValidationError("rel_tol must lie in (0, 1)");
    if (min_shell < 2)
        throw ValidationError("min_shell must be at least 2");
    if (max_shell < min_shell)
        throw ValidationError("max_shell must not be smaller than min_shell");
}

Regulator::Regulator(double sigma) : sigma_(sigma)
{
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw ValidationError("regulator sigma must be finite and non-negative");
}

void check_resonance(const CavityGeometry &geom, const Regulator &reg)
{
    const double sigma = reg.sigma();
    if (sigma == 0.0)
        return;
    const double s2 = sigma * sigma;
    const double reach = sigma * std::sqrt(1.0 + kResonanceBand);
    std::array<std::int64_t, 3> hi{};
    double count = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        hi[i] = static_cast<std::int64_t>(std::floor(reach / (2.0 * geom.side(i))));
        count *= static_cast<double>(hi[i] + 1);
    }
    if (count > 5e7)
        throw ValidationError("regulator sigma is too large compared with the cavity sides");
    for (std::int64_t n1 = 0; n1 <= hi[0]; ++n1)
        for (std::int64_t n2 = 0; n2 <= hi[1]; ++n2)
            for (std::int64_t n3 = 0; n3 <= hi[2]; ++n3) {
                if (n1 == 0 && n2 == 0 && n3 == 0)
                    continue;
                const double u2 = image_norm_sq({n1, n2, n3}, geom);
                if (std::abs(u2 - s2) <= kResonanceBand * s2) {
                    std::ostringstream os;
                    os << "sigma=" << sigma << " resonates with image (" << n1 << "," << n2 << "," << n3
                       << "), u=" << std::sqrt(u2);
                    throw RegulatorResonance(os.str());
                }
            }
}

TripleSums direct_triple_sums(const CavityGeometry &geom, const Regulator &reg, const SumConfig &cfg,
                              const std::array<double, 4> &offsets, const std::array<bool, 4> &active)
{
    cfg.validate();
    check_resonance(geom, reg);

    const auto &a = geom.sides();
    const double amax = std::max({a[0], a[1], a[2]});
    // Box half-widths grow as m * k_i, so every shell is roughly a physical cube.
    std::array<std::int64_t, 3> k{};
    for (std::size_t i = 0; i < 3; ++i)
        k[i] = std::max<std::int64_t>(1, std::llround(amax / a[i]));
    const std::int64_t kmax = std::max({k[0], k[1], k[2]});

    const double s2 = reg.sigma() * reg.sigma();
    const double two_a0 = 2.0 * a[0], two_a1 = 2.0 * a[1], two_a2 = 2.0 * a[2];

    std::array<detail::CompensatedSum, 4> acc;
    std::array<TailExtrapolator, 4> tails;
    std::array<double, 4> mass{}; // sum of |terms|, sets the roundoff floor
    std::array<std::int64_t, 3> prev{0, 0, 0};
    std::int64_t prev_m = 0;
    std::int64_t terms = 0;

    for (int step = 0;; ++step) {
        const std::int64_t m = next_shell(prev_m, step);
        if (m * kmax > cfg.max_shell) {
            std::ostringstream os;
            os << "direct lattice sum did not converge within max_shell=" << cfg.max_shell
               << " (shell counter " << prev_m << ")";
            throw NonConvergence(os.str());
        }
        const std::array<std::int64_t, 3> box{m * k[0], m * k[1], m * k[2]};

        // Octant representatives n_i >= 0 with multiplicity 2^(#nonzero); new points only.
        for (std::int64_t n1 = 0; n1 <= box[0]; ++n1) {
            const double w1 = square(two_a0 * static_cast<double>(n1));
            const double m1 = n1 > 0 ? 2.0 : 1.0;
            for (std::int64_t n2 = 0; n2 <= box[1]; ++n2) {
                const double w2 = square(two_a1 * static_cast<double>(n2));
                const double m12 = m1 * (n2 > 0 ? 2.0 : 1.0);
                const bool outside = n1 > prev[0] || n2 > prev[1];
                std::int64_t n3 = outside ? 0 : prev[2] + 1;
                if (n1 == 0 && n2 == 0 && n3 == 0)
                    n3 = 1;
                double row[4] = {0.0, 0.0, 0.0, 0.0};
                double row_abs[4] = {0.0, 0.0, 0.0, 0.0};
                for (; n3 <= box[2]; ++n3) {
                    const double w3 = square(two_a2 * static_cast<double>(n3));
                    const double u2 = w1 + w2 + w3;
                    const double d = u2 - s2;
                    const double weight = m12 * (n3 > 0 ? 2.0 : 1.0) / (d * d * d);
                    const double base = s2 - u2;
                    const double t[4] = {(3.0 * s2 + u2) * weight, (4.0 * w1 + base) * weight,
                                         (4.0 * w2 + base) * weight, (4.0 * w3 + base) * weight};
                    for (int c = 0; c < 4; ++c) {
                        row[c] += t[c];
                        row_abs[c] += std::abs(t[c]);
                    }
                    ++terms;
                }
                for (int c = 0; c < 4; ++c) {
                    acc[c].add(row[c]);
                    mass[c] += row_abs[c];
                }
            }
        }
        prev = box;
        prev_m = m;

        const double x = 1.0 / static_cast<double>(m);
        bool all_done = m >= cfg.min_shell;
        std::array<double, 4> floors{};
        for (int c = 0; c < 4; ++c) {
            tails[c].push(x, acc[c].value());
            floors[c] = 64.0 * kEps * mass[c];
            if (!active[c])
                continue;
            const double finite = std::abs(-tails[c].value() / (pi * pi) + offsets[c]);
            const double tol = std::max(cfg.rel_tol * finite * pi * pi, floors[c]);
            all_done = all_done && tails[c].converged(tol);
        }
        if (all_done) {
            TripleSums out;
            auto est = [&](int c) {
                return Estimate{-tails[c].value() / (pi * pi),
                                std::max(tails[c].error(), floors[c]) / (pi * pi)};
            };
            out.energy = est(0);
            out.stress = {est(1), est(2), est(3)};
            out.shells = static_cast<int>(m);
            out.terms = terms;
            return out;
        }
    }
}

Estimate energy_triple_sum(const CavityGeometry &geom, const Regulator &reg, const SumConfig &cfg)
{
    cfg.validate();
    if (cfg.strategy == Strategy::Accelerated && reg.finite_part_mode())
        return resummed::energy_triple(geom);
    return direct_triple_sums(geom, reg, cfg, {}, {true, false, false, false}).energy;
}

Estimate stress_triple_sum(const CavityGeometry &geom, Axis axis, const Regulator &reg,
                           const SumConfig &cfg)
{
    cfg.validate();
    if (cfg.strategy == Strategy::Accelerated && reg.finite_part_mode())
        return resummed::stress_triple(geom, axis);
    std::array<bool, 4> active{false, false, false, false};
    active[1 + index(axis)] = true;
    return direct_triple_sums(geom, reg, cfg, {}, active).stress[index(axis)];
}

Estimate edge_sum(const CavityGeometry &geom, Axis axis, const Regulator &reg, const SumConfig &cfg)
{
    cfg.validate();
    check_resonance(geom, reg);
    if (cfg.strategy == Strategy::Accelerated)
        return edge_closed_form(geom, axis, reg.sigma());
    return edge_direct(geom, axis, reg.sigma(), cfg);
}

Estimate accelerated_t33(const CavityGeometry &geom, const SumConfig &cfg)
{
    cfg.validate();
    return resummed::axial_stress_triple(geom, Axis::Three) + edge_closed_form(geom, Axis::Three, 0.0);
}

} // namespace casimir
