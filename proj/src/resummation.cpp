#include "casimir/resummation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "casimir/errors.hpp"
#include "summation.hpp"

namespace casimir::resummed
{

using std::numbers::pi;

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kZeta3 = 1.2020569031595942853997;
// Remainder terms carry exp(-2 pi x); beyond x = 7 they are below 1e-19 of the leading term.
constexpr double kXCut = 7.0;
// Bessel arguments beyond this contribute below 1e-26.
constexpr double kBesselCut = 60.0;
// Excess-series terms more than this far past the smallest Bessel argument are below
// exp(-46) of the leading one.
constexpr double kExcessWindow = 46.0;
// Own-axis resummation is used for a stress while a_axis / a_shortest stays below this.
constexpr double kAxialAspectLimit = 20.0;

struct Others
{
    std::size_t p, q;
};

Others others(std::size_t i)
{
    switch (i) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
    }
}

double weight(std::int64_t np, std::int64_t nq) { return (np > 0 ? 2.0 : 1.0) * (nq > 0 ? 2.0 : 1.0); }

// Visits (n_p, n_q) != 0 with n >= 0 and rho <= rho_max, passing rho^2, (2 a_p n_p)^2 and
// (2 a_q n_q)^2 together with the quadrant multiplicity.
template <typename F>
void for_each_quadrant_point(double ap, double aq, double rho_max, F &&f)
{
    const double r2max = rho_max * rho_max;
    const auto np_max = static_cast<std::int64_t>(rho_max / (2.0 * ap));
    for (std::int64_t np = 0; np <= np_max; ++np) {
        const double wp = (2.0 * ap * static_cast<double>(np)) * (2.0 * ap * static_cast<double>(np));
        for (std::int64_t nq = (np == 0 ? 1 : 0);; ++nq) {
            const double wq = (2.0 * aq * static_cast<double>(nq)) * (2.0 * aq * static_cast<double>(nq));
            const double r2 = wp + wq;
            if (r2 > r2max)
                break;
            f(r2, wp, wq, weight(np, nq));
        }
    }
}

// Exponential pieces at x = rho / (2 a): q = exp(-2 pi x) and 1 - q.
struct Decay
{
    double q, one_minus_q;
    explicit Decay(double x) : q(std::exp(-2.0 * pi * x)), one_minus_q(-std::expm1(-2.0 * pi * x)) {}
    double coth_minus_one() const { return 2.0 * q / one_minus_q; }
    double coth() const { return (1.0 + q) / one_minus_q; }
    double inv_sinh2() const { return 4.0 * q / (one_minus_q * one_minus_q); }
};

// g(rho) = (coth(pi x) - 1) / (4 pi rho^3) + 1 / (8 a rho^2 sinh^2(pi x)), x = rho / 2a:
// the exponentially small part of the n_s-resummed energy sum.
double energy_remainder(double rho, double a)
{
    const Decay d(rho / (2.0 * a));
    return d.coth_minus_one() / (4.0 * pi * rho * rho * rho) + d.inv_sinh2() / (8.0 * a * rho * rho);
}

double energy_remainder_drho(double rho, double a)
{
    const Decay d(rho / (2.0 * a));
    const double r2 = rho * rho, r3 = r2 * rho;
    return -3.0 * d.inv_sinh2() / (8.0 * a * r3) - 3.0 * d.coth_minus_one() / (4.0 * pi * r2 * r2) -
           pi * d.coth() * d.inv_sinh2() / (8.0 * a * a * r2);
}

Estimate finish(double value, double magnitude, double truncation = 0.0)
{
    return {value, 32.0 * kEps * magnitude + truncation};
}

} // namespace

Axis shortest_axis(const CavityGeometry &geom)
{
    std::size_t s = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (geom.side(i) < geom.side(s))
            s = i;
    return static_cast<Axis>(s);
}

EpsteinCubic epstein_cubic(double bp, double bq)
{
    const bool p_big = bp >= bq;
    const double alpha = 2.0 * (p_big ? bp : bq);
    const double beta = 2.0 * (p_big ? bq : bp);
    const double ratio = alpha / beta;

    detail::CompensatedSum w, wd;
    for (int m = 1; 2.0 * pi * m * ratio <= kBesselCut; ++m)
        for (int k = 1;; ++k) {
            const double z = 2.0 * pi * k * m * ratio;
            if (z > kBesselCut)
                break;
            const double k1 = std::cyl_bessel_k(1.0, z);
            const double k0 = std::cyl_bessel_k(0.0, z);
            w.add(static_cast<double>(k) / m * k1);
            wd.add(static_cast<double>(k) * k * (-k0 - k1 / z));
        }

    const double b2 = beta * beta, b3 = b2 * beta, a2 = alpha * alpha;
    const double lead = 16.0 * pi / (b2 * alpha);
    const double dw_dalpha = 2.0 * pi / beta * wd.value();
    const double dw_dbeta = -2.0 * pi * alpha / b2 * wd.value();

    const double value = 2.0 * kZeta3 / b3 + 2.0 * pi * pi / (3.0 * beta * a2) + lead * w.value();
    const double dz_dalpha =
        -4.0 * pi * pi / (3.0 * beta * a2 * alpha) - lead / alpha * w.value() + lead * dw_dalpha;
    const double dz_dbeta = -6.0 * kZeta3 / (b3 * beta) - 2.0 * pi * pi / (3.0 * b2 * a2) -
                            2.0 * lead / beta * w.value() + lead * dw_dbeta;

    EpsteinCubic out;
    out.value = value;
    out.d_bp = 2.0 * (p_big ? dz_dalpha : dz_dbeta);
    out.d_bq = 2.0 * (p_big ? dz_dbeta : dz_dalpha);
    // libstdc++ Bessel K is accurate to a few ulp over this range; allow 1e-14 on that part.
    out.error = 32.0 * kEps * std::abs(value) + 1e-14 * lead * std::abs(w.value());
    return out;
}

Estimate epstein_quartic(double bp, double bq)
{
    const double alpha = 2.0 * std::max(bp, bq);
    const double c = 2.0 * std::min(bp, bq);
    const double c4 = c * c * c * c;
    detail::CompensatedSum rem;
    for (int m = 1;; ++m) {
        const double x = m * alpha / c;
        if (x > kXCut)
            break;
        const Decay d(x);
        rem.add(pi * d.q / (x * x * x * d.one_minus_q) + 0.5 * pi * pi * d.inv_sinh2() / (x * x));
    }
    const double value =
        std::pow(pi, 4) / (45.0 * c4) + pi * kZeta3 / (c * alpha * alpha * alpha) + 2.0 / c4 * rem.value();
    return finish(value, std::abs(value));
}

Estimate energy_triple(const CavityGeometry &geom)
{
    const std::size_t s = index(shortest_axis(geom));
    const auto [p, q] = others(s);
    const double as = geom.side(s), ap = geom.side(p), aq = geom.side(q);

    const EpsteinCubic z = epstein_cubic(ap, aq);
    detail::CompensatedSum rem;
    for_each_quadrant_point(ap, aq, 2.0 * as * kXCut, [&](double r2, double, double, double mult) {
        rem.add(mult * energy_remainder(std::sqrt(r2), as));
    });

    const double lead = pi * pi / (720.0 * as * as * as);
    const double f = lead + z.value / (4.0 * pi) + rem.value();
    Estimate out = finish(-f / as, (lead + z.value / (4.0 * pi) + rem.abs_total()) / as);
    out.error += z.error / (4.0 * pi * as);
    return out;
}

Estimate axial_stress_triple(const CavityGeometry &geom, Axis axis)
{
    const std::size_t r = index(axis);
    const auto [p, q] = others(r);
    const double ar = geom.side(r), ap = geom.side(p), aq = geom.side(q);

    detail::CompensatedSum sum;
    for_each_quadrant_point(ap, aq, 2.0 * ar * kXCut, [&](double r2, double, double, double mult) {
        const double rho = std::sqrt(r2);
        const Decay d(rho / (2.0 * ar));
        sum.add(mult * d.coth() * d.inv_sinh2() / rho);
    });
    const double pref = pi / (8.0 * ar * ar * ar);
    const double plates = pi * pi / (240.0 * ar * ar * ar * ar);
    return finish(pref * sum.value() - plates, pref * sum.abs_total() + plates);
}

Estimate transverse_stress_triple(const CavityGeometry &geom, Axis axis, Axis resummed)
{
    const std::size_t t = index(axis), s = index(resummed);
    if (t == s)
        throw ValidationError("transverse stress needs a resummation axis different from the stress axis");
    const std::size_t o = 3 - t - s;
    const double as = geom.side(s), at = geom.side(t), ao = geom.side(o);

    const EpsteinCubic z = epstein_cubic(at, ao);
    detail::CompensatedSum rem;
    for_each_quadrant_point(at, ao, 2.0 * as * kXCut, [&](double r2, double wt, double, double mult) {
        const double rho = std::sqrt(r2);
        rem.add(mult * (energy_remainder(rho, as) + energy_remainder_drho(rho, as) * wt / rho));
    });

    const double lead = pi * pi / (720.0 * as * as * as);
    const double zpart = (z.value + at * z.d_bp) / (4.0 * pi);
    const double value = (lead + zpart + rem.value()) / as;
    Estimate out = finish(value, (lead + (z.value + std::abs(at * z.d_bp)) / (4.0 * pi) + rem.abs_total()) / as);
    out.error += 2.0 * z.error / (4.0 * pi * as);
    return out;
}

Estimate stress_triple(const CavityGeometry &geom, Axis axis)
{
    const Axis s = shortest_axis(geom);
    if (axis == s || geom.side(axis) <= kAxialAspectLimit * geom.side(s))
        return axial_stress_triple(geom, axis);
    return transverse_stress_triple(geom, axis, s);
}

bool waveguide_excess_is_short(const CavityGeometry &geom, Axis axis)
{
    const auto [p, q] = others(index(axis));
    return geom.side(axis) >= 0.25 * std::max(geom.side(p), geom.side(q));
}

WaveguideExcess waveguide_excess(const CavityGeometry &geom, Axis axis)
{
    const auto [p, q] = others(index(axis));
    const double ap = geom.side(p), aq = geom.side(q), ar = geom.side(axis);
    // Dual lattice points sit at q = sqrt((pi m_p / a_p)^2 + (pi m_q / a_q)^2).
    const double q_min = pi / std::max(ap, aq);
    const double x_max = 2.0 * ar * q_min + kExcessWindow;
    detail::CompensatedSum energy, stress;
    for_each_quadrant_point(0.5 * pi / ap, 0.5 * pi / aq, x_max / (2.0 * ar), [&](double q2, double, double, double mult) {
        const double qk = std::sqrt(q2);
        for (int n = 1;; ++n) {
            const double x = 2.0 * ar * n * qk;
            if (x > x_max)
                break;
            const double k0 = std::cyl_bessel_k(0.0, x);
            const double k1 = std::cyl_bessel_k(1.0, x);
            energy.add(mult * qk * k1 / n);
            stress.add(mult * q2 * (k0 + k1 / x));
        }
    });
    const double e = -energy.value() / (4.0 * pi);
    const double t = -stress.value() / (2.0 * pi * ap * aq);
    // cyl_bessel_k is trusted to about 1e-14 relative; all terms share one sign.
    return {{e, (1e-14 + 32.0 * kEps) * std::abs(e)}, {t, (1e-14 + 32.0 * kEps) * std::abs(t)}};
}

} // namespace casimir::resummed
