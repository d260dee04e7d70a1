#include <doctest.h>

#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/sumkernel.hpp"
#include "oracle.hpp"

using namespace casimir;

namespace
{

SumConfig direct(double tol = 1e-10)
{
    SumConfig c;
    c.strategy = Strategy::Direct;
    c.rel_tol = tol;
    return c;
}

double finite_energy(const CavityGeometry &g, const SumConfig &cfg)
{
    Estimate e = energy_triple_sum(g, Regulator{}, cfg);
    for (int i = 0; i < 3; ++i)
        e += edge_sum(g, static_cast<Axis>(i), Regulator{}, cfg);
    return e.value;
}

} // namespace

TEST_CASE("config and regulator validation")
{
    SumConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SumConfig{};
    c.max_shell = 2;
    c.min_shell = 4;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    CHECK_THROWS_AS(Regulator{-1e-3}, ValidationError);
    CHECK(Regulator{}.finite_part_mode());
    CHECK_FALSE(Regulator{1e-3}.finite_part_mode());
}

TEST_CASE("direct sums reproduce the brute-force oracle")
{
    for (const auto &gold : {oracle::cube, oracle::box123}) {
        const CavityGeometry g{gold.sides};
        CHECK(finite_energy(g, direct()) == doctest::Approx(gold.energy).epsilon(1e-8));
        for (int i = 0; i < 3; ++i) {
            const Axis ax = static_cast<Axis>(i);
            const double t = (stress_triple_sum(g, ax, Regulator{}, direct()) + edge_sum(g, ax, Regulator{}, direct())).value;
            CHECK(t == doctest::Approx(gold.stress[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("frozen goldens agree with a fresh low-order oracle run")
{
    const auto f = oracle::brute_force(oracle::box123.sides);
    CHECK(f.energy == doctest::Approx(oracle::box123.energy).epsilon(1e-5));
    for (int i = 0; i < 3; ++i)
        CHECK(f.stress[i] == doctest::Approx(oracle::box123.stress[i]).epsilon(1e-7));
}

TEST_CASE("accelerated and direct triple sums agree")
{
    for (const auto &s : {std::array<double, 3>{1, 1, 1}, {1, 2, 3}, {0.3, 1.7, 0.9}, {2, 0.5, 5}}) {
        const CavityGeometry g{s};
        const double a = energy_triple_sum(g, Regulator{}, SumConfig{}).value;
        const double d = energy_triple_sum(g, Regulator{}, direct()).value;
        CHECK(a == doctest::Approx(d).epsilon(1e-9));
        for (int i = 0; i < 3; ++i) {
            const Axis ax = static_cast<Axis>(i);
            CHECK(stress_triple_sum(g, ax, Regulator{}, SumConfig{}).value ==
                  doctest::Approx(stress_triple_sum(g, ax, Regulator{}, direct()).value).epsilon(1e-9));
        }
    }
}

TEST_CASE("edge sum closed form matches direct summation")
{
    const CavityGeometry g{1.0, 2.0, 0.7};
    for (double sigma : {0.0, 1e-3, 0.05, 0.3}) {
        const Regulator r{sigma};
        for (int i = 0; i < 3; ++i) {
            const Axis ax = static_cast<Axis>(i);
            CHECK(edge_sum(g, ax, r, SumConfig{}).value ==
                  doctest::Approx(edge_sum(g, ax, r, direct(1e-11)).value).epsilon(1e-9));
        }
    }
    CHECK(edge_sum(g, Axis::One, Regulator{}, SumConfig{}).value ==
          doctest::Approx(oracle::pi / (48.0 * g.volume() * 1.0)).epsilon(1e-15));
}

TEST_CASE("accelerated T33 matches the direct stress")
{
    const CavityGeometry g{1.0, 2.0, 3.0};
    CHECK(accelerated_t33(g, SumConfig{}).value == doctest::Approx(oracle::box123.stress[2]).epsilon(1e-10));
}

TEST_CASE("regularized sums approach the finite part as sigma shrinks")
{
    const CavityGeometry g{1.0, 1.0, 1.0};
    const double f0 = energy_triple_sum(g, Regulator{}, direct()).value;
    const double f1 = energy_triple_sum(g, Regulator{1e-3}, direct()).value;
    const double f2 = energy_triple_sum(g, Regulator{5e-4}, direct()).value;
    CHECK(std::abs(f2 - f0) < std::abs(f1 - f0));
    CHECK(std::abs(f1 - f0) < 1e-5 * std::abs(f0));
}

TEST_CASE("resonant regulators are rejected")
{
    const CavityGeometry g{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(check_resonance(g, Regulator{2.0}), RegulatorResonance);
    CHECK_THROWS_AS(energy_triple_sum(g, Regulator{2.0}, direct()), RegulatorResonance);
    CHECK_NOTHROW(check_resonance(g, Regulator{1.3}));
}

TEST_CASE("exhausting the shell cap raises NonConvergence")
{
    SumConfig c = direct(1e-14);
    c.max_shell = 6;
    c.min_shell = 2;
    CHECK_THROWS_AS(energy_triple_sum(CavityGeometry{1, 1, 1}, Regulator{}, c), NonConvergence);
}

TEST_CASE("image norm")
{
    const CavityGeometry g{1.0, 2.0, 3.0};
    CHECK(image_norm_sq({1, -1, 2}, g) == doctest::Approx(4.0 + 16.0 + 144.0));
}
