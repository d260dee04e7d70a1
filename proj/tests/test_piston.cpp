#include <doctest.h>

#include <cmath>
#include <random>

#include "casimir/cavity.hpp"
#include "casimir/errors.hpp"
#include "casimir/piston.hpp"
#include "oracle.hpp"

using namespace casimir;

TEST_CASE("midpoint values vanish")
{
    const PistonGeometry p{1.0, 0.3, 5.0, 2.5};
    CHECK(piston_energy(p, SumConfig{}).value == 0.0);
    CHECK(pressure_difference(p, SumConfig{}).value == 0.0);
}

TEST_CASE("property: reflection symmetry")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 15; ++k) {
        const double L = 1.0 + 9.0 * u(rng), y = 0.05 + u(rng), z = L * u(rng);
        const PistonGeometry p{1.0, y, L, z}, q{1.0, y, L, L - z};
        const double e = piston_energy(p, SumConfig{}).value;
        const double d = pressure_difference(p, SumConfig{}).value;
        CHECK(piston_energy(q, SumConfig{}).value == doctest::Approx(e).epsilon(1e-10));
        CHECK(pressure_difference(q, SumConfig{}).value == doctest::Approx(-d).epsilon(1e-10));
    }
}

TEST_CASE("pressure difference is the difference of wall stresses")
{
    const PistonGeometry p{1.0, 0.5, 4.0, 1.2};
    const double expected = stress_finite(p.left(), Axis::Three, SumConfig{}).value -
                            stress_finite(p.right(), Axis::Three, SumConfig{}).value;
    CHECK(pressure_difference(p, SumConfig{}).value == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("energy and force are consistent")
{
    for (const auto &p : {PistonGeometry{1, 1, 5, 1}, PistonGeometry{1, 0.05, 5, 0.7}, PistonGeometry{1, 2, 3, 2.2}}) {
        const ConsistencyReport r = pressure_difference_consistency(p, SumConfig{});
        CHECK(r.consistent());
        // Removing the O(h^2) term leaves agreement far inside 1e-6.
        const double improved = r.finite_difference - r.truncation_estimate;
        CHECK(improved == doctest::Approx(r.stress_difference).epsilon(1e-6));
    }
    CHECK_THROWS_AS(pressure_difference_consistency(PistonGeometry{1, 1, 5, 0.01}, SumConfig{}, 0.01), ValidationError);
}

TEST_CASE("semi-infinite piston")
{
    for (double a3 : {0.5, 1.0, 2.0}) {
        const double inf = semi_infinite_pressure(1.0, a3, SumConfig{}).value;
        const double finite = pressure_difference(PistonGeometry{1, 1, 50, a3}, SumConfig{}).value;
        CHECK(inf == doctest::Approx(finite).epsilon(1e-9).scale(1e-3));
    }
    CHECK(waveguide_t33_limit(1.0, 1.0, SumConfig{}).value == doctest::Approx(oracle::waveguide).epsilon(1e-13));
    // Small separations approach the plate result.
    const double a3 = 0.05;
    CHECK(semi_infinite_pressure(1.0, a3, SumConfig{}).value ==
          doctest::Approx(-parallel_plate_pressure(a3)).epsilon(2e-2));
}

TEST_CASE("parallel plate pressure and ratio")
{
    CHECK(parallel_plate_pressure(1.0) == doctest::Approx(oracle::pi * oracle::pi / 240.0).epsilon(1e-15));
    CHECK(parallel_plate_pressure(INFINITY) == 0.0);
    const PistonGeometry p{1, 0.5, 5, 1.5};
    const double d = pressure_difference(p, SumConfig{}).value;
    CHECK(pressure_ratio(p, SumConfig{}) == doctest::Approx(d / parallel_plate_pressure(1.5)));
    const PistonGeometry q{1, 0.5, 5, 4.0};
    CHECK(pressure_ratio(q, SumConfig{}, RatioReference::NearestWall) ==
          doctest::Approx(pressure_difference(q, SumConfig{}).value / parallel_plate_pressure(1.0)));
    const PistonObservables o = piston_observables(p, SumConfig{});
    CHECK(o.dp3 == doctest::Approx(d));
    CHECK(o.p_cas == doctest::Approx(parallel_plate_pressure(1.5)));
}

TEST_CASE("regulated piston with sigma = 0 matches the finite form")
{
    const PistonGeometry p{1, 0.5, 5, 1.5};
    CHECK(pressure_difference(p, Regulator{}, SumConfig{}).value == pressure_difference(p, SumConfig{}).value);
    CHECK(piston_energy(p, Regulator{}, SumConfig{}).value == piston_energy(p, SumConfig{}).value);
}
