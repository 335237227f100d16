#include <doctest.h>

#include <stdexcept>

#include "qgauge/grid.hpp"

using namespace qgauge;

TEST_CASE("make_grid builds reproducible coordinates") {
    Grid g = make_grid(8, 0.5, -2.0, 1);
    CHECK(g.coordinate(0) == -2.0);
    CHECK(g.coordinate(1) == -1.5);
    CHECK(g.coordinate(7) == 1.5);
    CHECK(g.config_size() == 8);
    CHECK(g.volume_element() == 0.5);
}

TEST_CASE("two-particle grid spans the tensor square") {
    Grid g = make_grid(16, 0.25, -2.0, 2);
    CHECK(g.config_size() == 256);
    CHECK(g.volume_element() == doctest::Approx(0.0625));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(4, 0.5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, -0.1, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, 0.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, 0.5, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, 0.5, 0.0, 0), std::invalid_argument);
}

TEST_CASE("coordinate/index round trip is the identity") {
    Grid g = make_grid(97, 0.13, -3.7, 1);
    for (int i = 0; i < g.n_points; ++i) CHECK(g.nearest_index(g.coordinate(i)) == i);
}

TEST_CASE("normalize scales a constant state to unit norm") {
    Grid g = make_grid(8, 0.5, -2.0, 1);
    WaveFunction psi(g);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = 1.0;
    psi.normalize();
    for (std::size_t i = 0; i < psi.size(); ++i) CHECK(psi[i].real() == doctest::Approx(0.5));
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);
}

TEST_CASE("normalize is idempotent and preserves amplitude ratios") {
    Grid g = make_grid(32, 0.25, -4.0, 1);
    WaveFunction psi(g);
    for (int i = 0; i < g.n_points; ++i)
        psi[i] = cplx(std::sin(0.3 * i) + 0.2, std::cos(0.7 * i));
    WaveFunction once = psi;
    once.normalize();
    WaveFunction twice = once;
    twice.normalize();
    for (std::size_t i = 0; i < psi.size(); ++i)
        CHECK(std::abs(once[i] - twice[i]) <= 1e-15);
    // ratios against the original
    cplx r = once[5] / psi[5];
    for (std::size_t i = 0; i < psi.size(); ++i)
        CHECK(std::abs(once[i] - r * psi[i]) <= 1e-12);
}

TEST_CASE("normalize rejects the zero state") {
    WaveFunction psi(make_grid(8, 0.5, 0.0, 1));
    CHECK_THROWS_AS(psi.normalize(), std::domain_error);
}

TEST_CASE("wavefunction checks amplitude length") {
    Grid g = make_grid(8, 0.5, 0.0, 1);
    CHECK_THROWS_AS(WaveFunction(g, std::vector<cplx>(7)), std::invalid_argument);
}

TEST_CASE("inner product uses the configuration volume element") {
    Grid g = make_grid(10, 0.1, 0.0, 1);
    WaveFunction a(g), b(g);
    for (int i = 0; i < 10; ++i) {
        a[i] = 1.0;
        b[i] = cplx(0.0, 2.0);
    }
    cplx ip = inner_product(a, b);
    CHECK(ip.real() == doctest::Approx(0.0));
    CHECK(ip.imag() == doctest::Approx(2.0)); // 10 * 0.1 * 2
}
