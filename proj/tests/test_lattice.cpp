#include <cmath>
#include <optional>
#include <vector>

#include "doctest.h"
#include "stablelat/errors.hpp"
#include "stablelat/function_spec.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/types.hpp"

namespace sl = stablelat;
using sl::FunctionSpec;

TEST_SUITE_BEGIN("lattice");

TEST_CASE("aligned indicator, cell averages") {
    const auto f = FunctionSpec::indicator_box({0.0}, {1.0});
    const auto coeffs = sl::discretize(f, 0.25, 1.5);
    REQUIRE(coeffs.entries().size() == 4);
    for (const auto& e : coeffs.entries()) {
        CHECK(e.index.k[0] >= 0);
        CHECK(e.index.k[0] <= 3);
        // h^{1/alpha - 1} * h = h^{1/alpha} = 0.25^{2/3}
        CHECK(e.value == doctest::Approx(0.39685026299204987).epsilon(1e-13));
    }
    const sl::Norms nm = sl::norms(coeffs);
    // the cell-average approximation of an aligned indicator is the
    // indicator itself, so the norm identity is exact
    CHECK(nm.l_alpha == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(nm.l_inf == doctest::Approx(0.39685026299204987).epsilon(1e-13));
}

TEST_CASE("exact scheme reproduces the L^alpha norm at any spacing") {
    const auto f = FunctionSpec::indicator_box({0.0}, {1.0});
    for (const double h : {1.0, 0.5, 0.25, 0.125}) {
        const auto coeffs = sl::discretize_exact(f, h, 1.5);
        CHECK(sl::norms(coeffs).l_alpha == doctest::Approx(1.0).epsilon(1e-13));
    }
    // misaligned support: cell averages lose mass, the exact scheme does not
    const auto g = FunctionSpec::indicator_box({0.0}, {1.1});
    const double target = std::pow(1.1, 1.0 / 1.5);
    const auto exact = sl::discretize_exact(g, 0.25, 1.5);
    CHECK(sl::norms(exact).l_alpha == doctest::Approx(target).epsilon(1e-12));
    const auto avg = sl::discretize(g, 0.25, 1.5);
    CHECK(sl::norms(avg).l_alpha < target - 1e-4);
}

TEST_CASE("exact scheme matches a smooth integrand's norm by quadrature") {
    const auto f = FunctionSpec::gauss_bump({0.0}, 1.0);
    const sl::Box window = sl::Box::interval(-8.0, 8.0);
    const auto coeffs = sl::discretize_exact(f, 0.5, 1.5, 1e-6, window);
    CHECK(sl::norms(coeffs).l_alpha ==
          doctest::Approx(f.lp_norm(1.5, window)).epsilon(1e-10));
    CHECK(sl::norms(coeffs).l_alpha == doctest::Approx(1.6119919540164696).epsilon(1e-7));
}

TEST_CASE("signed integrands keep their sign per cell") {
    const auto f = FunctionSpec::linear_combination(
        {{1.0, FunctionSpec::indicator_box({0.0}, {1.0})},
         {-2.0, FunctionSpec::indicator_box({1.0}, {2.0})}});
    const auto coeffs = sl::discretize_exact(f, 0.5, 1.5, 1e-6, sl::Box::interval(-1.0, 3.0));
    REQUIRE(coeffs.entries().size() == 4);
    CHECK(coeffs.entries()[0].value > 0.0);  // cells [0,1) carry +1
    CHECK(coeffs.entries()[3].value < 0.0);  // cells [1,2) carry -2
    const double target = std::pow(1.0 + std::pow(2.0, 1.5), 1.0 / 1.5);
    CHECK(sl::norms(coeffs).l_alpha == doctest::Approx(target).epsilon(1e-12));
}

TEST_CASE("piecewise approximation error") {
    // indicator [0,1) at h = 0.4, alpha = 1: the only mismatched cell is
    // [0.8, 1.2) with average 1/2, contributing |1/2| * 0.2 on each side
    const auto f = FunctionSpec::indicator_box({0.0}, {1.0});
    CHECK(sl::piecewise_error(f, 0.4, 1.0, sl::Box::interval(-1.0, 2.0)) ==
          doctest::Approx(0.2).epsilon(1e-10));
    // aligned spacing: zero error
    CHECK(sl::piecewise_error(f, 0.25, 1.5, sl::Box::interval(-1.0, 2.0)) ==
          doctest::Approx(0.0).epsilon(1e-9));
    // refinement shrinks the error for a smooth bump
    const auto g = FunctionSpec::gauss_bump({0.0}, 1.0);
    const sl::Box w = sl::Box::interval(-8.0, 8.0);
    const double e1 = sl::piecewise_error(g, 0.5, 1.5, w);
    const double e2 = sl::piecewise_error(g, 0.25, 1.5, w);
    const double e3 = sl::piecewise_error(g, 0.125, 1.5, w);
    CHECK(e2 < 0.6 * e1);
    CHECK(e3 < 0.6 * e2);
}

TEST_CASE("canonical entry order and window bookkeeping") {
    const auto f = FunctionSpec::gauss_bump({0.0}, 1.0);
    const auto coeffs = sl::discretize(f, 0.5, 1.5);
    REQUIRE(coeffs.entries().size() > 4);
    for (std::size_t i = 1; i < coeffs.entries().size(); ++i)
        CHECK(sl::canonical_cell_less(coeffs.entries()[i - 1].index, coeffs.entries()[i].index,
                                      1));
    CHECK(coeffs.window().lo[0] <= coeffs.entries().front().index.k[0]);
    // shells: the first entries hug the origin
    CHECK(std::abs(coeffs.entries()[0].index.k[0]) <= 1);

    CHECK(coeffs.tail_mass_bound() > 0.0);
    CHECK(coeffs.tail_mass_bound() <= 1e-6 * 2.1);  // trunc_tol * captured mass
}

TEST_CASE("two-dimensional cell averages") {
    const auto f = FunctionSpec::indicator_box({0.0, 0.0}, {1.0, 1.0});
    const auto coeffs = sl::discretize(f, 0.5, 1.5);
    REQUIRE(coeffs.entries().size() == 4);
    // h^{2(1/alpha - 1)} * h^2 = h^{2/alpha} = 0.5^{4/3}
    for (const auto& e : coeffs.entries())
        CHECK(e.value == doctest::Approx(std::pow(0.5, 4.0 / 3.0)).epsilon(1e-13));
    CHECK(sl::norms(coeffs).l_alpha == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS((void)sl::discretize_exact(f, 0.5, 1.5), sl::config_error);
}

TEST_CASE("from_entries canonicalizes and validates") {
    std::vector<sl::CellEntry> entries = {{sl::CellIndex::of(3), 0.5},
                                          {sl::CellIndex::of(-1), 0.25},
                                          {sl::CellIndex::of(0), 0.0}};
    const auto coeffs = sl::CellCoefficients::from_entries(1.5, entries);
    REQUIRE(coeffs.entries().size() == 2);  // exact zero pruned
    CHECK(coeffs.entries()[0].index.k[0] == -1);
    CHECK(coeffs.entries()[1].index.k[0] == 3);
    CHECK(coeffs.window().lo[0] == -1);
    CHECK(coeffs.window().hi[0] == 3);

    std::vector<sl::CellEntry> dup = {{sl::CellIndex::of(2), 1.0}, {sl::CellIndex::of(2), 2.0}};
    CHECK_THROWS_AS((void)sl::CellCoefficients::from_entries(1.5, dup), sl::config_error);
}

TEST_CASE("zero spec discretizes to an empty family") {
    const auto coeffs = sl::discretize(FunctionSpec::zero(1), 0.5, 1.5);
    CHECK(coeffs.empty());
    CHECK(sl::norms(coeffs).l_alpha == 0.0);
    CHECK(coeffs.tail_mass_bound() == 0.0);
}

TEST_SUITE_END();
