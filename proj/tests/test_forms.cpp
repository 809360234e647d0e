#include <random>

#include "doctest.h"
#include "test_support.hpp"

#include "coeffbody/forms.hpp"

using namespace coeffbody;
using namespace testing_support;

namespace {

MultiPoly c(std::size_t n, std::size_t k) { return MultiPoly::variable(n, k - 1); }
MultiPoly num(std::size_t n, long v) { return MultiPoly::constant(n, v); }

PolyForm random_one_form(std::mt19937_64& rng, std::size_t n) {
    PolyForm f(n, 1);
    for (std::size_t k = 1; k <= n; ++k) {
        f.add_term({k}, random_poly(rng, n, 3, 3));
    }
    return f;
}

}  // namespace

TEST_CASE("dual_basis_forms: listed forms") {
    auto w = dual_basis_forms(3);
    const std::size_t n = 3;
    CHECK(w[0] == PolyForm::dc(n, 1));
    CHECK(w[1] == PolyForm::dc(n, 2) - (c(n, 1) * QComplex(2)) * PolyForm::dc(n, 1));
    PolyForm w3 = PolyForm::dc(n, 3) - (c(n, 1) * QComplex(2)) * PolyForm::dc(n, 2) +
                  (c(n, 1) * c(n, 1) * QComplex(4) - c(n, 2) * QComplex(3)) * PolyForm::dc(n, 1);
    CHECK(w[2] == w3);
    CHECK(dual_basis_forms(0).empty());
}

TEST_CASE("pair: duality matrix is the identity for n <= 8") {
    for (std::size_t n = 1; n <= 8; ++n) {
        auto omega = dual_basis_forms(n);
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t j = 1; j <= n; ++j) {
                CHECK(pair(omega[k - 1], kirillov_field(j, n)) == num(n, k == j ? 1 : 0));
            }
        }
    }
    auto e2 = PolyVectorField::zero(3);
    e2.components[1] = num(3, 1);
    CHECK(pair(PolyForm::dc(3, 1), e2).is_zero());
}

TEST_CASE("pair: agrees with pointwise evaluation") {
    std::mt19937_64 rng(51);
    const std::size_t n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        auto form = random_one_form(rng, n);
        PolyVectorField field{n, {}};
        for (std::size_t m = 0; m < n; ++m) {
            field.components.push_back(random_poly(rng, n, 3, 2));
        }
        auto point = random_qvector(rng, n);
        QComplex expected;
        for (std::size_t k = 1; k <= n; ++k) {
            expected += form.coefficient({k}).evaluate(point) * field.components[k - 1].evaluate(point);
        }
        CHECK(pair(form, field).evaluate(point) == expected);
    }
    CHECK_THROWS_AS(pair(wedge(PolyForm::dc(3, 1), PolyForm::dc(3, 2)), kirillov_field(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(pair(PolyForm::dc(3, 1), kirillov_field(1, 4)), std::invalid_argument);
}

TEST_CASE("eta_forms: eta_3 expansion, kernel, value at the origin") {
    const std::size_t n = 3;
    auto eta = eta_forms(n);
    REQUIRE(eta.size() == 1);
    PolyForm expected = PolyForm::dc(n, 3) - (c(n, 2) * QComplex(3) - c(n, 1) * c(n, 1) * QComplex(4)) * PolyForm::dc(n, 1) -
                        (c(n, 1) * QComplex(2)) * PolyForm::dc(n, 2);
    CHECK(eta[0] == expected);
    std::vector<QComplex> origin(3);
    CHECK(eta[0].at(origin) == PolyForm::dc(n, 3));

    for (std::size_t m = 3; m <= 8; ++m) {
        auto etas = eta_forms(m);
        CHECK(etas.size() == m - 2);
        for (const auto& e : etas) {
            CHECK(pair(e, kirillov_field(1, m)).is_zero());
            CHECK(pair(e, kirillov_field(2, m)).is_zero());
        }
        // On L_j with j >= 3 only the dc_k part survives.
        for (std::size_t k = 3; k <= m; ++k) {
            for (std::size_t j = 3; j <= m; ++j) {
                CHECK(pair(etas[k - 3], kirillov_field(j, m)) == kirillov_field(j, m).components[k - 1]);
            }
        }
    }
    CHECK_THROWS_AS(eta_forms(2), std::invalid_argument);
}

TEST_CASE("exterior_derivative: listed values and d o d = 0") {
    const std::size_t n = 3;
    CHECK(exterior_derivative(PolyForm::dc(n, 2)).is_zero());
    PolyForm a(n, 1);
    a.add_term({2}, c(n, 1));
    CHECK(exterior_derivative(a) == wedge(PolyForm::dc(n, 1), PolyForm::dc(n, 2)));

    auto eta3 = eta_forms(n)[0];
    auto deta = exterior_derivative(eta3);
    CHECK(deta == wedge(PolyForm::dc(n, 1), PolyForm::dc(n, 2)));

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_one_form(rng, 4);
        CHECK(exterior_derivative(exterior_derivative(f)).is_zero());
    }
    auto top = wedge(wedge(PolyForm::dc(n, 1), PolyForm::dc(n, 2)), PolyForm::dc(n, 3));
    CHECK_THROWS_AS(exterior_derivative(top), std::invalid_argument);
}

TEST_CASE("wedge: antisymmetry and the contact identity") {
    const std::size_t n = 3;
    CHECK(wedge(PolyForm::dc(n, 1), PolyForm::dc(n, 1)).is_zero());
    auto a = wedge(PolyForm::dc(n, 1), PolyForm::dc(n, 2));
    auto b = wedge(PolyForm::dc(n, 2), PolyForm::dc(n, 1));
    CHECK(a == num(n, -1) * b);
    CHECK(a.coefficient({2, 1}) == num(n, -1));

    auto eta3 = eta_forms(n)[0];
    auto contact = wedge(eta3, exterior_derivative(eta3));
    PolyForm volume(n, 3);
    volume.add_term({1, 2, 3}, num(n, 1));
    CHECK(contact == volume);
    CHECK(contact.terms().size() == 1);

    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_one_form(rng, 4);
        auto g = random_one_form(rng, 4);
        CHECK(wedge(f, g) == num(4, -1) * wedge(g, f));
        // Leibniz: d(f ^ g) = df ^ g - f ^ dg.
        CHECK(exterior_derivative(wedge(f, g)) ==
              wedge(exterior_derivative(f), g) - wedge(f, exterior_derivative(g)));
    }
    CHECK_THROWS_AS(wedge(a, a), std::invalid_argument);
    CHECK_THROWS_AS(wedge(PolyForm::dc(3, 1), PolyForm::dc(4, 1)), std::invalid_argument);
}
