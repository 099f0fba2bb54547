#include <cmath>
#include <random>

#include "doctest.h"
#include "rhosharp/errors.hpp"
#include "rhosharp/onsets.hpp"
#include "rhosharp/sets.hpp"

using namespace rhosharp;

namespace {

AsymptoticScalar num(double v) { return AsymptoticScalar::constant(v); }
AsymptoticScalar rho_pow(Rational e) { return AsymptoticScalar::monomial(1.0, e); }

}  // namespace

TEST_CASE("classification over a set reads off coefficient valuations") {
    auto D = InternalSetRep::disc(num(0), num(1.0));

    auto u = rho_pow(Rational(-3)) * GenFunction::identity();
    auto rep = classify_on_set(u, D);
    CHECK(rep.worst().is_moderate());
    CHECK(rep.max_exponent() == 3);

    auto v = AsymptoticScalar::zero() * GenFunction::identity();
    CHECK(classify_on_set(v, D).worst().is_negligible());
}

TEST_CASE("classification includes derivative orders up to k_max") {
    auto D = InternalSetRep::disc(num(0), num(1.0));
    // conj-degree terms only show up through mixed derivatives
    auto u = GenFunction::monomial(0, 2, rho_pow(Rational(-4))) + GenFunction::identity();
    auto rep0 = classify_on_set(u, D, 0);
    auto rep2 = classify_on_set(u, D, 2);
    CHECK(rep2.per_order.size() > rep0.per_order.size());
    CHECK(rep2.max_exponent() >= 4);
}

TEST_CASE("super-polynomial blowup is neither moderate nor negligible") {
    auto D = InternalSetRep::disc(num(0), num(1.0));
    auto u = GenFunction::sampled([](double eps, Complex) { return Complex{std::exp(1.0 / eps), 0}; },
                                  "exp(1/eps)");
    auto rep = classify_on_set(u, D);
    CHECK(rep.worst().kind == Classification::Kind::Neither);
    CHECK(rep.max_exponent() == -1);
}

TEST_CASE("classification refuses unbounded sets") {
    auto ray = InternalSetRep::disc_net_radius(num(0), [](double eps) { return std::exp(1.0 / eps); },
                                               "exp-radius disc");
    CHECK_THROWS_AS(classify_on_set(GenFunction::identity(), ray), UnsupportedOperationError);
}

TEST_CASE("z is invertible on a disc separated from the origin") {
    auto D = InternalSetRep::disc(num(2.0), num(1.0));
    auto rep = invertibility_on_set(GenFunction::identity(), D);
    CHECK(rep.invertible);
    CHECK(rep.n == 1);
    CHECK(rep.pointwise_agrees);
    REQUIRE(rep.reciprocal.has_value());
    // the reciprocal really evaluates to 1/z
    auto w = eval(*rep.reciprocal, num(2.5));
    CHECK(w.cls->is_moderate());
}

TEST_CASE("z is not invertible on a disc containing the origin") {
    auto D = InternalSetRep::disc(num(0), num(1.0));
    auto rep = invertibility_on_set(GenFunction::identity(), D);
    CHECK_FALSE(rep.invertible);
    CHECK(rep.pointwise_agrees);
    REQUIRE_FALSE(rep.witness.empty());
    for (const auto& [eps, z] : rep.witness) {
        CHECK(std::abs(z) < 2.0 * eps);  // minimizers hug the origin
    }
}

TEST_CASE("z - rho is invertible on a rho^2 disc around the origin") {
    // |z - rho| >= rho - rho^2 on the disc: exponent 1 certifies it, not 2
    auto D = InternalSetRep::disc(num(0), rho_pow(Rational(2)));
    auto u = GenFunction::identity() - GenFunction::constant(AsymptoticScalar::rho());
    auto rep = invertibility_on_set(u, D);
    CHECK(rep.invertible);
    CHECK(rep.n <= 2);
    CHECK(rep.pointwise_agrees);
}

TEST_CASE("set-wide and pointwise invertibility agree on random polynomial nets") {
    std::mt19937_64 rng{0x5EEDULL};
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::map<std::pair<int, int>, GenComplex> coeffs;
        coeffs[{0, 0}] = AsymptoticScalar::monomial(Complex{c(rng) * 3, c(rng)}, Rational(expo(rng)));
        coeffs[{1, 0}] = num(c(rng));
        auto u = GenFunction::poly(coeffs);
        auto D = InternalSetRep::disc(num(c(rng)), num(0.5 + std::abs(c(rng))));
        auto rep = invertibility_on_set(u, D);
        CHECK(rep.pointwise_agrees);
        checked += rep.points_checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("invertibility refuses unbounded sets") {
    auto ray = InternalSetRep::disc_net_radius(num(0), [](double eps) { return std::exp(1.0 / eps); },
                                               "exp-radius disc");
    CHECK_THROWS_AS(invertibility_on_set(GenFunction::identity(), ray), UnsupportedOperationError);
}

TEST_CASE("classification is monotone under set inclusion") {
    auto small = InternalSetRep::disc(num(0), num(0.5));
    auto big = InternalSetRep::disc(num(0), num(2.0));
    auto u = GenFunction::monomial(3, 0, rho_pow(Rational(-2)));
    auto rs = classify_on_set(u, small);
    auto rb = classify_on_set(u, big);
    REQUIRE(rs.worst().is_moderate());
    REQUIRE(rb.worst().is_moderate());
    CHECK(rs.max_exponent() <= rb.max_exponent());
}
