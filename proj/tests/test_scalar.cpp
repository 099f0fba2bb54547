#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "rhosharp/errors.hpp"
#include "rhosharp/scalar.hpp"

using namespace rhosharp;

namespace {

// Deterministic generator for property tests. Exponents live on a quarter-
// integer lattice so that unequal exponents are exactly unequal rationals.
struct ScalarGen {
    std::mt19937_64 rng{0x5EEDULL};

    double coeff_part() {
        std::uniform_real_distribution<double> d(-10.0, 10.0);
        double v = d(rng);
        return std::abs(v) < 0.05 ? 1.0 : v;
    }

    AsymptoticScalar operator()(bool real_only = false, int max_terms = 5) {
        std::uniform_int_distribution<int> count(0, max_terms);
        std::uniform_int_distribution<int> expo(-12, 32);
        int m = count(rng);
        std::set<int> quarters;
        while (static_cast<int>(quarters.size()) < m) quarters.insert(expo(rng));
        std::vector<Term> terms;
        for (int q : quarters) {
            Complex c{coeff_part(), real_only ? 0.0 : coeff_part()};
            terms.push_back({Rational(q, 4), c});
        }
        return AsymptoticScalar(std::move(terms), kDefaultCap);
    }

    AsymptoticScalar nonzero(bool real_only = false) {
        for (;;) {
            auto x = (*this)(real_only);
            if (!x.empty()) return x;
        }
    }
};

// Independent product oracle: plain nested-loop convolution into an exact
// exponent map, truncated at the documented output horizon.
AsymptoticScalar mul_oracle(const AsymptoticScalar& x, const AsymptoticScalar& y) {
    auto val_or_cap = [](const AsymptoticScalar& s) {
        return s.empty() ? s.cap() : s.leading_exponent();
    };
    Rational cap = std::min(x.cap() + val_or_cap(y), y.cap() + val_or_cap(x));
    std::map<Rational, Complex> acc;
    for (const Term& a : x.terms())
        for (const Term& b : y.terms()) acc[a.exponent + b.exponent] += a.coeff * b.coeff;
    std::vector<Term> terms;
    for (const auto& [e, c] : acc)
        if (e <= cap && std::abs(c) > 1e-9) terms.push_back({e, c});
    return AsymptoticScalar(std::move(terms), cap);
}

Rational val_lower_bound(const AsymptoticScalar& x) {
    return x.empty() ? x.cap() : x.leading_exponent();
}

}  // namespace

TEST_CASE("constructor normalizes term order, merges exponents, drops past the cap") {
    AsymptoticScalar x({{Rational(2), 1.0}, {Rational(0), 3.0}, {Rational(2), 2.0}, {Rational(30), 7.0}},
                       Rational(24));
    REQUIRE(x.size() == 2);
    CHECK(x.terms()[0].exponent == Rational(0));
    CHECK(x.terms()[0].coeff == Complex{3.0, 0.0});
    CHECK(x.terms()[1].exponent == Rational(2));
    CHECK(x.terms()[1].coeff == Complex{3.0, 0.0});
    CHECK(x.cap() == Rational(24));

    AsymptoticScalar dropped({{Rational(5), 1.0}}, Rational(3));
    CHECK(dropped.empty());
}

TEST_CASE("cancellation is relative to contributing mass") {
    // Two large coefficients cancelling to dust: gone.
    AsymptoticScalar a({{Rational(1), 1e8}, {Rational(1), -1e8 + 1e-8}}, kDefaultCap);
    CHECK(a.empty());
    // A genuinely tiny coefficient entered on its own: kept.
    AsymptoticScalar b({{Rational(1), 1e-30}}, kDefaultCap);
    CHECK(!b.empty());
}

TEST_CASE("addition merges caps and cancels exactly") {
    auto one_plus_rho = AsymptoticScalar::constant(1.0) + AsymptoticScalar::rho();
    auto sum = one_plus_rho + AsymptoticScalar::constant(-1.0);
    REQUIRE(sum.size() == 1);
    CHECK(sum.terms()[0].exponent == Rational(1));

    auto diff = one_plus_rho - one_plus_rho;
    CHECK(diff.empty());
    CHECK(diff.cap() == kDefaultCap);

    auto short_cap = AsymptoticScalar::rho(Rational(2));
    CHECK((one_plus_rho + short_cap).cap() == Rational(2));
}

TEST_CASE("product of conjugate binomials collapses the cross terms") {
    auto x = AsymptoticScalar::constant(1.0) + AsymptoticScalar::rho();
    auto y = AsymptoticScalar::constant(1.0) - AsymptoticScalar::rho();
    auto p = x * y;
    REQUIRE(p.size() == 2);
    CHECK(p.terms()[0].exponent == Rational(0));
    CHECK(p.terms()[1].exponent == Rational(2));
    CHECK(p.terms()[1].coeff == Complex{-1.0, 0.0});
}

TEST_CASE("product horizon accounts for what the factors do not know") {
    auto unknown = AsymptoticScalar::zero(Rational(10));
    auto p = unknown * AsymptoticScalar::rho();
    CHECK(p.empty());
    CHECK(p.cap() == Rational(11));
}

TEST_CASE("multiplication agrees with a brute-force convolution oracle") {
    ScalarGen gen;
    for (int trial = 0; trial < 300; ++trial) {
        auto x = gen();
        auto y = gen();
        auto got = x * y;
        auto expect = mul_oracle(x, y);
        CAPTURE(trial);
        CHECK(got.cap() == expect.cap());
        CHECK(equal_up_to_cap(got, expect));
    }
}

TEST_CASE("inverse of 1 - rho at a short horizon is the truncated geometric sum") {
    auto x = AsymptoticScalar::constant(1.0, Rational(3)) - AsymptoticScalar::rho(Rational(3));
    auto r = invert(x);
    REQUIRE(r.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(r.terms()[k].exponent == Rational(k));
        CHECK(std::abs(r.terms()[k].coeff - Complex{1.0, 0.0}) < 1e-14);
    }
    CHECK(r.cap() == Rational(3));
}

TEST_CASE("inverse round-trip leaves only what sits beyond the certified horizon") {
    ScalarGen gen;
    for (int trial = 0; trial < 200; ++trial) {
        auto x = gen.nonzero();
        auto r = invert(x);
        auto residual = x * r - AsymptoticScalar::constant(1.0, Rational(1000));
        CAPTURE(trial);
        CAPTURE(to_string(x));
        CHECK(residual.empty());
        // x r = 1 + O(rho^(cap - v)): nothing sharper can be promised.
        CHECK(residual.cap() >= x.cap() - x.leading_exponent());
    }
    CHECK_THROWS_AS(invert(AsymptoticScalar::zero()), NotInvertibleError);
    CHECK(!try_invert(AsymptoticScalar::zero(Rational(5))).has_value());
}

TEST_CASE("valuation and sharp norm") {
    auto x = AsymptoticScalar::monomial(2.0, Rational(3, 2));
    auto v = x.valuation();
    REQUIRE(v.is_exact());
    CHECK(v.value == Rational(3, 2));
    CHECK(x.sharp_norm().value == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
    CHECK(!x.sharp_norm().is_upper_bound);

    auto z = AsymptoticScalar::zero(Rational(10));
    auto vz = z.valuation();
    CHECK(vz.kind == ExtendedValuation::Kind::AtLeast);
    CHECK(vz.value == Rational(10));
    CHECK(z.sharp_norm().is_upper_bound);
}

TEST_CASE("valuations add exactly under multiplication") {
    ScalarGen gen;
    for (int trial = 0; trial < 500; ++trial) {
        auto x = gen.nonzero();
        auto y = gen.nonzero();
        auto p = x * y;
        REQUIRE(!p.empty());
        CHECK(p.leading_exponent() == x.leading_exponent() + y.leading_exponent());
    }
}

TEST_CASE("strong triangle inequality holds exactly at the valuation level") {
    ScalarGen gen;
    for (int trial = 0; trial < 500; ++trial) {
        auto x = gen();
        auto y = gen();
        auto z = gen();
        Rational dxz = val_lower_bound(x - z);
        Rational dxy = val_lower_bound(x - y);
        Rational dyz = val_lower_bound(y - z);
        // d(x,z) <= max(d(x,y), d(y,z)) reads v(x-z) >= min(v(x-y), v(y-z)).
        CAPTURE(trial);
        CHECK(dxz >= std::min(dxy, dyz));
    }
}

TEST_CASE("compare orders real scalars and rejects surviving imaginary parts") {
    auto one = AsymptoticScalar::constant(1.0);
    auto one_plus_rho = one + AsymptoticScalar::rho();
    CHECK(compare(one_plus_rho, one) == Ordering::Greater);
    CHECK(compare(one, one_plus_rho) == Ordering::Less);
    CHECK(compare(one, AsymptoticScalar::constant(1.0)) == Ordering::Equivalent);
    CHECK(compare(one + AsymptoticScalar::monomial(Complex{0, 1}, Rational(2)), one) ==
          Ordering::Incomparable);

    // rho-scale differences dominate any coefficient size.
    auto tiny_now = AsymptoticScalar::monomial(1e-9, Rational(1));
    auto big_later = AsymptoticScalar::monomial(1e9, Rational(2));
    CHECK(compare(tiny_now, big_later) == Ordering::Greater);
}

TEST_CASE("compare is antisymmetric and transitive on random real scalars") {
    ScalarGen gen;
    std::vector<AsymptoticScalar> xs;
    for (int i = 0; i < 30; ++i) xs.push_back(gen(true));
    for (const auto& x : xs)
        for (const auto& y : xs) {
            auto xy = compare(x, y);
            auto yx = compare(y, x);
            if (xy == Ordering::Equivalent) CHECK(yx == Ordering::Equivalent);
            if (xy == Ordering::Less) CHECK(yx == Ordering::Greater);
            if (xy == Ordering::Greater) CHECK(yx == Ordering::Less);
        }
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (const auto& z : xs)
                if (compare(x, y) == Ordering::Less && compare(y, z) == Ordering::Less)
                    CHECK(compare(x, z) == Ordering::Less);
}

TEST_CASE("pow matches repeated multiplication and inverts on negative exponents") {
    ScalarGen gen;
    for (int trial = 0; trial < 50; ++trial) {
        auto x = gen.nonzero();
        auto by_pow = pow(x, 3);
        auto by_mul = x * x * x;
        CHECK(equal_up_to_cap(by_pow, by_mul));
    }
    auto x = AsymptoticScalar::constant(2.0) + AsymptoticScalar::rho();
    auto r = pow(x, -2);
    auto residual = r * x * x - AsymptoticScalar::constant(1.0, Rational(1000));
    CHECK(residual.empty());
}

TEST_CASE("conjugation and modulus square") {
    auto z = AsymptoticScalar::monomial(Complex{3.0, 4.0}, Rational(1));
    auto m = abs_squared(z);
    REQUIRE(m.size() == 1);
    CHECK(m.terms()[0].exponent == Rational(2));
    CHECK(m.terms()[0].coeff.real() == doctest::Approx(25.0));
    CHECK(m.is_real());
}

TEST_CASE("log magnitude stays finite where the double value overflows") {
    auto x = AsymptoticScalar::monomial(1.0, Rational(-50));
    double eps = std::pow(0.5, 48);
    CHECK(!std::isfinite(std::abs(x.eval_complex(eps))));
    CHECK(x.log_abs(eps) == doctest::Approx(-50.0 * std::log(eps)).epsilon(1e-12));
}

TEST_CASE("square root of a positive real scalar") {
    auto one = AsymptoticScalar::constant(1.0);
    auto x = one + Complex{2, 0} * AsymptoticScalar::rho() + AsymptoticScalar::monomial(1.0, Rational(2));
    CHECK(equal_up_to_cap(sqrt_real(x), one + AsymptoticScalar::rho()));

    auto z = AsymptoticScalar::monomial(Complex{3.0, 4.0}, Rational(1));
    CHECK(equal_up_to_cap(sqrt_real(abs_squared(z)), AsymptoticScalar::monomial(5.0, Rational(1))));

    // sqrt(cap/2) of nothing is still nothing, at half the horizon.
    auto e = sqrt_real(AsymptoticScalar::zero(Rational(10)));
    CHECK(e.empty());
    CHECK(e.cap() == Rational(5));

    ScalarGen gen;
    for (int trial = 0; trial < 100; ++trial) {
        auto y = gen.nonzero(true);
        if (y.leading_coeff().real() <= 0.0) y = -y;
        auto s = sqrt_real(y * y);
        CAPTURE(trial);
        CHECK(equal_up_to_cap(s, y));
    }
    CHECK_THROWS(sqrt_real(-one));
    CHECK_THROWS(sqrt_real(AsymptoticScalar::monomial(Complex{0.0, 1.0}, Rational(0))));
}

TEST_CASE("canonical equality ignores knowledge beyond the shared horizon") {
    auto a = AsymptoticScalar::constant(1.0, Rational(5)) + AsymptoticScalar::monomial(1.0, Rational(4));
    auto b = AsymptoticScalar::constant(1.0, Rational(3));
    CHECK(equal_up_to_cap(a.truncated(Rational(3)), b));
    CHECK(equal_up_to_cap(a, b));  // horizon min(5,3) = 3 hides the rho^4 term
    auto c = AsymptoticScalar::constant(1.0, Rational(5)) + AsymptoticScalar::monomial(1.0, Rational(2));
    CHECK(!equal_up_to_cap(a, c));
}
