#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "rhosharp/nets.hpp"

using namespace rhosharp;

namespace {

const GridSpec kGrid{};

SampledNet constant_net(Complex v) {
    return sample([v](double) { return v; }, kGrid, "const");
}

}  // namespace

TEST_CASE("sampling a scalar records exact log magnitudes") {
    auto x = AsymptoticScalar::monomial(2.0, Rational(3, 2));
    auto net = sample(x, kGrid);
    REQUIRE(net.points.size() == static_cast<std::size_t>(kGrid.size()));
    for (const auto& p : net.points) {
        CHECK(p.log_abs == doctest::Approx(std::log(2.0) + 1.5 * p.log_eps).epsilon(1e-12));
        CHECK(!p.overflow);
    }
}

TEST_CASE("valuation estimate recovers monomial exponents") {
    for (int num = -12; num <= 32; num += 5) {
        auto x = AsymptoticScalar::monomial(3.7, Rational(num, 4), Rational(100));
        auto est = estimate_valuation(sample(x, kGrid));
        REQUIRE(est.status == ValuationEstimate::Status::Ok);
        CHECK(est.value == doctest::Approx(num / 4.0).epsilon(1e-9));
    }
}

TEST_CASE("valuation estimate tracks the exact valuation within 0.05") {
    // Exponent gaps of at least 1/4 and coefficient ratios of at most 10 keep
    // the subleading terms from bending the fitted slope.
    std::mt19937_64 rng{0x5EEDULL};
    std::uniform_int_distribution<int> expo(-12, 32);
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> mag(0.5, 5.0);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<int> quarters;
        int m = count(rng);
        while (static_cast<int>(quarters.size()) < m) quarters.insert(expo(rng));
        std::vector<Term> terms;
        for (int q : quarters)
            terms.push_back({Rational(q, 4), Complex{std::copysign(mag(rng), sign(rng)),
                                                     std::copysign(mag(rng), sign(rng))}});
        AsymptoticScalar x(std::move(terms), Rational(100));
        auto est = estimate_valuation(sample(x, kGrid));
        REQUIRE(est.status == ValuationEstimate::Status::Ok);
        CAPTURE(trial);
        CAPTURE(to_string(x));
        CHECK(std::abs(est.value - to_double(x.valuation().value)) <= 0.05);
    }
}

TEST_CASE("classification of the basic regimes") {
    auto moderate = classify(sample(AsymptoticScalar::monomial(1.0, Rational(-3), Rational(100)), kGrid));
    CHECK(moderate.kind == Classification::Kind::Moderate);
    CHECK(moderate.n == 3);

    auto bounded = classify(sample(AsymptoticScalar::monomial(5.0, Rational(3, 2), Rational(100)), kGrid));
    CHECK(bounded.kind == Classification::Kind::Moderate);
    CHECK(bounded.n == 0);

    auto steep = classify(sample(AsymptoticScalar::monomial(1.0, Rational(25), Rational(100)), kGrid));
    CHECK(steep.kind == Classification::Kind::Negligible);

    auto zero = classify(sample(AsymptoticScalar::zero(), kGrid));
    CHECK(zero.kind == Classification::Kind::Negligible);
}

TEST_CASE("negligibility wins where a moderate bound also exists") {
    // exp(-1/eps) is bounded by 1, yet falls faster than every power.
    auto net = sample_log([](double eps) { return -1.0 / eps; }, kGrid, "exp(-1/eps)");
    auto c = classify(net);
    CHECK(c.kind == Classification::Kind::Negligible);
}

TEST_CASE("magnitudes beyond every power classify as neither") {
    auto net = sample_log([](double eps) { return 1.0 / eps; }, kGrid, "exp(1/eps)");
    auto c = classify(net);
    CHECK(c.kind == Classification::Kind::Neither);

    // Through the plain callable the value overflows, same verdict.
    auto net2 = sample([](double eps) { return Complex{std::exp(1.0 / eps), 0.0}; }, kGrid);
    CHECK(classify(net2).kind == Classification::Kind::Neither);
}

TEST_CASE("a slowly steepening exponent classifies as negligible") {
    // |x_eps| = eps^(ln(1/eps)): the local slope grows without bound.
    auto net = sample_log([](double eps) { return -std::log(1.0 / eps) * std::log(1.0 / eps); },
                          kGrid, "eps^(ln(1/eps))");
    auto c = classify(net);
    CHECK(c.kind == Classification::Kind::Negligible);
}

TEST_CASE("underflow to zero reads as negligible, not as missing data") {
    auto net = sample([](double eps) { return Complex{std::exp(-1.0 / eps), 0.0}; }, kGrid);
    CHECK(classify(net).kind == Classification::Kind::Negligible);
}

TEST_CASE("interleaved exact zeros corroborate the surviving points") {
    int idx = 0;
    auto net = sample(
        [&idx](double) {
            return (idx++ % 4 == 0) ? Complex{1.0, 0.0} : Complex{};
        },
        kGrid, "sparse");
    auto est = estimate_valuation(net);
    CHECK(est.status == ValuationEstimate::Status::Ok);  // zeros count as coverage
    CHECK(est.value == doctest::Approx(0.0).epsilon(1e-9));
    auto c = classify(net);
    CHECK(c.kind == Classification::Kind::Moderate);
    CHECK(c.n == 0);
}

TEST_CASE("a lone nonzero reading is not enough for a slope") {
    int idx = 0;
    auto net = sample(
        [&idx](double) {
            return (idx++ == 30) ? Complex{1.0, 0.0} : Complex{};
        },
        kGrid, "lone spike");
    auto est = estimate_valuation(net);
    CHECK(est.status == ValuationEstimate::Status::InsufficientData);
    auto c = classify(net);  // the sup bound still applies
    CHECK(c.kind == Classification::Kind::Moderate);
    CHECK(c.n == 0);
}

TEST_CASE("relative classification absorbs rounding but flags real disagreement") {
    auto scale = constant_net(Complex{1.0, 0.0});

    int j = 0;
    auto noisy = sample([&j](double) { return Complex{1e-15 * (1 + j++ % 7), 0.0}; }, kGrid, "noise");
    CHECK(classify_relative(noisy, scale).kind == Classification::Kind::Negligible);
    // The same net read absolutely is a perfectly moderate nonzero quantity.
    CHECK(classify(noisy).kind == Classification::Kind::Moderate);

    auto off = constant_net(Complex{0.5, 0.0});
    CHECK(classify_relative(off, scale).kind == Classification::Kind::Moderate);
    CHECK(!classify_relative(off, scale).is_negligible());
}

TEST_CASE("net difference requires matching grids") {
    auto a = constant_net(Complex{1.0, 0.0});
    SampledNet b{GridSpec{8, 20, 0.5}, {}, ""};
    for (int i = 0; i < b.grid.size(); ++i) b.points.push_back({});
    CHECK_THROWS(net_difference(a, b));
}
