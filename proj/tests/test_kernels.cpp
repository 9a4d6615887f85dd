#include <doctest.h>

#include <memory>
#include <random>

#include <bergman/kernels.hpp>

using namespace bergman;

namespace {

// uniform draw from the polydisk with the given per-coordinate radii
cvec random_point(std::mt19937_64& rng, const std::vector<double>& radii) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    cvec z(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        z[i] = std::polar(radii[i] * std::sqrt(unif(rng)), 2.0 * pi * unif(rng));
    return z;
}

cvec random_point(std::mt19937_64& rng, int n, double radius) {
    return random_point(rng, std::vector<double>(n, radius));
}

// uniform draw from the euclidean ball of the given radius
cvec ball_point(std::mt19937_64& rng, int n, double radius) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    cvec z(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        z[i] = cx(g(rng), g(rng));
        norm2 += std::norm(z[i]);
    }
    const double scale = radius * std::pow(unif(rng), 1.0 / (2.0 * n)) / std::sqrt(norm2);
    for (auto& c : z) c *= scale;
    return z;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("disk closed form") {
    const DomainSpec d{UnitDisk{}};
    const cx z(0.3, 0.1), w(0.2, -0.4);
    const cx s = z * std::conj(w);
    const cx want = 1.0 / (pi * (1.0 - s) * (1.0 - s));
    CHECK(std::abs(eval_closed(d, cvec{z}, cvec{w}).value - want) < 1e-15);

    const DomainSpec d2{Disk{0.5}};
    const cx s2 = (0.4 * z) * std::conj(0.4 * w);
    const cx u = 1.0 - s2 / 0.25;
    const cx want2 = 1.0 / (pi * 0.25 * u * u);
    CHECK(std::abs(eval_closed(d2, cvec{0.4 * z}, cvec{0.4 * w}).value - want2) < 1e-12);

    // shrinking the domain raises the diagonal value at the center
    CHECK(eval_closed(DomainSpec{Disk{0.5}}, cvec{cx(0.0)}, cvec{cx(0.0)}).value.real() ==
          doctest::Approx(4.0 / pi).epsilon(1e-14));
    CHECK(eval_closed(DomainSpec{Disk{0.75}}, cvec{cx(0.0)}, cvec{cx(0.0)}).value.real() ==
          doctest::Approx(16.0 / (9.0 * pi)).epsilon(1e-14));
    CHECK(eval_closed(d, cvec{cx(0.0)}, cvec{cx(0.0)}).value.real() ==
          doctest::Approx(1.0 / pi).epsilon(1e-14));
}

TEST_CASE("ball closed form and product structure") {
    const DomainSpec ball{Ball{2}};
    const cvec z{cx(0.2, 0.1), cx(-0.3, 0.0)}, w{cx(0.1, 0.0), cx(0.2, 0.2)};
    cx sum = 0.0;
    for (int j = 0; j < 2; ++j) sum += z[j] * std::conj(w[j]);
    const cx want = (2.0 / (pi * pi)) * std::pow(1.0 - sum, -3.0);
    CHECK(std::abs(eval_closed(ball, z, w).value - want) < 1e-14);

    // polydisk = product of disks; the closed kernel factors
    const DomainSpec poly{Polydisk{{1.0, 0.5}}};
    const DomainSpec prod = make_product(DomainSpec{UnitDisk{}}, DomainSpec{Disk{0.5}});
    const cvec z2{cx(0.3, 0.2), cx(0.1, -0.1)}, w2{cx(-0.2, 0.1), cx(0.2, 0.05)};
    CHECK(std::abs(eval_closed(poly, z2, w2).value - eval_closed(prod, z2, w2).value) < 1e-14);
}

TEST_CASE("weighted disk closed form against its series") {
    std::mt19937_64 rng(11);
    for (double q : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        const DomainSpec d{WeightedDisk{q}};
        SeriesEvaluator se(build_table(d, 220));
        for (int i = 0; i < 30; ++i) {
            const cvec z = random_point(rng, 1, 0.9), w = random_point(rng, 1, 0.88);
            const EvaluatedValue a = se.eval(z, w);
            const cx b = eval_closed(d, z, w).value;
            // compare at the scale of the all-positive term sum: near
            // |s| = 0.8 the terms reach ~1e6 while the kernel cancels to O(1)
            const cvec za{cx(std::abs(z[0]))}, wa{cx(std::abs(w[0]))};
            const double scale = std::max(1.0, std::abs(eval_closed(d, za, wa).value));
            CHECK(std::abs(a.value - b) < 1e-8 * scale);
            CHECK(std::abs(a.value - b) <= a.tail_bound + 1e-10 * scale);
        }
        // the tiny-s series branch of the closed form must join smoothly
        for (double s : {1e-9, 1e-6, 5e-5, 2e-4}) {
            const cvec z{cx(std::sqrt(s))}, w{cx(std::sqrt(s))};
            CHECK(std::abs(se.eval(z, w).value - eval_closed(d, z, w).value) < 1e-10);
        }
    }
}

TEST_CASE("series matches closed forms on the core families") {
    std::mt19937_64 rng(7);

    auto check_pair = [](const SeriesEvaluator& se, const DomainSpec& d, const cvec& z,
                         const cvec& w) {
        const EvaluatedValue a = se.eval(z, w);
        const cx b = eval_closed(d, z, w).value;
        CHECK(std::abs(a.value - b) < 1e-8);
        CHECK(std::abs(a.value - b) <= a.tail_bound + 1e-12);
    };

    {
        const DomainSpec d{UnitDisk{}};
        SeriesEvaluator se(build_table(d, 160));
        for (int i = 0; i < 40; ++i)
            check_pair(se, d, random_point(rng, 1, 0.7), random_point(rng, 1, 0.7));
    }
    {
        // keep the euclidean norm below 0.7 so the inner product stays small
        const DomainSpec d{Ball{2}};
        SeriesEvaluator se(build_table(d, 60));
        for (int i = 0; i < 40; ++i)
            check_pair(se, d, ball_point(rng, 2, 0.7), ball_point(rng, 2, 0.7));
    }
    {
        const DomainSpec d{Polydisk{{1.0, 0.5}}};
        SeriesEvaluator se(build_table(d, 60));
        for (int i = 0; i < 40; ++i)
            check_pair(se, d, random_point(rng, {0.7, 0.35}), random_point(rng, {0.7, 0.35}));
    }
}

TEST_CASE("truncation tails are honest against deeper truncations") {
    const DomainSpec d{Ball{2}};
    SeriesEvaluator shallow(build_table(d, 24));
    SeriesEvaluator deep(build_table(d, 64));
    std::mt19937_64 rng(23);
    for (int i = 0; i < 25; ++i) {
        const cvec z = random_point(rng, 2, 0.55), w = random_point(rng, 2, 0.55);
        const EvaluatedValue a = shallow.eval(z, w);
        const EvaluatedValue b = deep.eval(z, w);
        REQUIRE(a.certified);
        CHECK(std::abs(a.value - b.value) <= a.tail_bound * 1.0000001);
    }
}

TEST_CASE("evaluator degree budget can be lowered after the fact") {
    const DomainSpec d{UnitDisk{}};
    MomentTable t = build_table(d, 80);
    SeriesEvaluator full(t), cut(t, 30);
    const cvec z{cx(0.4, 0.2)}, w{cx(0.3, -0.1)};
    CHECK(cut.eval(z, w).tail_bound > full.eval(z, w).tail_bound);
    CHECK(std::abs(cut.eval(z, w).value - full.eval(z, w).value) <= cut.eval(z, w).tail_bound);
}

TEST_CASE("laurent series refuses the puncture") {
    const DomainSpec d{Annulus{0.5}};
    SeriesEvaluator se(build_table(d, 40));
    // s = 0 hits the pole of every negative-order term
    CHECK_THROWS_AS(se.eval_products(std::vector<cx>{cx(0.0)}), std::domain_error);
    // the point z = 0 is not even in the annulus
    CHECK_THROWS_AS(se.eval(cvec{cx(0.0)}, cvec{cx(0.7)}), std::domain_error);
    // a regular point evaluates with both signs of the order contributing
    CHECK(se.eval(cvec{cx(0.7)}, cvec{cx(0.7)}).value.real() > 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
    const DomainSpec d{Ball{2}};
    SeriesEvaluator se(build_table(d, 10));
    CHECK_THROWS_AS(se.eval(cvec{cx(0.1)}, cvec{cx(0.1)}), std::invalid_argument);
    CHECK_THROWS_AS(eval_closed(DomainSpec{UnitDisk{}}, cvec{cx(0.1), cx(0.1)}, cvec{cx(0.1)}),
                    std::invalid_argument);
}

TEST_CASE("no closed form advertised where none exists") {
    CHECK(has_closed_form(DomainSpec{UnitDisk{}}));
    CHECK(has_closed_form(DomainSpec{WeightedDisk{2.0}}));
    CHECK(!has_closed_form(DomainSpec{Anh{1}}));
    CHECK(!has_closed_form(DomainSpec{Annulus{0.5}}));
    CHECK(!has_closed_form(DomainSpec{Counterexample{}}));
    CHECK_THROWS_AS(eval_closed(DomainSpec{Anh{1}}, cvec{cx(0.1), cx(0.1)},
                                cvec{cx(0.1), cx(0.1)}),
                    std::invalid_argument);
}

TEST_CASE("hartogs base restriction equals the weighted disk over pi") {
    const double q = 2.0;
    const DomainSpec d{HartogsOverDisk{q}};
    SeriesEvaluator se(build_table(d, 40));
    for (double x : {0.1, 0.3, 0.5}) {
        const cvec z{cx(x), cx(0.0)}, w{cx(x), cx(0.0)};
        const double got = se.eval(z, w).value.real();
        const double want = hartogs_base_restriction(q, cx(x), cx(x)).real();
        CHECK(std::abs(got - want) < 1e-8);
    }
}

TEST_CASE("uncertain evaluations say so") {
    // close to the convergence boundary the block ratio stops certifying;
    // the flag must drop rather than the bound silently lying
    const DomainSpec d{UnitDisk{}};
    SeriesEvaluator se(build_table(d, 30));
    const EvaluatedValue v = se.eval(cvec{cx(0.993)}, cvec{cx(0.993)});
    CHECK(!v.certified);
    CHECK(v.tail_bound > 0.0);
}

}  // TEST_SUITE
