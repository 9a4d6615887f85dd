#include <doctest.h>

#include <memory>

#include <bergman/zerofinder.hpp>

using namespace bergman;

TEST_SUITE("zerofinder") {

TEST_CASE("weighted-disk zero locus") {
    CHECK(kq_zero_locus(0.5).empty());
    CHECK(kq_zero_locus(1.0).empty());
    CHECK(kq_zero_locus(2.0).empty());  // 4m < q+2 has no integer solution yet
    REQUIRE(kq_zero_locus(3.0).size() == 1);
    REQUIRE(kq_zero_locus(6.0).size() == 1);
    REQUIRE(kq_zero_locus(10.0).size() == 2);
    REQUIRE(kq_zero_locus(14.0).size() == 3);

    const double t8 = std::tan(pi / 8.0);
    CHECK(kq_zero_locus(6.0)[0] == doctest::Approx(-t8 * t8).epsilon(1e-15));
    CHECK(kq_zero_locus(10.0)[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    // just past the threshold the first zero enters near the boundary
    CHECK(kq_zero_locus(2.1).size() == 1);
    CHECK(kq_zero_locus(2.1)[0] < -0.9);
    CHECK_THROWS_AS(kq_zero_locus(-1.0), std::invalid_argument);
}

TEST_CASE("winding number counts the locus zero") {
    const SliceFn f = kq_slice_function(6.0);
    const double z6 = kq_zero_locus(6.0)[0];

    const Rect hit{z6 - 0.04, z6 + 0.05, -0.03, 0.035};
    const WindingResult in = winding_number(f, hit);
    CHECK(in.settled);
    CHECK(in.winding == 1);
    CHECK(in.min_modulus > 0.0);

    const Rect miss{0.1, 0.3, -0.1, 0.1};
    const WindingResult out = winding_number(f, miss);
    CHECK(out.settled);
    CHECK(out.winding == 0);

    // refinement must not change a settled count
    const WindingResult fine = winding_number(f, hit, 16384);
    CHECK(fine.settled);
    CHECK(fine.winding == in.winding);
}

TEST_CASE("find_zeros pins the locus points") {
    const SliceFn f = kq_slice_function(10.0);
    const std::vector<double> locus = kq_zero_locus(10.0);
    const SearchReport rep = find_zeros(f, Rect{-0.4, -0.03, -0.08, 0.085});
    REQUIRE(rep.total_winding == 2);
    REQUIRE(rep.zeros.size() == 2);
    // report is sorted by real part; locus is ordered m = 1, 2 (descending s)
    CHECK(std::abs(rep.zeros[0].zeros[0] - locus[1]) < 1e-12);
    CHECK(std::abs(rep.zeros[1].zeros[0] - locus[0]) < 1e-12);
    for (const auto& c : rep.zeros) {
        CHECK(c.winding == 1);
        CHECK(c.residuals[0] < 1e-12);
    }
}

TEST_CASE("contour through a zero is jittered, not mistrusted") {
    const SliceFn f = kq_slice_function(6.0);
    const double z6 = kq_zero_locus(6.0)[0];
    // left edge runs through the zero; its midpoint sample lands on it
    const SearchReport rep = find_zeros(f, Rect{z6, z6 + 0.1, -0.05, 0.05});
    CHECK(rep.total_winding == 1);
    REQUIRE(rep.zeros.size() == 1);
    CHECK(std::abs(rep.zeros[0].zeros[0] - z6) < 1e-10);
}

TEST_CASE("no certificate without tail margin") {
    auto se = std::make_shared<SeriesEvaluator>(build_table(DomainSpec{Annulus{0.5}}, 400));
    const SliceFn honest = slice_function(se, axis_slice(1, 0));
    const Rect band{-0.9, -0.28, -0.25, 0.25};
    CHECK(find_zeros(honest, band).total_winding == 2);

    // same series, tail bound inflated beyond any contour modulus: the
    // search must refuse to certify rather than report shaky zeros
    const SliceFn inflated = [honest](cx lambda) {
        EvaluatedValue v = honest(lambda);
        v.tail_bound += 1e6;
        return v;
    };
    CHECK_THROWS_AS(find_zeros(inflated, band), search_error);
}

TEST_CASE("annulus band zeros match the high-precision references") {
    auto se = std::make_shared<SeriesEvaluator>(build_table(DomainSpec{Annulus{0.5}}, 400));
    const SliceFn f = slice_function(se, axis_slice(1, 0));
    const SearchReport rep = find_zeros(f, Rect{-0.9, -0.28, -0.25, 0.25});
    REQUIRE(rep.zeros.size() == 2);
    const cx outer = rep.zeros[0].zeros[0];
    const cx inner = rep.zeros[1].zeros[0];
    CHECK(std::abs(outer - cx(-0.7071069855229035885568869)) < 5e-12);
    CHECK(std::abs(inner - cx(-0.3535532884251252541882526)) < 5e-12);
    CHECK(std::abs(outer.imag()) < 1e-12);
    CHECK(std::abs(inner.imag()) < 1e-12);
}

TEST_CASE("coverage of the q=2 disk finds nothing and says so honestly") {
    const CoverageReport cov = covered_disk_search(kq_slice_function(2.0), 0.95, 0.03);
    CHECK(cov.cells == 3276);
    CHECK(cov.unsettled_cells == 0);
    CHECK(cov.winding_sum == 0);
    CHECK(cov.zeros.empty());
    CHECK(cov.min_margin > 0.0);
    CHECK_THROWS_AS(covered_disk_search(kq_slice_function(2.0), -1.0, 0.03),
                    std::invalid_argument);
}

TEST_CASE("structural zero of the degenerate two-variable domain") {
    auto se = std::make_shared<SeriesEvaluator>(build_table(DomainSpec{Counterexample{}}, 40));
    const SliceFn f =
        slice_function(se, ray_slice(cvec{cx(0.35), cx(0.0)}, cvec{cx(0.0), cx(1.0)},
                                     cvec{cx(0.35), cx(0.40)}));
    // every admissible monomial carries a positive power of z_2
    CHECK(f(cx(0.0)).value == cx(0.0));
    const SearchReport rep = find_zeros(f, Rect{-0.12, 0.13, -0.11, 0.115});
    CHECK(rep.total_winding >= 1);
}

TEST_CASE("slice plumbing rejects bad input") {
    CHECK_THROWS_AS(axis_slice(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(ray_slice(cvec{cx(0.1)}, cvec{cx(1.0), cx(0.0)}, cvec{cx(0.1)}),
                    std::invalid_argument);
    auto se = std::make_shared<SeriesEvaluator>(build_table(DomainSpec{UnitDisk{}}, 20));
    CHECK_THROWS_AS(slice_function(se, axis_slice(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(slice_function(DomainSpec{Anh{1}}, axis_slice(2, 0)),
                    std::invalid_argument);
}

TEST_CASE("family verdicts") {
    SUBCASE("reciprocal closed forms cannot vanish") {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{UnitDisk{}});
        CHECK(v.verdict == "NO_ZEROS_FOUND");
        CHECK(v.detail.find("cannot vanish") != std::string::npos);
        CHECK(zero_free_verdict(DomainSpec{Ball{3}}).verdict == "NO_ZEROS_FOUND");
    }
    SUBCASE("weighted disk above the threshold certifies its locus") {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{WeightedDisk{3.0}});
        CHECK(v.verdict == "ZEROS_CERTIFIED");
        REQUIRE(v.zeros.size() == 1);
        CHECK(std::abs(v.zeros[0] - cx(kq_zero_locus(3.0)[0])) < 1e-10);
    }
    SUBCASE("weighted disk below the threshold reports a searched disk") {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{WeightedDisk{1.0}});
        CHECK(v.verdict == "NO_ZEROS_FOUND");
        CHECK(v.detail.find("0.95") != std::string::npos);
    }
    SUBCASE("egg with a unit exponent reduces to a weighted disk") {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{Egg{{1.0, 1.0, 1.0}}});
        CHECK(v.verdict == "ZEROS_CERTIFIED");
        REQUIRE(!v.zeros.empty());
        CHECK(std::abs(v.zeros[0] - cx(-1.0 / 3.0)) < 1e-10);
    }
    SUBCASE("the borderline egg is clean on every searched slice") {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{Egg{{1.0, 1.0}}});
        CHECK(v.verdict == "NO_ZEROS_FOUND");
        CHECK(v.detail.find("0.95") != std::string::npos);
    }
    SUBCASE("annulus certifies its band zeros") {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{Annulus{0.5}});
        CHECK(v.verdict == "ZEROS_CERTIFIED");
        CHECK(v.zeros.size() == 2);
    }
    SUBCASE("products inherit zeros from either factor") {
        const DomainSpec clean = make_product(DomainSpec{UnitDisk{}}, DomainSpec{Disk{0.5}});
        CHECK(zero_free_verdict(clean).verdict == "NO_ZEROS_FOUND");
        const DomainSpec dirty =
            make_product(DomainSpec{UnitDisk{}}, DomainSpec{WeightedDisk{6.0}});
        const ZeroVerdict v = zero_free_verdict(dirty);
        CHECK(v.verdict == "ZEROS_CERTIFIED");
        CHECK(v.detail.find("factor") != std::string::npos);
    }
}

}  // TEST_SUITE
