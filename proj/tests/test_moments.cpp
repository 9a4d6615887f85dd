#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <bergman/moments.hpp>
#include <bergman/special.hpp>

using namespace bergman;

namespace {
std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() / "bergman_moments_test";
    std::filesystem::create_directories(p);
    return p;
}
}  // namespace

TEST_SUITE("moments") {

TEST_CASE("disk moments match the closed form") {
    const DomainSpec d{Disk{0.5}};
    MomentTable t = build_table(d, 6);
    for (int k = 0; k <= 6; ++k) {
        const double want = pi * std::pow(0.5, 2 * k + 2) / (k + 1);
        CHECK(t.at(MultiIndex{k}).value == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("ball moments match the factorial formula") {
    const DomainSpec d{Ball{2}};
    MomentTable t = build_table(d, 4);
    // pi^n a! b! / (n + |a|)!
    CHECK(t.at(MultiIndex{0, 0}).value == doctest::Approx(pi * pi / 2.0).epsilon(1e-13));
    CHECK(t.at(MultiIndex{1, 0}).value == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
    CHECK(t.at(MultiIndex{1, 1}).value == doctest::Approx(pi * pi / 24.0).epsilon(1e-13));
    CHECK(t.at(MultiIndex{2, 1}).value == doctest::Approx(pi * pi * 2.0 / 120.0).epsilon(1e-13));
}

TEST_CASE("egg moments: closed Dirichlet value against raw quadrature") {
    const DomainSpec d{Egg{{2.0, 3.0}}};
    MomentTable t = build_table(d, 3);
    for (const MultiIndex alpha : {MultiIndex{0, 0}, MultiIndex{1, 0}, MultiIndex{1, 2}}) {
        const MomentEntry direct = detail_mom::region_moment(d, alpha, 1e-11);
        CHECK(t.at(alpha).value == doctest::Approx(direct.value).epsilon(1e-8));
    }
}

TEST_CASE("weighted disk moments are beta values") {
    const DomainSpec d{WeightedDisk{3.0}};
    MomentTable t = build_table(d, 5);
    for (int k = 0; k <= 5; ++k) {
        const double want = 2.0 * pi * beta_fn(2.0 * k + 2.0, 4.0);
        CHECK(t.at(MultiIndex{k}).value == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("weighted disk normalization against a Monte Carlo oracle") {
    // area integral of (1-|z|)^q over the disk, q = 1: exact pi/3
    const DomainSpec d{WeightedDisk{1.0}};
    MomentTable t = build_table(d, 0);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t N = 1'000'000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double r = std::sqrt(unif(rng));  // uniform on the unit disk
        const double w = 1.0 - r;
        sum += w;
        sumsq += w * w;
    }
    const double mean = sum / N;
    const double se = std::sqrt((sumsq / N - mean * mean) / N);
    CHECK(std::abs(t.at(MultiIndex{0}).value - pi * mean) < 5.0 * pi * se);
    CHECK(t.at(MultiIndex{0}).value == doctest::Approx(pi / 3.0).epsilon(1e-12));
}

TEST_CASE("annulus Laurent moments") {
    const DomainSpec d{Annulus{0.5}};
    MomentTable t = build_table(d, 3);
    CHECK(t.at(MultiIndex{-1}).value == doctest::Approx(2.0 * pi * std::log(2.0)).epsilon(1e-13));
    CHECK(t.at(MultiIndex{0}).value == doctest::Approx(pi * (1.0 - 0.25)).epsilon(1e-13));
    CHECK(t.at(MultiIndex{-2}).value ==
          doctest::Approx(2.0 * pi * (4.0 - 1.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("annulus moments refuse orders past the double range") {
    CHECK_THROWS_AS(detail_mom::annulus_moment(0.5, -600), std::invalid_argument);
    CHECK_NOTHROW(detail_mom::annulus_moment(0.5, -400));
}

TEST_CASE("limit domain moments: admissibility and the closed value") {
    const DomainSpec d{Counterexample{}};
    MomentTable t = build_table(d, 6);
    CHECK(t.at(MultiIndex{0, 1}).value == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
    // exponents with alpha2 <= alpha1 do not normalize; they are excluded
    CHECK_THROWS_AS(t.at(MultiIndex{0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(t.at(MultiIndex{1, 1}), std::invalid_argument);
    CHECK(!t.excluded.empty());
    for (const auto& e : t.entries) CHECK(e.first[1] > e.first[0]);
}

TEST_CASE("table caps and positivity") {
    const DomainSpec d{Anh{1}};
    MomentTable t = build_table(d, 5, 1e-9);
    int count = 0;
    for (const auto& e : t.entries) {
        CHECK(e.second.value > 0.0);
        // quadrature entries may settle up to three decades above the target
        CHECK(e.second.abs_error <= 1e-6 * e.second.value * 1.01);
        CHECK(e.first[0] + e.first[1] <= 5);
        ++count;
    }
    CHECK(count == 21);  // all multi-indices with |alpha| <= 5 in two variables
}

TEST_CASE("save and load round trip exactly") {
    const DomainSpec d{Egg{{1.0, 2.0}}};
    MomentTable t = build_table(d, 4);
    const auto path = temp_dir() / "egg12.json";
    save_table(t, path);
    MomentTable back = load_table(path, d, 4, t.tol);
    REQUIRE(back.entries.size() == t.entries.size());
    for (const auto& [alpha, entry] : t.entries) {
        CHECK(back.at(alpha).value == entry.value);  // bitwise, shortest-round-trip JSON
        CHECK(back.at(alpha).abs_error == entry.abs_error);
        CHECK(back.at(alpha).method == entry.method);
    }
    CHECK(back.hash == t.hash);
}

TEST_CASE("load rejects mismatched expectations") {
    const DomainSpec d{Egg{{1.0, 2.0}}};
    MomentTable t = build_table(d, 4);
    const auto path = temp_dir() / "egg12b.json";
    save_table(t, path);
    CHECK_THROWS_AS(load_table(path, d, 5, t.tol), cache_error);
    CHECK_THROWS_AS(load_table(path, DomainSpec{Egg{{1.0, 3.0}}}, 4, t.tol), cache_error);
}

TEST_CASE("load rejects tampered content") {
    const DomainSpec d{Disk{0.5}};
    MomentTable t = build_table(d, 3);
    const auto path = temp_dir() / "tamper.json";
    save_table(t, path);
    std::string text;
    {
        std::ifstream is(path);
        text.assign(std::istreambuf_iterator<char>(is), {});
    }
    // flip the recorded domain without recomputing the hash
    auto pos = text.find("0.5");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "0.6");
    {
        std::ofstream os(path);
        os << text;
    }
    CHECK_THROWS_AS(load_table(path), cache_error);
}

TEST_CASE("load rejects a truncated file") {
    const auto path = temp_dir() / "trunc.json";
    std::ofstream(path) << "{\"domain\": {\"variant\": \"unit_disk\"";
    CHECK_THROWS(load_table(path));
}

TEST_CASE("cache store probes and fills") {
    const auto dir = temp_dir() / "cache";
    std::filesystem::remove_all(dir);
    CacheStore store{dir};
    const DomainSpec d{WeightedDisk{2.0}};
    CHECK(!store.probe(d, 8, 1e-10).has_value());
    MomentTable t = get_or_build(store, d, 8, 1e-10);
    CHECK(std::filesystem::exists(store.path_for(d, 8, 1e-10)));
    auto hit = store.probe(d, 8, 1e-10);
    REQUIRE(hit.has_value());
    CHECK(hit->at(MultiIndex{3}).value == t.at(MultiIndex{3}).value);
    // a different tolerance is a different artifact
    CHECK(!store.probe(d, 8, 1e-8).has_value());
}

}  // TEST_SUITE
