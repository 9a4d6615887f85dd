// Acceptance gate: every release-blocking behavior in one binary, one line
// of output per criterion. Exits nonzero unless every criterion passes.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <bergman/experiments.hpp>
#include <bergman/transforms.hpp>
#include <bergman/zerofinder.hpp>

using namespace bergman;

namespace {

struct check_fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw check_fail(what);
}

// allowance for accumulated floating-point rounding on top of the
// truncation tail bound, which only covers the dropped series terms
double fp_slack(double scale) {
    return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + scale);
}

cvec coord_point(std::mt19937_64& rng, int n, double radius) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    cvec z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::polar(radius * std::sqrt(unif(rng)), 2.0 * pi * unif(rng));
    return z;
}

std::string cache_dir() {
    namespace fs = std::filesystem;
    const fs::path p = fs::temp_directory_path() / "bergman_acceptance_cache";
    fs::create_directories(p);
    return p.string();
}

// 1. closed form vs series on the disk, bidisk, and ball, the ball series
//    built from the egg moments with exponents (2, 2)
std::string c1_closed_vs_series() {
    std::mt19937_64 rng(20260816);
    struct Fam {
        DomainSpec closed;
        DomainSpec series;
        int degree;
        int n;
    };
    const std::vector<Fam> fams{
        {DomainSpec{UnitDisk{}}, DomainSpec{UnitDisk{}}, 60, 1},
        {DomainSpec{Polydisk{{1.0, 1.0}}}, DomainSpec{Polydisk{{1.0, 1.0}}}, 60, 2},
        {DomainSpec{Ball{2}}, DomainSpec{Egg{{2.0, 2.0}}}, 200, 2},
    };
    double worst = 0.0;
    for (const Fam& fam : fams) {
        SeriesEvaluator se(build_table(fam.series, fam.degree));
        for (int i = 0; i < 100; ++i) {
            const cvec z = coord_point(rng, fam.n, 0.7), w = coord_point(rng, fam.n, 0.7);
            const EvaluatedValue a = se.eval(z, w);
            const cx b = eval_closed(fam.closed, z, w).value;
            const double diff = std::abs(a.value - b);
            worst = std::max(worst, diff);
            expect(diff <= 1e-8, "difference " + canonical_num(diff) + " above 1e-8");
            expect(diff <= a.tail_bound + fp_slack(std::abs(b)),
                   "difference " + canonical_num(diff) + " above tail bound " +
                       canonical_num(a.tail_bound));
        }
    }
    return "3 families x 100 pairs, worst difference " + canonical_num(worst);
}

// 2. weighted-disk kernel: series vs closed form across the s-disk,
//    including the tiny-s branch of the closed form
std::string c2_weighted_disk_forms() {
    double worst = 0.0;
    for (double q : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        SeriesEvaluator se(build_table(DomainSpec{WeightedDisk{q}}, 240));
        std::vector<cx> samples;
        for (double r : {0.8, 0.5, 0.2, 0.01})
            for (int k = 0; k < 8; ++k)
                samples.push_back(std::polar(r, 2.0 * pi * k / 8.0 + 0.37));
        for (double r : {1e-9, 1e-6, 5e-5, 9.9e-5})
            samples.push_back(cx(r, 0.3 * r));
        for (cx s : samples) {
            // conditioning of the evaluation: the all-positive term sum,
            // attained on the positive axis at the same modulus
            const double cond = std::max(1.0, eval_kq_s(q, std::abs(s)).real());
            const double diff =
                std::abs(se.eval_products(std::vector<cx>{s}).value - eval_kq_s(q, s)) / cond;
            worst = std::max(worst, diff);
            expect(diff <= 1e-8, "q=" + canonical_num(q) + " difference " + canonical_num(diff));
        }
    }
    return "q in {0.5,1,2,3,5}, 36 points each, worst difference at term-sum scale " +
           canonical_num(worst);
}

// 3. zero threshold: clean below q = 2 on |s| <= 0.95, and the exact
//    locus count and locations above it
std::string c3_zero_threshold() {
    for (double q : {1.0, 2.0}) {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{WeightedDisk{q}});
        expect(v.verdict == "NO_ZEROS_FOUND", "q=" + canonical_num(q) + " gave " + v.verdict);
        expect(v.detail.find("0.95") != std::string::npos, "coverage detail missing");
    }
    double worst = 0.0;
    for (double q : {3.0, 6.0, 14.0}) {
        ZeroVerdict v = zero_free_verdict(DomainSpec{WeightedDisk{q}});
        const std::vector<double> locus = kq_zero_locus(q);
        expect(v.verdict == "ZEROS_CERTIFIED", "q=" + canonical_num(q) + " gave " + v.verdict);
        expect(v.zeros.size() == locus.size(),
               "q=" + canonical_num(q) + " found " + std::to_string(v.zeros.size()) +
                   " zeros, locus has " + std::to_string(locus.size()));
        std::sort(v.zeros.begin(), v.zeros.end(),
                  [](cx a, cx b) { return a.real() < b.real(); });
        std::vector<double> want = locus;
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < want.size(); ++i) {
            const double diff = std::abs(v.zeros[i] - cx(want[i]));
            worst = std::max(worst, diff);
            expect(diff <= 1e-8, "q=" + canonical_num(q) + " zero off the locus by " +
                                     canonical_num(diff));
        }
    }
    return "counts 1/1/3 at q=3/6/14, worst location error " + canonical_num(worst);
}

// 4. degenerate domain: kernel vanishes at the origin without being
//    identically zero; the first admissible moment matches pi^2/6
std::string c4_degenerate_domain() {
    const MomentTable t = build_table(DomainSpec{Counterexample{}}, 40);
    SeriesEvaluator se(t);
    const EvaluatedValue origin = se.eval_products(std::vector<cx>{cx(0.0), cx(0.0)});
    expect(origin.value == cx(0.0), "origin value not exactly zero");
    expect(origin.certified && origin.tail_bound == 0.0, "origin tail not settled");
    const double m01 = t.at({0, 1}).value;
    expect(m01 > 0.0, "first admissible moment not positive");
    expect(std::abs(m01 - pi * pi / 6.0) <= 1e-8,
           "moment (0,1) = " + canonical_num(m01) + " differs from pi^2/6");
    const EvaluatedValue off = se.eval_products(std::vector<cx>{cx(0.1), cx(0.05)});
    expect(std::abs(off.value) > 0.0, "kernel identically zero off the slice");
    return "K(0,0) = 0 exactly, moment (0,1) off by " +
           canonical_num(std::abs(m01 - pi * pi / 6.0));
}

// 5. transformation rule and the proper-map identity
std::string c5_transformation_rule() {
    const KernelFn kc = closed_kernel_fn(DomainSpec{UnitDisk{}});
    const HoloMap f = mobius_map(cx(0.3));
    std::mt19937_64 rng(509);
    double worst_closed = 0.0;
    for (int i = 0; i < 50; ++i) {
        const cvec z = coord_point(rng, 1, 0.8), w = coord_point(rng, 1, 0.8);
        const double r = transformation_residual(kc, kc, f, z, w);
        worst_closed = std::max(worst_closed, r);
        expect(r < 1e-10, "closed-form residual " + canonical_num(r));
    }

    SeriesEvaluator se(build_table(DomainSpec{UnitDisk{}}, 40));
    for (int i = 0; i < 50; ++i) {
        const cvec z = coord_point(rng, 1, 0.6), w = coord_point(rng, 1, 0.6);
        const cvec fz = f.apply(z), fw = f.apply(w);
        const EvaluatedValue a = se.eval(z, w);
        const EvaluatedValue b = se.eval(fz, fw);
        const cx jac = f.jacobian_det(z) * std::conj(f.jacobian_det(w));
        const double r = std::abs(a.value - jac * b.value);
        const double bound = a.tail_bound + std::abs(jac) * b.tail_bound +
                             fp_slack(std::abs(a.value));
        expect(r <= bound, "series residual " + canonical_num(r) + " above combined tail " +
                               canonical_num(bound));
    }

    double worst_bell = 0.0;
    for (int i = 0; i < 50; ++i) {
        const cx z = coord_point(rng, 1, 0.8)[0];
        cx w = coord_point(rng, 1, 0.8)[0];
        if (std::abs(w) < 0.1) w += cx(0.3);
        const double r = bell_residual(kc, kc, z, w);
        worst_bell = std::max(worst_bell, r);
        expect(r < 1e-9, "proper-map residual " + canonical_num(r));
    }
    return "worst residuals: mobius " + canonical_num(worst_closed) + ", squaring " +
           canonical_num(worst_bell);
}

// 6. Riemann map derivative from the kernel
std::string c6_riemann_derivative() {
    const KernelFn k = closed_kernel_fn(DomainSpec{UnitDisk{}});
    double worst = 0.0;
    for (cx a : {cx(0.0), cx(0.3), cx(0.0, 0.6)}) {
        for (cx z : {cx(0.1, 0.1), cx(-0.4, 0.2), cx(0.55)}) {
            const cx den = 1.0 - std::conj(a) * z;
            const cx want = (1.0 - std::norm(a)) / (den * den);
            const double diff = std::abs(riemann_derivative(k, a, z) - want);
            worst = std::max(worst, diff);
            expect(diff < 1e-10, "derivative off by " + canonical_num(diff));
        }
    }
    return "3 base points x 3 targets, worst difference " + canonical_num(worst);
}

// 7. Bergman metric values and the representative-coordinates Jacobian
std::string c7_metric_and_coordinates() {
    const KernelFn kd = closed_kernel_fn(DomainSpec{UnitDisk{}});
    const KernelFn kb = closed_kernel_fn(DomainSpec{Ball{2}});

    const HermMatrix gd = bergman_metric(kd, 1, cvec{cx(0.0)});
    expect(std::abs(gd.at(0, 0) - 2.0) < 1e-5, "disk metric at 0");

    const HermMatrix gb = bergman_metric(kb, 2, cvec{cx(0.0), cx(0.0)});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cx want = i == j ? cx(3.0) : cx(0.0);
            expect(std::abs(gb.at(i, j) - want) < 1e-5, "ball metric entry");
        }

    auto jac_entry = [](const KernelFn& k, int n, const cvec& a, int j, int i) {
        const double h = 1e-4;
        cvec ap = a, am = a;
        ap[i] += h;
        am[i] -= h;
        return (representative_coordinates(k, n, a, ap)[j] -
                representative_coordinates(k, n, a, am)[j]) /
               (2.0 * h);
    };
    double worst = 0.0;
    {
        const cvec a{cx(0.3, -0.2)};
        worst = std::max(worst, std::abs(jac_entry(kd, 1, a, 0, 0) - cx(1.0)));
    }
    {
        const cvec a{cx(0.2, 0.1), cx(-0.1, 0.05)};
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i) {
                const cx want = i == j ? cx(1.0) : cx(0.0);
                worst = std::max(worst, std::abs(jac_entry(kb, 2, a, j, i) - want));
            }
    }
    expect(worst < 1e-5, "representative Jacobian off identity by " + canonical_num(worst));
    return "metric exact to 1e-5, Jacobian off identity by " + canonical_num(worst);
}

// 8. diagonal partial sums increase to the kernel
std::string c8_extremal_sums() {
    const MomentTable t = build_table(DomainSpec{UnitDisk{}}, 40);
    const cvec w{cx(0.5)};
    const std::vector<double> sums = diagonal_partial_sums(t, w);
    for (std::size_t i = 1; i < sums.size(); ++i)
        expect(sums[i] >= sums[i - 1], "partial sums not monotone");
    const double kww = eval_closed(DomainSpec{UnitDisk{}}, w, w).value.real();
    const double gap = std::abs(sums.back() - kww);
    expect(gap <= 1e-6, "S_40 off the diagonal kernel by " + canonical_num(gap));
    return "S_40 within " + canonical_num(gap) + " of K(w,w)";
}

// 9. annulus certificates against the stored high-precision locations
std::string c9_annulus_certificates() {
    ZeroVerdict v = zero_free_verdict(DomainSpec{Annulus{0.5}});
    expect(v.verdict == "ZEROS_CERTIFIED", "verdict " + v.verdict);
    expect(!v.reports.empty() && !v.reports[0].zeros.empty(), "no certificates attached");
    expect(v.zeros.size() == 2, "expected the two band zeros");
    std::sort(v.zeros.begin(), v.zeros.end(), [](cx a, cx b) { return a.real() < b.real(); });
    const double d0 = std::abs(v.zeros[0] - cx(-0.7071069855229035885568869));
    const double d1 = std::abs(v.zeros[1] - cx(-0.3535532884251252541882526));
    expect(d0 < 5e-12, "outer zero drifted by " + canonical_num(d0));
    expect(d1 < 5e-12, "inner zero drifted by " + canonical_num(d1));
    return "band zeros within " + canonical_num(std::max(d0, d1)) + " of the references";
}

// 10. convex egg verdicts and the borderline egg
std::string c10_convex_eggs() {
    const std::vector<std::vector<double>> zero_eggs{
        {1.0, 1.0, 1.0}, {1.0, 1.0, 2.0}, {1.0, 2.0, 2.0, 4.0}};
    for (const auto& e : zero_eggs) {
        const ZeroVerdict v = zero_free_verdict(DomainSpec{Egg{e}});
        expect(v.verdict == "ZEROS_CERTIFIED", "convex egg gave " + v.verdict);
        expect(v.detail.find("weighted disk") != std::string::npos,
               "certificate did not come from the axis reduction");
    }
    const ZeroVerdict b = zero_free_verdict(DomainSpec{Egg{{1.0, 1.0}}});
    expect(b.verdict == "NO_ZEROS_FOUND", "borderline egg gave " + b.verdict);
    expect(b.detail.find("0.95") != std::string::npos, "borderline coverage detail missing");
    const double ratio = std::abs(eval_kq_s(2.0, cx(-0.999))) / kq_origin(2.0);
    expect(ratio < 1e-2, "boundary collapse ratio " + canonical_num(ratio));
    return "3 certified eggs, borderline clean to |s| <= 0.95, boundary ratio " +
           canonical_num(ratio);
}

// 11. kernel convergence along shrinking disks and the k-family coefficients
std::string c11_domain_sequences() {
    ExperimentOptions opt;
    opt.cache_dir = cache_dir();
    const ExperimentReport r = run_ramadanov(opt);
    auto row = [&](const std::string& id) -> const ExperimentRow& {
        for (const auto& x : r.rows)
            if (x.case_id == id) return x;
        throw check_fail("missing row " + id);
    };
    expect(row("disk-trend").verdict == "CONVERGING", "disk trend not converging");
    const double s1 = row("disk-r=0.9").residual;
    const double s2 = row("disk-r=0.99").residual;
    const double s3 = row("disk-r=0.999").residual;
    expect(s1 > s2 && s2 > s3, "disk sups not strictly decreasing");
    expect(row("anh-coeff-trend").verdict == "CONVERGING", "coefficient trend not converging");
    return "disk sups " + canonical_num(s1) + " > " + canonical_num(s2) + " > " +
           canonical_num(s3) + ", coefficient gaps converging";
}

// 12. radial-weight deviation shrinks as the weight sharpens
std::string c12_weight_deviation() {
    ExperimentOptions opt;
    opt.cache_dir = cache_dir();
    const ExperimentReport r = run_englis(opt);
    auto row = [&](const std::string& id) -> const ExperimentRow& {
        for (const auto& x : r.rows)
            if (x.case_id == id) return x;
        throw check_fail("missing row " + id);
    };
    for (double z : {0.3, 0.6}) {
        const std::string zs = canonical_num(z);
        expect(row("deviation-trend-z=" + zs).verdict == "DECREASING",
               "trend at z=" + zs + " not decreasing");
        const double d25 = row("deviation-z=" + zs + "-t=25").residual;
        const double d50 = row("deviation-z=" + zs + "-t=50").residual;
        const double d100 = row("deviation-z=" + zs + "-t=100").residual;
        expect(d25 > d50 && d50 > d100, "deviations at z=" + zs + " not strictly decreasing");
    }
    return "deviations strictly decreasing over t in {25, 50, 100} at z in {0.3, 0.6}";
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria{
        {"closed form vs series oracle", c1_closed_vs_series},
        {"weighted-disk dual representation", c2_weighted_disk_forms},
        {"zero threshold at q = 2", c3_zero_threshold},
        {"degenerate domain origin zero", c4_degenerate_domain},
        {"transformation and proper-map identities", c5_transformation_rule},
        {"Riemann map derivative", c6_riemann_derivative},
        {"metric and representative coordinates", c7_metric_and_coordinates},
        {"extremal partial sums", c8_extremal_sums},
        {"annulus zero certificates", c9_annulus_certificates},
        {"convex egg verdicts", c10_convex_eggs},
        {"domain-sequence convergence", c11_domain_sequences},
        {"radial-weight deviation trend", c12_weight_deviation},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            detail = criteria[i].run();
            ok = true;
        } catch (const std::exception& e) {
            detail = e.what();
        }
        std::printf("[%s] %2zu. %s: %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0) {
        std::printf("ALL CRITERIA PASS\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
