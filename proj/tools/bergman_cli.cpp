// Command line front end. Every subcommand prints one JSON object on stdout
// so output can be piped or checked mechanically; diagnostics go to stderr.
//
//   moments build   precompute and save a moment table
//   kernel eval     evaluate the kernel at a point pair
//   verify          residual checks of the transformation identities
//   zeros find      winding-certified search on one slice rectangle
//   zeros verdict   per-family zero verdict with certificates
//   experiment      run one of the named experiment suites

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <bergman/experiments.hpp>
#include <bergman/transforms.hpp>
#include <bergman/zerofinder.hpp>

using namespace bergman;
using nlohmann::json;

namespace {

DomainSpec parse_domain(const std::string& arg) {
    json j;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream is(arg.substr(1));
        if (!is) throw CLI::ValidationError("--domain", "cannot read " + arg.substr(1));
        j = json::parse(is);
    } else {
        j = json::parse(arg);
    }
    DomainSpec d = domain_from_json(j);
    validate(d);
    return d;
}

cx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return cx(std::stod(s), 0.0);
    return cx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

cvec parse_point(const std::vector<std::string>& comps) {
    cvec out;
    for (const auto& c : comps) out.push_back(parse_complex(c));
    return out;
}

json complex_json(cx z) { return json::array({z.real(), z.imag()}); }

json point_json(const cvec& z) {
    json a = json::array();
    for (cx c : z) a.push_back(complex_json(c));
    return a;
}

json rect_json(const Rect& r) { return json::array({r.x0, r.x1, r.y0, r.y1}); }

json report_json(const SearchReport& rep) {
    json certs = json::array();
    for (const auto& c : rep.zeros) {
        json zs = json::array();
        for (cx z : c.zeros) zs.push_back(complex_json(z));
        certs.push_back({{"region", rect_json(c.region)},
                         {"winding", c.winding},
                         {"contour_min_modulus", c.contour_min_modulus},
                         {"contour_tail_bound", c.contour_tail_bound},
                         {"zeros", zs},
                         {"residuals", c.residuals}});
    }
    return json{{"region", rect_json(rep.region)},
                {"total_winding", rep.total_winding},
                {"contour_min_modulus", rep.contour_min_modulus},
                {"contour_tail_bound", rep.contour_tail_bound},
                {"certificates", certs}};
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

// shared sampler: uniform points in a polydisk of the given radius
cvec sample_point(std::mt19937_64& rng, int n, double radius) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    cvec z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::polar(radius * std::sqrt(unif(rng)), 2.0 * pi * unif(rng));
    return z;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman kernels of Reinhardt domains: tables, evaluation, zero certificates"};
    app.require_subcommand(1);

    std::string domain_arg, out_path, csv_dir, cache_dir, a_arg = "0.4,0";
    std::vector<std::string> z_comps, w_comps, ray_z0, ray_dir, ray_w0;
    std::vector<double> region;
    int budget = -1, samples = 25, axis = 0;
    std::uint64_t seed = 12345;
    double tol = 1e-10;
    bool force_series = false;

    auto* moments = app.add_subcommand("moments", "moment table operations");
    auto* mbuild = moments->add_subcommand("build", "compute a table and save it as JSON");
    mbuild->add_option("--domain", domain_arg, "domain JSON or @file")->required();
    int mdegree = 20;
    mbuild->add_option("--degree", mdegree, "total degree cap");
    mbuild->add_option("--tol", tol, "quadrature tolerance");
    mbuild->add_option("--out", out_path, "output path")->required();

    auto* kernel = app.add_subcommand("kernel", "kernel evaluation");
    auto* keval = kernel->add_subcommand("eval", "evaluate K(z, w)");
    keval->add_option("--domain", domain_arg, "domain JSON or @file")->required();
    keval->add_option("--z", z_comps, "z components, each re or re,im")->required();
    keval->add_option("--w", w_comps, "w components, each re or re,im")->required();
    keval->add_option("--budget", budget, "series degree budget (default: per-family)");
    keval->add_option("--tol", tol, "moment tolerance");
    keval->add_option("--cache", cache_dir, "moment table cache directory");
    keval->add_flag("--series", force_series, "use the series even when a closed form exists");

    auto* verify = app.add_subcommand("verify", "transformation identity residuals");
    verify->require_subcommand(1);
    auto* vtransform = verify->add_subcommand("transform", "Mobius transformation rule on the disk");
    auto* vbell = verify->add_subcommand("bell", "square map identity on the disk");
    auto* vriemann = verify->add_subcommand("riemann", "mapping derivative from the kernel");
    for (auto* v : {vtransform, vbell, vriemann}) {
        v->add_option("--samples", samples, "sample pairs");
        v->add_option("--seed", seed, "rng seed");
        v->add_option("--a", a_arg, "map parameter / base point, re,im");
    }

    auto* zeros = app.add_subcommand("zeros", "slice zero search");
    auto* zfind = zeros->add_subcommand("find", "winding search on one rectangle");
    zfind->add_option("--domain", domain_arg, "domain JSON or @file")->required();
    zfind->add_option("--region", region, "rectangle x0 x1 y0 y1")->expected(4)->required();
    zfind->add_option("--axis", axis, "axis slice index (default 0)");
    zfind->add_option("--ray-z0", ray_z0, "ray slice: z0 components");
    zfind->add_option("--ray-dir", ray_dir, "ray slice: direction components");
    zfind->add_option("--ray-w0", ray_w0, "ray slice: w components");
    zfind->add_option("--budget", budget, "series degree budget (default: per-family)");
    zfind->add_option("--tol", tol, "moment tolerance");
    zfind->add_option("--cache", cache_dir, "moment table cache directory");

    auto* zverdict = zeros->add_subcommand("verdict", "per-family zero verdict");
    zverdict->add_option("--domain", domain_arg, "domain JSON or @file")->required();
    zverdict->add_option("--budget", budget, "series degree budget (default: per-family)");
    zverdict->add_option("--tol", tol, "moment tolerance");
    zverdict->add_option("--cache", cache_dir, "moment table cache directory");

    auto* experiment = app.add_subcommand("experiment", "named experiment suites");
    std::string which;
    experiment
        ->add_option("suite", which, "q-threshold | convex | anh | englis | ramadanov | all")
        ->required();
    experiment->add_option("--out", out_path, "report JSON path (all: directory)");
    experiment->add_option("--csv", csv_dir, "CSV output directory");
    experiment->add_option("--seed", seed, "rng seed");
    experiment->add_option("--budget", budget, "series degree budget (default: per-family)");
    experiment->add_option("--cache", cache_dir, "moment table cache directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mbuild->parsed()) {
            DomainSpec d = parse_domain(domain_arg);
            MomentTable t = build_table(d, mdegree, tol);
            save_table(t, out_path);
            emit({{"domain", to_json(d)},
                  {"hash", t.hash},
                  {"degree_cap", t.degree_cap},
                  {"entries", t.entries.size()},
                  {"path", out_path}});
            return 0;
        }

        if (keval->parsed()) {
            DomainSpec d = parse_domain(domain_arg);
            const cvec z = parse_point(z_comps), w = parse_point(w_comps);
            EvaluatedValue val;
            std::string mode;
            if (has_closed_form(d) && !force_series) {
                val = eval_closed(d, z, w);
                mode = "closed";
            } else {
                const int deg = budget > 0 ? budget : detail_zf::default_degree(d);
                MomentTable t = cache_dir.empty()
                                    ? build_table(d, deg, tol)
                                    : get_or_build(CacheStore{cache_dir}, d, deg, tol);
                val = SeriesEvaluator(t).eval(z, w);
                mode = "series(degree " + std::to_string(deg) + ")";
            }
            emit({{"value", complex_json(val.value)},
                  {"tail_bound", val.tail_bound},
                  {"certified", val.certified},
                  {"mode", mode},
                  {"z", point_json(z)},
                  {"w", point_json(w)}});
            return 0;
        }

        if (vtransform->parsed() || vbell->parsed() || vriemann->parsed()) {
            const cx a = parse_complex(a_arg);
            std::mt19937_64 rng(seed);
            const DomainSpec disk{UnitDisk{}};
            KernelFn k = closed_kernel_fn(disk);
            double worst = 0.0;
            std::string check;
            double threshold = 1e-10;
            if (vtransform->parsed()) {
                check = "transform";
                HoloMap f = mobius_map(a);
                for (int i = 0; i < samples; ++i) {
                    const cvec z = sample_point(rng, 1, 0.8), w = sample_point(rng, 1, 0.8);
                    worst = std::max(worst, transformation_residual(k, k, f, z, w));
                }
            } else if (vbell->parsed()) {
                check = "bell";
                threshold = 1e-9;
                for (int i = 0; i < samples; ++i) {
                    cvec z = sample_point(rng, 1, 0.8), w = sample_point(rng, 1, 0.8);
                    if (std::abs(w[0]) < 0.1) w[0] += cx(0.15, 0.0);  // identity is singular at w = 0
                    worst = std::max(worst, bell_residual(k, k, z[0], w[0]));
                }
            } else {
                check = "riemann";
                HoloMap f = mobius_map(a);
                for (int i = 0; i < samples; ++i) {
                    const cvec z = sample_point(rng, 1, 0.8);
                    const cx got = riemann_derivative(k, a, z[0]);
                    const cx want = f.jacobian_det(z);
                    worst = std::max(worst, std::abs(std::abs(got) - std::abs(want)));
                }
            }
            const bool pass = worst < threshold;
            emit({{"check", check},
                  {"a", complex_json(a)},
                  {"samples", samples},
                  {"seed", seed},
                  {"max_residual", worst},
                  {"threshold", threshold},
                  {"pass", pass}});
            return pass ? 0 : 2;
        }

        if (zfind->parsed()) {
            DomainSpec d = parse_domain(domain_arg);
            const int deg = budget > 0 ? budget : detail_zf::default_degree(d);
            SliceSpec sp = ray_z0.empty()
                               ? axis_slice(dimension(d), axis)
                               : ray_slice(parse_point(ray_z0), parse_point(ray_dir),
                                           parse_point(ray_w0));
            SliceFn f;
            if (has_closed_form(d) && ray_z0.empty()) {
                f = slice_function(d, sp);
            } else {
                MomentTable t = cache_dir.empty()
                                    ? build_table(d, deg, tol)
                                    : get_or_build(CacheStore{cache_dir}, d, deg, tol);
                f = slice_function(std::make_shared<SeriesEvaluator>(t), sp);
            }
            SearchReport rep =
                find_zeros(f, Rect{region[0], region[1], region[2], region[3]}, SearchOptions{});
            emit(report_json(rep));
            return 0;
        }

        if (zverdict->parsed()) {
            DomainSpec d = parse_domain(domain_arg);
            VerdictOptions vo;
            vo.degree = budget;
            vo.tol = tol;
            vo.cache_dir = cache_dir;
            ZeroVerdict v = zero_free_verdict(d, vo);
            json reports = json::array();
            for (const auto& rep : v.reports) reports.push_back(report_json(rep));
            json zs = json::array();
            for (cx z : v.zeros) zs.push_back(complex_json(z));
            emit({{"domain", to_json(d)},
                  {"verdict", v.verdict},
                  {"detail", v.detail},
                  {"zeros", zs},
                  {"reports", reports}});
            return 0;
        }

        if (experiment->parsed()) {
            ExperimentOptions opt;
            opt.seed = seed;
            opt.degree = budget;
            opt.cache_dir = cache_dir;
            std::vector<ExperimentReport> reps;
            if (which == "q-threshold") reps.push_back(run_q_threshold(opt));
            else if (which == "convex") reps.push_back(run_convex_examples(opt));
            else if (which == "anh") reps.push_back(run_anh_search(opt));
            else if (which == "englis") reps.push_back(run_englis(opt));
            else if (which == "ramadanov") reps.push_back(run_ramadanov(opt));
            else if (which == "all") reps = run_all_experiments(opt);
            else throw CLI::ValidationError("suite", "unknown suite " + which);
            json summary = json::array();
            for (const auto& rep : reps) {
                json entry{{"experiment", rep.experiment},
                           {"rows", rep.rows.size()},
                           {"total_ms", rep.total_ms}};
                if (!out_path.empty()) {
                    std::filesystem::path p = out_path;
                    if (reps.size() > 1) p = p / (rep.experiment + ".json");
                    write_report(rep, p);
                    entry["out"] = p.string();
                }
                if (!csv_dir.empty()) {
                    std::filesystem::path p =
                        std::filesystem::path(csv_dir) / (rep.experiment + ".csv");
                    write_csv(rep, p);
                    entry["csv"] = p.string();
                }
                int pv = 0;
                for (const auto& r : rep.rows) pv += r.paper_verified ? 1 : 0;
                entry["paper_verified_rows"] = pv;
                summary.push_back(std::move(entry));
            }
            emit(reps.size() == 1 ? summary[0] : json{{"suites", summary}});
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
