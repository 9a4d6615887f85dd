#pragma once

// Experiment drivers. Each runner produces an ExperimentReport: a flat list
// of rows plus the provenance ids of every moment table it consumed. The
// verdict, residual, paper_verified, params and values fields of a row are
// pure functions of the inputs, the seed, and the library version; rerunning
// with the same seed (cached tables or not) reproduces them byte for byte.
// runtime_ms and total_ms are wall-clock observations and are exempt.
//
// The paper_verified column separates rows that reproduce a previously
// established verdict from rows that are new numerical findings; a row is
// only flagged when the computed verdict actually matches the established
// one, so a regression flips the flag off rather than hiding.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "domains.hpp"
#include "kernels.hpp"
#include "moments.hpp"
#include "parallel.hpp"
#include "zerofinder.hpp"

namespace bergman {

inline constexpr int report_schema_version = 1;

struct ExperimentRow {
    std::string experiment;
    std::string case_id;
    std::string verdict;
    double residual = 0.0;  // principal numeric diagnostic of the row, 0 when not applicable
    bool paper_verified = false;
    double runtime_ms = 0.0;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json values = nlohmann::json::object();
};

struct ExperimentReport {
    std::string experiment;
    int schema_version = report_schema_version;
    std::uint64_t seed = 0;
    double total_ms = 0.0;
    std::vector<std::string> tables;  // provenance ids of moment tables consumed
    std::vector<ExperimentRow> rows;
};

struct ExperimentOptions {
    std::uint64_t seed = 12345;
    int degree = -1;        // table degree override; -1 keeps per-family defaults
    double tol = 1e-10;
    std::string cache_dir;  // reuse cached moment tables from here when nonempty
    int samples = 40;       // sampled cross-check points per case
};

inline nlohmann::json to_json(const ExperimentRow& r) {
    return nlohmann::json{{"experiment", r.experiment},
                          {"case_id", r.case_id},
                          {"verdict", r.verdict},
                          {"residual", r.residual},
                          {"paper_verified", r.paper_verified},
                          {"runtime_ms", r.runtime_ms},
                          {"params", r.params},
                          {"values", r.values}};
}

inline nlohmann::json to_json(const ExperimentReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) rows.push_back(to_json(r));
    return nlohmann::json{{"schema_version", rep.schema_version}, {"experiment", rep.experiment},
                          {"seed", rep.seed},                     {"total_ms", rep.total_ms},
                          {"tables", rep.tables},                 {"rows", rows}};
}

inline void write_report(const ExperimentReport& rep, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << to_json(rep).dump(2) << '\n';
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

inline constexpr const char* csv_header =
    "experiment,case_id,verdict,residual,paper_verified,runtime_ms,params_json,values_json";

inline void write_csv(const ExperimentReport& rep, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << csv_header << '\n';
    for (const auto& r : rep.rows) {
        os << csv_field(r.experiment) << ',' << csv_field(r.case_id) << ','
           << csv_field(r.verdict) << ',' << canonical_num(r.residual) << ','
           << (r.paper_verified ? "true" : "false") << ',' << canonical_num(r.runtime_ms) << ','
           << csv_field(r.params.dump()) << ',' << csv_field(r.values.dump()) << '\n';
    }
}

namespace detail_ex {

using walltime = std::chrono::steady_clock;

inline double ms_since(walltime::time_point t0) {
    return std::chrono::duration<double, std::milli>(walltime::now() - t0).count();
}

inline std::string table_id(const DomainSpec& d, int degree, double tol) {
    return domain_hash(d) + "-d" + std::to_string(degree) + "-t" + canonical_num(tol);
}

inline void note_table(std::vector<std::string>& tables, const DomainSpec& d, int degree,
                       double tol) {
    std::string id = table_id(d, degree, tol);
    if (std::find(tables.begin(), tables.end(), id) == tables.end()) tables.push_back(std::move(id));
}

inline MomentTable table_for(const DomainSpec& d, int degree, const ExperimentOptions& opt,
                             std::vector<std::string>& tables) {
    note_table(tables, d, degree, opt.tol);
    if (opt.cache_dir.empty()) return build_table(d, degree, opt.tol);
    return get_or_build(CacheStore{opt.cache_dir}, d, degree, opt.tol);
}

inline VerdictOptions verdict_options(const ExperimentOptions& opt) {
    VerdictOptions v;
    v.degree = opt.degree;
    v.tol = opt.tol;
    v.cache_dir = opt.cache_dir;
    return v;
}

inline nlohmann::json zeros_json(const std::vector<cx>& zs) {
    nlohmann::json a = nlohmann::json::array();
    for (cx z : zs) a.push_back({z.real(), z.imag()});
    return a;
}

// worst certified |f| over all reported zeros; 0 when nothing was reported
inline double worst_residual(const ZeroVerdict& v) {
    double worst = 0.0;
    for (const auto& rep : v.reports)
        for (const auto& c : rep.zeros)
            for (double r : c.residuals) worst = std::max(worst, r);
    return worst;
}

// max over locus points of the distance to the nearest reported zero
inline double locus_residual(const std::vector<double>& locus, const std::vector<cx>& zeros,
                             double skip_beyond = 0.9) {
    double worst = 0.0;
    for (double sm : locus) {
        if (std::abs(sm) > skip_beyond) continue;
        double best = std::numeric_limits<double>::infinity();
        for (cx z : zeros) best = std::min(best, std::abs(z - cx(sm)));
        if (std::isfinite(best)) worst = std::max(worst, best);
    }
    return worst;
}

// flatten per-parameter slots in index order so the schedule cannot reorder rows
inline void assemble(ExperimentReport& rep, std::vector<std::vector<ExperimentRow>>& slots,
                     std::vector<std::vector<std::string>>& table_slots) {
    for (auto& s : slots)
        for (auto& r : s) rep.rows.push_back(std::move(r));
    for (auto& ts : table_slots)
        for (auto& id : ts)
            if (std::find(rep.tables.begin(), rep.tables.end(), id) == rep.tables.end())
                rep.tables.push_back(std::move(id));
}

}  // namespace detail_ex

// Weighted disks across the zero threshold. Verdicts are checked against the
// expected pattern (no zeros up to the critical weight, zeros past it, with
// the predicted count and locations); one extra row records the boundary
// behaviour at the critical weight itself.
inline ExperimentReport run_q_threshold(const ExperimentOptions& opt = {}) {
    using namespace detail_ex;
    const auto t0 = walltime::now();
    ExperimentReport rep;
    rep.experiment = "q-threshold";
    rep.seed = opt.seed;

    const std::vector<double> qs{0.5, 1.0, 2.0, 3.0, 6.0, 10.0, 14.0};
    std::vector<std::vector<ExperimentRow>> slots(qs.size());
    std::vector<std::vector<std::string>> tslots(qs.size());
    parallel_for(qs.size(), [&](std::size_t i) {
        const double q = qs[i];
        const auto tc = walltime::now();
        const DomainSpec d{WeightedDisk{q}};
        ZeroVerdict v = zero_free_verdict(d, verdict_options(opt));

        const std::vector<double> locus = kq_zero_locus(q);
        const int expected_count = static_cast<int>(locus.size());
        const std::string expected = locus.empty() ? "NO_ZEROS_FOUND" : "ZEROS_CERTIFIED";
        const bool matches = v.verdict == expected;

        // independent cross-check of the series against the closed form on
        // seeded sample points; also ties the report to a concrete table
        const int deg = opt.degree > 0 ? opt.degree : 200;
        MomentTable t = table_for(d, deg, opt, tslots[i]);
        SeriesEvaluator se(t);
        std::mt19937_64 rng(opt.seed + i);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double series_residual = 0.0;
        for (int k = 0; k < opt.samples; ++k) {
            const double r = 0.8 * std::sqrt(unif(rng));
            const double th = 2.0 * pi * unif(rng);
            const cx s = std::polar(r, th);
            const cx root = std::sqrt(s);
            const cvec z{root}, w{std::conj(root)};
            series_residual =
                std::max(series_residual, std::abs(se.eval(z, w).value - eval_closed(d, z, w).value));
        }

        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "q=" + canonical_num(q);
        row.verdict = v.verdict;
        row.residual = locus.empty() ? series_residual : locus_residual(locus, v.zeros);
        row.paper_verified = matches;
        row.params = {{"q", q}};
        row.values = {{"expected", expected},
                      {"expected_count", expected_count},
                      {"found_count", static_cast<int>(v.zeros.size())},
                      {"locus", locus},
                      {"zeros", zeros_json(v.zeros)},
                      {"series_residual", series_residual},
                      {"certificate_residual", worst_residual(v)},
                      {"detail", v.detail}};
        row.runtime_ms = ms_since(tc);
        slots[i].push_back(std::move(row));
    });
    assemble(rep, slots, tslots);

    {
        // at the critical weight the kernel stays positive inside but dies at
        // the boundary diagonal; record the collapse ratio near s = -1
        const auto tc = walltime::now();
        const double ratio = std::abs(eval_kq_s(2.0, cx(-0.999))) / std::abs(eval_kq_s(2.0, cx(0.0)));
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "q=2-boundary";
        row.verdict = ratio < 1e-2 ? "VANISHES_AT_BOUNDARY" : "UNEXPECTED";
        row.residual = ratio;
        row.paper_verified = ratio < 1e-2;
        row.params = {{"q", 2.0}, {"s", -0.999}};
        row.values = {{"ratio", ratio}};
        row.runtime_ms = ms_since(tc);
        rep.rows.push_back(std::move(row));
    }

    rep.total_ms = ms_since(t0);
    return rep;
}

// Convex eggs: the three with a unit exponent certify zeros through the
// weighted-disk reduction, the two-dimensional borderline egg comes out
// clean, and a small exponent grid is swept as exploratory findings.
inline ExperimentReport run_convex_examples(const ExperimentOptions& opt = {}) {
    using namespace detail_ex;
    const auto t0 = walltime::now();
    ExperimentReport rep;
    rep.experiment = "convex";
    rep.seed = opt.seed;

    struct Case {
        std::vector<double> exponents;
        std::string expected;  // empty for exploratory rows
    };
    std::vector<Case> cases{{{1, 1, 1}, "ZEROS_CERTIFIED"},
                            {{1, 1, 2}, "ZEROS_CERTIFIED"},
                            {{1, 2, 2, 4}, "ZEROS_CERTIFIED"},
                            {{1, 1}, "NO_ZEROS_FOUND"}};
    const std::vector<double> ps{1.0, 1.5, 2.0, 2.5, 3.0};
    for (double p1 : ps)
        for (double p2 : ps) {
            std::string expected;
            if (p1 == 1.0 && p2 == 1.0) expected = "NO_ZEROS_FOUND";
            if (p1 == 2.0 && p2 == 2.0) expected = "NO_ZEROS_FOUND";  // the round ball
            cases.push_back({{p1, p2}, expected});
        }

    std::vector<std::vector<ExperimentRow>> slots(cases.size());
    std::vector<std::vector<std::string>> tslots(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        const auto& c = cases[i];
        const auto tc = walltime::now();
        const DomainSpec d{Egg{c.exponents}};
        ZeroVerdict v = zero_free_verdict(d, verdict_options(opt));

        std::string id = i < 4 ? "egg(" : "grid-p=(";
        for (std::size_t j = 0; j < c.exponents.size(); ++j)
            id += (j ? "," : "") + canonical_num(c.exponents[j]);
        id += ")";

        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = id;
        row.verdict = v.verdict;
        row.residual = worst_residual(v);
        row.paper_verified = !c.expected.empty() && v.verdict == c.expected;
        row.params = {{"exponents", c.exponents}};
        row.values = {{"zeros", zeros_json(v.zeros)},
                      {"found_count", static_cast<int>(v.zeros.size())},
                      {"detail", v.detail}};
        if (!c.expected.empty()) row.values["expected"] = c.expected;
        row.runtime_ms = ms_since(tc);
        slots[i].push_back(std::move(row));
        // provenance: the axis sweep consumes the egg's own moment table
        note_table(tslots[i], d, opt.degree > 0 ? opt.degree : detail_zf::default_degree(d),
                   opt.tol);
    });
    assemble(rep, slots, tslots);

    {
        // the borderline egg restricts to the critical weighted disk on an
        // axis, so the same boundary collapse shows up in its kernel
        const auto tc = walltime::now();
        const double ratio = std::abs(eval_kq_s(2.0, cx(-0.999))) / std::abs(eval_kq_s(2.0, cx(0.0)));
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "egg(1,1)-boundary";
        row.verdict = ratio < 1e-2 ? "VANISHES_AT_BOUNDARY" : "UNEXPECTED";
        row.residual = ratio;
        row.paper_verified = ratio < 1e-2;
        row.params = {{"exponents", {1.0, 1.0}}, {"s", -0.999}};
        row.values = {{"ratio", ratio}};
        row.runtime_ms = ms_since(tc);
        rep.rows.push_back(std::move(row));
    }

    rep.total_ms = ms_since(t0);
    return rep;
}

// The family shrinking onto the unbounded counterexample: per-k verdicts,
// the low moment trend toward the limit value, and a reproducibility check.
inline ExperimentReport run_anh_search(const ExperimentOptions& opt = {}, int kmax = 6) {
    using namespace detail_ex;
    const auto t0 = walltime::now();
    ExperimentReport rep;
    rep.experiment = "anh";
    rep.seed = opt.seed;

    const double limit_moment = pi * pi / 6.0;  // closed value for the limit domain at (0,1)
    std::vector<std::vector<ExperimentRow>> slots(static_cast<std::size_t>(kmax));
    std::vector<std::vector<std::string>> tslots(static_cast<std::size_t>(kmax));
    std::vector<std::string> verdicts(static_cast<std::size_t>(kmax));
    std::vector<double> moments(static_cast<std::size_t>(kmax));
    parallel_for(static_cast<std::size_t>(kmax), [&](std::size_t i) {
        const int k = static_cast<int>(i) + 1;
        const auto tc = walltime::now();
        const DomainSpec d{Anh{k}};
        const int deg = opt.degree > 0 ? opt.degree : detail_zf::default_degree(d);
        MomentTable t = table_for(d, deg, opt, tslots[i]);
        ZeroVerdict v = zero_free_verdict(d, verdict_options(opt));
        verdicts[i] = v.verdict;
        moments[i] = t.at(MultiIndex{0, 1}).value;

        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "anh-k=" + std::to_string(k);
        row.verdict = v.verdict;
        row.residual = worst_residual(v);
        row.paper_verified = false;  // per-k slice verdicts are findings
        row.params = {{"k", k}, {"degree", deg}};
        row.values = {{"zeros", zeros_json(v.zeros)}, {"detail", v.detail}};
        row.runtime_ms = ms_since(tc);
        slots[i].push_back(std::move(row));

        ExperimentRow mrow;
        mrow.experiment = rep.experiment;
        mrow.case_id = "moment-k=" + std::to_string(k);
        mrow.verdict = "OK";
        mrow.residual = std::abs(moments[i] - limit_moment);
        mrow.paper_verified = false;
        mrow.params = {{"k", k}, {"alpha", {0, 1}}};
        mrow.values = {{"moment", moments[i]}, {"limit", limit_moment}};
        mrow.runtime_ms = 0.0;
        slots[i].push_back(std::move(mrow));
    });
    assemble(rep, slots, tslots);

    {
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "smallest-certified-k";
        int smallest = 0;
        for (int k = 1; k <= kmax; ++k)
            if (verdicts[static_cast<std::size_t>(k - 1)] == "ZEROS_CERTIFIED") {
                smallest = k;
                break;
            }
        row.verdict = smallest ? "k=" + std::to_string(smallest) : "NONE_IN_RANGE";
        row.paper_verified = false;
        row.params = {{"kmax", kmax}};
        row.values = {{"k", smallest}, {"verdicts", verdicts}};
        rep.rows.push_back(std::move(row));
    }
    {
        // the domains increase with k, so the moment must climb toward the
        // limit value without overshooting
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "moment-trend";
        bool monotone = true;
        for (int k = 1; k < kmax; ++k)
            if (!(moments[static_cast<std::size_t>(k)] > moments[static_cast<std::size_t>(k - 1)]))
                monotone = false;
        if (!(moments.back() < limit_moment)) monotone = false;
        row.verdict = monotone ? "MONOTONE" : "NOT_MONOTONE";
        row.residual = std::abs(moments.back() - limit_moment);
        row.paper_verified = false;
        row.params = {{"alpha", {0, 1}}, {"kmax", kmax}};
        row.values = {{"moments", moments}, {"limit", limit_moment}};
        rep.rows.push_back(std::move(row));
    }
    {
        // rerunning the first case with identical options must reproduce the
        // verdict and the zero list exactly
        const auto tc = walltime::now();
        ZeroVerdict again = zero_free_verdict(DomainSpec{Anh{1}}, verdict_options(opt));
        bool same = again.verdict == verdicts.front();
        double drift = 0.0;
        // compare against the first run's zero list recorded in the k=1 row
        const auto& first = rep.rows.front().values.at("zeros");
        same = same && first.size() == again.zeros.size();
        if (same)
            for (std::size_t j = 0; j < again.zeros.size(); ++j)
                drift = std::max(drift,
                                 std::abs(again.zeros[j] - cx(first[j][0].get<double>(),
                                                              first[j][1].get<double>())));
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "rerun-k=1";
        row.verdict = same && drift == 0.0 ? "REPRODUCIBLE" : "NONDETERMINISTIC";
        row.residual = drift;
        row.paper_verified = false;
        row.params = {{"k", 1}};
        row.values = {{"verdict_again", again.verdict}};
        row.runtime_ms = ms_since(tc);
        rep.rows.push_back(std::move(row));
    }

    rep.total_ms = ms_since(t0);
    return rep;
}

// Exponentially weighted disks: the normalized log of the diagonal kernel
// approaches the weight exponent, the unweighted limit matches the plain
// disk, and the zero verdicts track the weight strength.
inline ExperimentReport run_englis(const ExperimentOptions& opt = {}) {
    using namespace detail_ex;
    const auto t0 = walltime::now();
    ExperimentReport rep;
    rep.experiment = "englis";
    rep.seed = opt.seed;

    const std::vector<double> ts{25.0, 50.0, 100.0};
    const std::vector<double> zs{0.3, 0.6};
    // frozen regression locations for the dominant real zero (derived values)
    const double frozen_t25 = -0.01579136648207195325;
    const double frozen_t50 = -0.0039478417604357412;

    std::vector<std::vector<ExperimentRow>> slots(ts.size());
    std::vector<std::vector<std::string>> tslots(ts.size());
    std::vector<std::vector<double>> devs(ts.size(), std::vector<double>(zs.size()));
    std::vector<std::string> verdicts(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        const double t = ts[i];
        const auto tc = walltime::now();
        const DomainSpec d{WeightedRadial{1, t}};
        const int deg = opt.degree > 0 ? opt.degree : detail_zf::default_degree(d);
        MomentTable tab = table_for(d, deg, opt, tslots[i]);
        SeriesEvaluator se(tab);
        for (std::size_t j = 0; j < zs.size(); ++j) {
            const cvec z{cx(zs[j])};
            const EvaluatedValue K = se.eval(z, z);
            devs[i][j] = std::abs(std::log(K.value.real()) / t - zs[j]);
            ExperimentRow row;
            row.experiment = rep.experiment;
            row.case_id = "deviation-z=" + canonical_num(zs[j]) + "-t=" + canonical_num(t);
            row.verdict = "OK";
            row.residual = devs[i][j];
            row.paper_verified = false;
            row.params = {{"t", t}, {"z", zs[j]}, {"degree", deg}};
            row.values = {{"K_diag", K.value.real()}, {"tail", K.tail_bound}};
            row.runtime_ms = ms_since(tc);
            slots[i].push_back(std::move(row));
        }

        const auto tz = walltime::now();
        ZeroVerdict v = zero_free_verdict(d, verdict_options(opt));
        verdicts[i] = v.verdict;
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "zeros-t=" + canonical_num(t);
        row.verdict = v.verdict;
        row.residual = worst_residual(v);
        row.paper_verified = false;
        row.params = {{"t", t}, {"degree", deg}};
        row.values = {{"zeros", zeros_json(v.zeros)}, {"detail", v.detail}};
        const double frozen = t == 25.0 ? frozen_t25 : t == 50.0 ? frozen_t50 : 0.0;
        if (frozen != 0.0) {
            double best = std::numeric_limits<double>::infinity();
            for (cx z : v.zeros) best = std::min(best, std::abs(z - cx(frozen)));
            row.values["frozen_location"] = frozen;
            row.values["frozen_distance"] = std::isfinite(best) ? best : -1.0;
            row.residual = std::isfinite(best) ? best : row.residual;
        }
        row.runtime_ms = ms_since(tz);
        slots[i].push_back(std::move(row));
    });
    assemble(rep, slots, tslots);

    for (std::size_t j = 0; j < zs.size(); ++j) {
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "deviation-trend-z=" + canonical_num(zs[j]);
        bool dec = true;
        std::vector<double> col;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            col.push_back(devs[i][j]);
            if (i && !(devs[i][j] < devs[i - 1][j])) dec = false;
        }
        row.verdict = dec ? "DECREASING" : "NOT_DECREASING";
        row.residual = col.back();
        row.paper_verified = false;  // the limit is established, the rate is a finding
        row.params = {{"z", zs[j]}, {"ts", ts}};
        row.values = {{"deviations", col}};
        rep.rows.push_back(std::move(row));
    }
    {
        // weight exponent zero is the plain disk; the series must agree with
        // the closed form exactly within the tail bound
        const auto tc = walltime::now();
        const DomainSpec d{WeightedRadial{1, 0.0}};
        MomentTable tab = table_for(d, 120, opt, rep.tables);
        SeriesEvaluator se(tab);
        const cvec z{cx(0.5)};
        const double diff =
            std::abs(se.eval(z, z).value - eval_closed(DomainSpec{UnitDisk{}}, z, z).value);
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "t=0-unweighted";
        row.verdict = diff < 1e-8 ? "MATCHES_UNWEIGHTED" : "MISMATCH";
        row.residual = diff;
        row.paper_verified = false;
        row.params = {{"t", 0.0}, {"z", 0.5}};
        row.values = {{"diff", diff}};
        row.runtime_ms = ms_since(tc);
        rep.rows.push_back(std::move(row));
    }
    {
        // the qualitative statement: strong enough exponential weights push
        // a zero into the diagonal range
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "zeros-large-t";
        bool any = std::find(verdicts.begin(), verdicts.end(), "ZEROS_CERTIFIED") != verdicts.end();
        row.verdict = any ? "ZEROS_CERTIFIED" : "NONE_FOUND";
        row.paper_verified = any;
        row.params = {{"ts", ts}};
        row.values = {{"verdicts", verdicts}};
        rep.rows.push_back(std::move(row));
    }

    rep.total_ms = ms_since(t0);
    return rep;
}

// Domain sequences and kernel convergence: growing disks against the unit
// disk, the shrinking family against its unbounded limit coefficient by
// coefficient, and the degenerate identical sequence.
inline ExperimentReport run_ramadanov(const ExperimentOptions& opt = {}) {
    using namespace detail_ex;
    const auto t0 = walltime::now();
    ExperimentReport rep;
    rep.experiment = "ramadanov";
    rep.seed = opt.seed;

    // fixed compact grid: z, w on the closed disk of radius 1/2
    std::vector<cx> grid;
    for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5})
        for (double y : {-0.5, -0.25, 0.0, 0.25, 0.5})
            if (x * x + y * y <= 0.25 + 1e-12) grid.emplace_back(x, y);

    const std::vector<double> radii{0.9, 0.99, 0.999};
    std::vector<double> sups(radii.size());
    const DomainSpec unit{UnitDisk{}};
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto tc = walltime::now();
        const DomainSpec dr{Disk{radii[i]}};
        double sup = 0.0;
        for (cx z : grid)
            for (cx w : grid)
                sup = std::max(sup, std::abs(eval_closed(dr, cvec{z}, cvec{w}).value -
                                             eval_closed(unit, cvec{z}, cvec{w}).value));
        sups[i] = sup;
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "disk-r=" + canonical_num(radii[i]);
        row.verdict = "OK";
        row.residual = sup;
        row.paper_verified = false;
        row.params = {{"radius", radii[i]}, {"grid_points", static_cast<int>(grid.size())}};
        row.values = {{"sup_diff", sup}};
        row.runtime_ms = ms_since(tc);
        rep.rows.push_back(std::move(row));
    }
    {
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "disk-trend";
        bool dec = sups[1] < sups[0] && sups[2] < sups[1];
        const double scale = eval_closed(unit, cvec{cx(0.0)}, cvec{cx(0.0)}).value.real();
        const bool small = sups.back() < 0.01 * scale;
        row.verdict = dec && small ? "CONVERGING" : "NOT_CONVERGING";
        row.residual = sups.back();
        row.paper_verified = dec && small;  // kernel convergence for swelling domains is established
        row.params = {{"radii", radii}};
        row.values = {{"sup_diffs", sups}, {"threshold", 0.01 * scale}};
        rep.rows.push_back(std::move(row));
    }

    // coefficientwise convergence of the shrinking family to its limit:
    // compare reciprocal moments on the exponents the limit admits
    const std::vector<MultiIndex> alphas{{0, 1}, {0, 2}, {1, 2}};
    const int kmax = 4;
    MomentTable ce = table_for(DomainSpec{Counterexample{}}, 12, opt, rep.tables);
    std::vector<double> gaps(static_cast<std::size_t>(kmax));
    std::vector<std::vector<ExperimentRow>> slots(static_cast<std::size_t>(kmax));
    std::vector<std::vector<std::string>> tslots(static_cast<std::size_t>(kmax));
    parallel_for(static_cast<std::size_t>(kmax), [&](std::size_t i) {
        const int k = static_cast<int>(i) + 1;
        const auto tc = walltime::now();
        const DomainSpec d{Anh{k}};
        const int deg = opt.degree > 0 ? opt.degree : detail_zf::default_degree(d);
        MomentTable t = table_for(d, deg, opt, tslots[i]);
        double gap = 0.0;
        for (const auto& a : alphas)
            gap = std::max(gap, std::abs(1.0 / t.at(a).value - 1.0 / ce.at(a).value));
        gaps[i] = gap;
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "anh-coeff-k=" + std::to_string(k);
        row.verdict = "OK";
        row.residual = gap;
        row.paper_verified = false;
        row.params = {{"k", k}, {"degree", deg}};
        row.values = {{"gap", gap}};
        row.runtime_ms = ms_since(tc);
        slots[i].push_back(std::move(row));
    });
    assemble(rep, slots, tslots);
    {
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "anh-coeff-trend";
        bool dec = true;
        for (int k = 1; k < kmax; ++k)
            if (!(gaps[static_cast<std::size_t>(k)] < gaps[static_cast<std::size_t>(k - 1)]))
                dec = false;
        row.verdict = dec ? "CONVERGING" : "NOT_CONVERGING";
        row.residual = gaps.back();
        row.paper_verified = dec;  // interior convergence to the limit domain is established
        row.params = {{"kmax", kmax}};
        row.values = {{"gaps", gaps}};
        rep.rows.push_back(std::move(row));
    }
    {
        // a constant sequence must converge to itself with zero gap
        const auto tc = walltime::now();
        const DomainSpec d{Disk{0.7}};
        double sup = 0.0;
        for (cx z : grid)
            for (cx w : grid)
                sup = std::max(sup, std::abs(eval_closed(d, cvec{z}, cvec{w}).value -
                                             eval_closed(d, cvec{z}, cvec{w}).value));
        ExperimentRow row;
        row.experiment = rep.experiment;
        row.case_id = "identical-domains";
        row.verdict = sup == 0.0 ? "IDENTICAL" : "UNEXPECTED";
        row.residual = sup;
        row.paper_verified = false;
        row.params = {{"radius", 0.7}};
        row.values = {{"sup_diff", sup}};
        row.runtime_ms = ms_since(tc);
        rep.rows.push_back(std::move(row));
    }

    rep.total_ms = ms_since(t0);
    return rep;
}

inline std::vector<ExperimentReport> run_all_experiments(const ExperimentOptions& opt = {}) {
    std::vector<ExperimentReport> out;
    out.push_back(run_q_threshold(opt));
    out.push_back(run_convex_examples(opt));
    out.push_back(run_anh_search(opt));
    out.push_back(run_englis(opt));
    out.push_back(run_ramadanov(opt));
    return out;
}

}  // namespace bergman
