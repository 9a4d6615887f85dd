#pragma once

// Monomial norms ||z^alpha||^2 in the weighted Bergman space of a catalog
// domain, plus the moment-table cache. Closed forms are used wherever the
// radial integral has one; the remaining domains go through adaptive
// quadrature with a tracked error bound.
//
// Conventions: a multi-index is a vector of ints, one per coordinate.
// Negative entries are only meaningful on the annulus, whose Bergman space
// is spanned by Laurent monomials z^k, k in Z. On the unbounded domain
// { |z2|(1+|z1|) < 1 } the monomial z1^a z2^b is square-integrable iff
// b > a; everything else is excluded from its tables.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "domains.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace bergman {

struct MomentEntry {
    double value = 0.0;
    double abs_error = 0.0;
    std::string method;  // "closed_form" or "quadrature"
};

// Relative roundoff allowance attached to closed-form moments. Generous
// enough to cover the lgamma chains in the egg formula.
inline constexpr double closed_form_rel_err = 1e-14;

inline bool admissible(const DomainSpec& d, const MultiIndex& alpha) {
    if (static_cast<int>(alpha.size()) != dimension(d))
        throw std::invalid_argument("admissible: index dimension does not match domain");
    if (std::holds_alternative<Annulus>(d.v)) return true;
    if (std::holds_alternative<Counterexample>(d.v)) {
        if (alpha[0] < 0 || alpha[1] < 0)
            throw std::invalid_argument("admissible: negative exponent outside annulus");
        return alpha[1] > alpha[0];
    }
    if (std::holds_alternative<Product>(d.v)) {
        const auto& p = std::get<Product>(d.v);
        const int nl = dimension(*p.left);
        MultiIndex a(alpha.begin(), alpha.begin() + nl);
        MultiIndex b(alpha.begin() + nl, alpha.end());
        return admissible(*p.left, a) && admissible(*p.right, b);
    }
    for (int a : alpha)
        if (a < 0) throw std::invalid_argument("admissible: negative exponent outside annulus");
    return true;
}

namespace detail_mom {

inline MomentEntry closed(double value) {
    return MomentEntry{value, std::abs(value) * closed_form_rel_err, "closed_form"};
}

inline MomentEntry disk_moment(double radius, int k) {
    // 2 pi r^{2k+2} / (2k+2)
    return closed(pi * ipow(radius, 2 * k + 2) / (k + 1));
}

inline MomentEntry egg_moment(const std::vector<double>& e, const MultiIndex& alpha) {
    // (2pi)^n prod_j Gamma(a_j)/e_j / Gamma(1 + sum a_j), a_j = (2 alpha_j + 2)/e_j
    double lg = 0.0, asum = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        const double a = (2.0 * alpha[j] + 2.0) / e[j];
        lg += std::log(2.0 * pi / e[j]) + log_gamma(a);
        asum += a;
    }
    return closed(std::exp(lg - log_gamma(1.0 + asum)));
}

inline MomentEntry annulus_moment(double inner, int k) {
    if (k == -1) return closed(2.0 * pi * std::log(1.0 / inner));
    // 2 pi (1 - rho^{2k+2}) / (2k+2); positive for every k != -1. For deep
    // negative k the value grows like rho^{2k+2} and leaves the double
    // range; refuse rather than store an overflowed entry.
    if ((2 * k + 2) * std::log(inner) > 700.0)
        throw std::invalid_argument("annulus moment: order " + std::to_string(k) +
                                    " overflows the double range at inner radius " +
                                    canonical_num(inner));
    return closed(2.0 * pi * (1.0 - ipow(inner, 2 * k + 2)) / (2 * k + 2));
}

inline MomentEntry weighted_disk_moment(double q, int k) {
    return closed(2.0 * pi * beta_fn(2.0 * k + 2.0, q + 1.0));
}

inline MomentEntry counterexample_moment(int a, int b) {
    // (2pi)^2 / (2b+2) * B(2a+2, 2b-2a), finite iff b > a
    const double lb = log_beta(2.0 * a + 2.0, 2.0 * (b - a));
    return closed(sqr(2.0 * pi) / (2.0 * b + 2.0) * std::exp(lb));
}

inline MomentEntry weighted_radial_moment(int n, double t, const MultiIndex& alpha, double tol) {
    // (2pi)^n alpha! / (2^{n-1} (n+|alpha|-1)!) * int_0^1 rho^{2|alpha|+2n-1} e^{-t rho} drho
    const int deg = degree(alpha);
    double lcoef = n * std::log(2.0 * pi) - (n - 1) * std::log(2.0);
    for (int a : alpha) lcoef += log_gamma(a + 1.0);
    lcoef -= log_gamma(static_cast<double>(n + deg));
    const double coef = std::exp(lcoef);
    const int p = 2 * deg + 2 * n - 1;
    auto f = [&](double rho) { return ipow(rho, p) * std::exp(-t * rho); };
    QuadResult q = integrate_gk(f, 0.0, 1.0, 0.0, tol);
    return MomentEntry{coef * q.value, coef * q.abs_error + std::abs(coef * q.value) * 1e-14,
                       "quadrature"};
}

inline MomentEntry region_moment(const DomainSpec& d, const MultiIndex& alpha, double tol) {
    RadialRegion reg = radial_region(d);
    IVec pow{};
    for (int j = 0; j < reg.n; ++j) pow[j] = 2 * alpha[j] + 1;
    // High-degree monomials can push the |K-G| estimator to its roundoff
    // floor before the requested relative tolerance is met. Take what one
    // best effort pass achieves, accept up to three lost decades, and record
    // the achieved error so downstream tail bounds stay honest.
    QuadResult q = integrate_region(reg.n, RVec{}, reg.box, reg.inside, pow, 0.0, tol, 60000, 40,
                                    /*best_effort=*/true);
    if (q.abs_error > 1e3 * tol * std::abs(q.value))
        throw quadrature_error("region moment: achieved error " + canonical_num(q.abs_error) +
                               " is too far above the requested tolerance");
    const double scale = std::pow(2.0 * pi, reg.n);
    return MomentEntry{scale * q.value, scale * q.abs_error + std::abs(scale * q.value) * 1e-14,
                       "quadrature"};
}

}  // namespace detail_mom

// ||z^alpha||^2 with quadrature tolerance tol (relative) where quadrature is
// needed. Throws domain_error for inadmissible indices.
inline MomentEntry monomial_norm_sq(const DomainSpec& d, const MultiIndex& alpha,
                                    double tol = 1e-10) {
    if (!admissible(d, alpha))
        throw std::domain_error("monomial_norm_sq: monomial is not square-integrable");
    using detail_mom::closed;
    return std::visit(
        [&](const auto& x) -> MomentEntry {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UnitDisk>)
                return detail_mom::disk_moment(1.0, alpha[0]);
            else if constexpr (std::is_same_v<T, Disk>)
                return detail_mom::disk_moment(x.radius, alpha[0]);
            else if constexpr (std::is_same_v<T, Ball>) {
                // pi^n alpha! / (n + |alpha|)!
                double lg = x.n * std::log(pi);
                for (int a : alpha) lg += log_gamma(a + 1.0);
                lg -= log_gamma(static_cast<double>(x.n + degree(alpha) + 1));
                return closed(std::exp(lg));
            } else if constexpr (std::is_same_v<T, Polydisk>) {
                double v = 1.0;
                for (std::size_t j = 0; j < x.radii.size(); ++j)
                    v *= detail_mom::disk_moment(x.radii[j], alpha[j]).value;
                return closed(v);
            } else if constexpr (std::is_same_v<T, Annulus>)
                return detail_mom::annulus_moment(x.inner, alpha[0]);
            else if constexpr (std::is_same_v<T, Egg>)
                return detail_mom::egg_moment(x.exponents, alpha);
            else if constexpr (std::is_same_v<T, Counterexample>)
                return detail_mom::counterexample_moment(alpha[0], alpha[1]);
            else if constexpr (std::is_same_v<T, WeightedDisk>)
                return detail_mom::weighted_disk_moment(x.q, alpha[0]);
            else if constexpr (std::is_same_v<T, WeightedRadial>)
                return detail_mom::weighted_radial_moment(x.n, x.t, alpha, tol);
            else if constexpr (std::is_same_v<T, HartogsOverDisk>)
                return detail_mom::egg_moment({1.0, 2.0 / x.q}, alpha);
            else if constexpr (std::is_same_v<T, Product>) {
                const int nl = dimension(*x.left);
                MultiIndex a(alpha.begin(), alpha.begin() + nl);
                MultiIndex b(alpha.begin() + nl, alpha.end());
                MomentEntry ma = monomial_norm_sq(*x.left, a, tol);
                MomentEntry mb = monomial_norm_sq(*x.right, b, tol);
                MomentEntry out;
                out.value = ma.value * mb.value;
                out.abs_error = std::abs(ma.value) * mb.abs_error +
                                std::abs(mb.value) * ma.abs_error + ma.abs_error * mb.abs_error;
                out.method = (ma.method == "closed_form" && mb.method == "closed_form")
                                 ? "closed_form"
                                 : "quadrature";
                return out;
            } else
                return detail_mom::region_moment(d, alpha, tol);
        },
        d.v);
}

// --- tables ---------------------------------------------------------------

struct MomentTable {
    DomainSpec domain;
    std::string hash;
    int degree_cap = 0;
    double tol = 0.0;
    std::map<MultiIndex, MomentEntry> entries;
    std::vector<MultiIndex> excluded;  // admissibility failures within the cap

    const MomentEntry& at(const MultiIndex& alpha) const {
        auto it = entries.find(alpha);
        if (it == entries.end())
            throw std::invalid_argument("moment table: index not present (degree cap too low?)");
        return it->second;
    }
};

namespace detail_mom {

inline void enumerate_indices(int n, int cap, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int a : cur) used += a;
    for (int a = 0; a + used <= cap; ++a) {
        cur.push_back(a);
        enumerate_indices(n, cap, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail_mom

// All indices a table at this cap holds, admissible or not: total degree
// <= cap, with the annulus enumerating k in [-cap, cap].
inline std::vector<MultiIndex> table_indices(const DomainSpec& d, int degree_cap) {
    std::vector<MultiIndex> out;
    if (std::holds_alternative<Annulus>(d.v)) {
        for (int k = -degree_cap; k <= degree_cap; ++k) out.push_back({k});
        return out;
    }
    MultiIndex cur;
    detail_mom::enumerate_indices(dimension(d), degree_cap, cur, out);
    return out;
}

inline MomentTable build_table(const DomainSpec& d, int degree_cap, double tol = 1e-10) {
    validate(d);
    if (degree_cap < 0) throw std::invalid_argument("build_table: negative degree cap");
    MomentTable t;
    t.domain = d;
    t.hash = domain_hash(d);
    t.degree_cap = degree_cap;
    t.tol = tol;

    std::vector<MultiIndex> keep;
    for (auto& alpha : table_indices(d, degree_cap)) {
        if (admissible(d, alpha))
            keep.push_back(alpha);
        else
            t.excluded.push_back(alpha);
    }
    std::vector<MomentEntry> vals(keep.size());
    parallel_for(keep.size(),
                 [&](std::size_t i) { vals[i] = monomial_norm_sq(d, keep[i], tol); });
    for (std::size_t i = 0; i < keep.size(); ++i) t.entries.emplace(keep[i], vals[i]);
    return t;
}

inline constexpr int table_format_version = 1;

inline json to_json(const MomentTable& t) {
    json entries = json::array();
    for (const auto& [alpha, e] : t.entries)
        entries.push_back(json{{"alpha", alpha},
                               {"value", e.value},
                               {"abs_error", e.abs_error},
                               {"method", e.method}});
    json excluded = json::array();
    for (const auto& alpha : t.excluded) excluded.push_back(alpha);
    return json{{"format_version", table_format_version},
                {"domain", to_json(t.domain)},
                {"domain_hash", t.hash},
                {"degree_cap", t.degree_cap},
                {"tol", t.tol},
                {"entries", entries},
                {"excluded", excluded}};
}

inline void save_table(const MomentTable& t, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw cache_error("cannot open " + tmp.string() + " for writing");
        os << to_json(t).dump(2) << '\n';
        if (!os) throw cache_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);  // atomic on the same filesystem
}

inline MomentTable load_table(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw cache_error("cannot open " + path.string());
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw cache_error("corrupt table " + path.string() + ": " + e.what());
    }
    MomentTable t;
    try {
        if (j.at("format_version").get<int>() != table_format_version)
            throw cache_error("unsupported table format in " + path.string());
        t.domain = domain_from_json(j.at("domain"));
        t.hash = j.at("domain_hash").get<std::string>();
        t.degree_cap = j.at("degree_cap").get<int>();
        t.tol = j.at("tol").get<double>();
        for (const auto& je : j.at("entries")) {
            MultiIndex alpha = je.at("alpha").get<MultiIndex>();
            MomentEntry e;
            e.value = je.at("value").get<double>();
            e.abs_error = je.at("abs_error").get<double>();
            e.method = je.at("method").get<std::string>();
            if (!std::isfinite(e.value) || !(e.abs_error >= 0.0) || !std::isfinite(e.abs_error))
                throw cache_error("non-finite entry in " + path.string());
            if (e.method != "closed_form" && e.method != "quadrature")
                throw cache_error("unknown entry method in " + path.string());
            t.entries.emplace(std::move(alpha), std::move(e));
        }
        if (j.contains("excluded"))
            for (const auto& ja : j.at("excluded")) t.excluded.push_back(ja.get<MultiIndex>());
    } catch (const json::exception& e) {
        throw cache_error("corrupt table " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw cache_error("corrupt table " + path.string() + ": " + e.what());
    }
    if (domain_hash(t.domain) != t.hash)
        throw cache_error("table " + path.string() + " hash does not match its domain");
    return t;
}

// Load and verify the table matches what the caller expects.
inline MomentTable load_table(const std::filesystem::path& path, const DomainSpec& expected,
                              int degree_cap, double tol) {
    MomentTable t = load_table(path);
    if (canonical_string(t.domain) != canonical_string(expected))
        throw cache_error("table " + path.string() + " is for a different domain");
    if (t.degree_cap != degree_cap || t.tol != tol)
        throw cache_error("table " + path.string() + " was built with different parameters");
    return t;
}

// Directory of cached tables keyed by domain hash, degree cap, and tolerance.
struct CacheStore {
    std::filesystem::path dir;

    std::filesystem::path path_for(const DomainSpec& d, int degree_cap, double tol) const {
        std::string name =
            domain_hash(d) + "-d" + std::to_string(degree_cap) + "-t" + canonical_num(tol) + ".json";
        return dir / name;
    }

    std::optional<MomentTable> probe(const DomainSpec& d, int degree_cap, double tol) const {
        const auto p = path_for(d, degree_cap, tol);
        if (!std::filesystem::exists(p)) return std::nullopt;
        return load_table(p, d, degree_cap, tol);
    }

    void store(const MomentTable& t) const {
        std::filesystem::create_directories(dir);
        save_table(t, path_for(t.domain, t.degree_cap, t.tol));
    }
};

inline MomentTable get_or_build(const CacheStore& store, const DomainSpec& d, int degree_cap,
                                double tol = 1e-10) {
    if (auto cached = store.probe(d, degree_cap, tol)) return *std::move(cached);
    MomentTable t = build_table(d, degree_cap, tol);
    store.store(t);
    return t;
}

}  // namespace bergman
