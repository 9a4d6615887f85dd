#pragma once

// Domain catalog. A DomainSpec is a closed value type describing a bounded
// (or, for the counterexample, unbounded) Reinhardt domain, possibly carrying
// a radial weight. Specs serialize to canonical JSON; the serialization is
// the cache key for moment tables.
//
// Membership tests use strict inequalities throughout: boundary points are
// outside. Every catalog entry is a complete Reinhardt domain except the
// annulus, whose radial section is the interval (inner, 1).

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace bergman {

using json = nlohmann::json;

inline constexpr int max_dimension = 4;

struct DomainSpec;

struct UnitDisk {};
struct Disk {
    double radius = 1.0;
};
struct Ball {
    int n = 2;
};
struct Polydisk {
    std::vector<double> radii;
};
struct Annulus {
    double inner = 0.5;  // radii in (inner, 1)
};
// { sum_j |z_j|^{e_j} < 1 }
struct Egg {
    std::vector<double> exponents;
};
// { (z1,z2) : |z2| (1 + |z1|) < 1 }, unbounded, infinite volume
struct Counterexample {};
// { r2^{2k}(1+r1)^{2k} + r2^{2k}(1-r1)^{2k} + ((r1^2+r2^2)/k)^k < 1 }
struct Anh {
    int k = 1;
};
// { (r1^2+r2^2+r3^2)^{2k} + sum over all 8 sign patterns (+-r1+-r2+-r3)^{2k} < 1 }
struct Alg {
    int k = 1;
};
// unit disk with weight (1-|z|)^q
struct WeightedDisk {
    double q = 1.0;
};
// disk (n=1) or ball (n>1) with weight exp(-t*||z||)
struct WeightedRadial {
    int n = 1;
    double t = 1.0;
};
// { (z1,z2) : |z1| < 1, |z2| < (1-|z1|)^{q/2} }; equals Egg(1, 2/q) as a set
struct HartogsOverDisk {
    double q = 2.0;
};
struct Product {
    std::shared_ptr<const DomainSpec> left, right;
};

using DomainVariant = std::variant<UnitDisk, Disk, Ball, Polydisk, Annulus, Egg, Counterexample,
                                   Anh, Alg, WeightedDisk, WeightedRadial, HartogsOverDisk, Product>;

struct DomainSpec {
    DomainVariant v;
};

inline DomainSpec make_product(DomainSpec left, DomainSpec right) {
    Product p{std::make_shared<DomainSpec>(std::move(left)),
              std::make_shared<DomainSpec>(std::move(right))};
    return DomainSpec{p};
}

inline int dimension(const DomainSpec& d) {
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UnitDisk> || std::is_same_v<T, Disk> ||
                          std::is_same_v<T, Annulus> || std::is_same_v<T, WeightedDisk>)
                return 1;
            else if constexpr (std::is_same_v<T, Ball>)
                return x.n;
            else if constexpr (std::is_same_v<T, Polydisk>)
                return static_cast<int>(x.radii.size());
            else if constexpr (std::is_same_v<T, Egg>)
                return static_cast<int>(x.exponents.size());
            else if constexpr (std::is_same_v<T, Counterexample> ||
                               std::is_same_v<T, HartogsOverDisk>)
                return 2;
            else if constexpr (std::is_same_v<T, Anh>)
                return 2;
            else if constexpr (std::is_same_v<T, Alg>)
                return 3;
            else if constexpr (std::is_same_v<T, WeightedRadial>)
                return x.n;
            else
                return dimension(*x.left) + dimension(*x.right);
        },
        d.v);
}

inline bool is_bounded(const DomainSpec& d) {
    return std::visit(
        [](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Counterexample>)
                return false;
            else if constexpr (std::is_same_v<T, Product>)
                return is_bounded(*x.left) && is_bounded(*x.right);
            else
                return true;
        },
        d.v);
}

inline bool is_weighted(const DomainSpec& d) {
    return std::visit(
        [](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, WeightedDisk> || std::is_same_v<T, WeightedRadial>)
                return true;
            else if constexpr (std::is_same_v<T, Product>)
                return is_weighted(*x.left) || is_weighted(*x.right);
            else
                return false;
        },
        d.v);
}

// Throws std::invalid_argument on out-of-range parameters. Called by the
// JSON parser and by anything that builds specs programmatically.
inline void validate(const DomainSpec& d) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Disk>) {
                if (!positive(x.radius)) throw std::invalid_argument("disk: radius must be positive");
            } else if constexpr (std::is_same_v<T, Ball>) {
                if (x.n < 1 || x.n > max_dimension)
                    throw std::invalid_argument("ball: dimension must be 1..4");
            } else if constexpr (std::is_same_v<T, Polydisk>) {
                if (x.radii.empty() || x.radii.size() > max_dimension)
                    throw std::invalid_argument("polydisk: needs 1..4 radii");
                for (double r : x.radii)
                    if (!positive(r)) throw std::invalid_argument("polydisk: radii must be positive");
            } else if constexpr (std::is_same_v<T, Annulus>) {
                if (!(x.inner > 0.0 && x.inner < 1.0))
                    throw std::invalid_argument("annulus: inner radius must lie in (0,1)");
            } else if constexpr (std::is_same_v<T, Egg>) {
                if (x.exponents.empty() || x.exponents.size() > max_dimension)
                    throw std::invalid_argument("egg: needs 1..4 exponents");
                for (double e : x.exponents)
                    if (!positive(e)) throw std::invalid_argument("egg: exponents must be positive");
            } else if constexpr (std::is_same_v<T, Anh>) {
                if (x.k < 1 || x.k > 16) throw std::invalid_argument("anh: k must be 1..16");
            } else if constexpr (std::is_same_v<T, Alg>) {
                if (x.k < 1 || x.k > 16) throw std::invalid_argument("alg: k must be 1..16");
            } else if constexpr (std::is_same_v<T, WeightedDisk>) {
                if (!(std::isfinite(x.q) && x.q > -1.0))
                    throw std::invalid_argument("weighted_disk: q must be > -1");
            } else if constexpr (std::is_same_v<T, WeightedRadial>) {
                if (x.n < 1 || x.n > max_dimension)
                    throw std::invalid_argument("weighted_radial: dimension must be 1..4");
                if (!(std::isfinite(x.t) && x.t >= 0.0))
                    throw std::invalid_argument("weighted_radial: t must be >= 0");
            } else if constexpr (std::is_same_v<T, HartogsOverDisk>) {
                if (!positive(x.q)) throw std::invalid_argument("hartogs_disk: q must be positive");
            } else if constexpr (std::is_same_v<T, Product>) {
                if (!x.left || !x.right) throw std::invalid_argument("product: missing factor");
                validate(*x.left);
                validate(*x.right);
                if (dimension(*x.left) + dimension(*x.right) > max_dimension)
                    throw std::invalid_argument("product: total dimension must be <= 4");
            }
        },
        d.v);
}

// --- radial membership -------------------------------------------------

namespace detail_dom {

// Strict indicator on the vector of coordinate moduli (r_j >= 0).
inline bool radial_inside(const DomainSpec& d, const double* r);

inline bool radial_inside_impl(const UnitDisk&, const double* r) { return r[0] < 1.0; }
inline bool radial_inside_impl(const Disk& x, const double* r) { return r[0] < x.radius; }
inline bool radial_inside_impl(const WeightedDisk&, const double* r) { return r[0] < 1.0; }
inline bool radial_inside_impl(const Annulus& x, const double* r) {
    return r[0] > x.inner && r[0] < 1.0;
}
inline bool radial_inside_impl(const Ball& x, const double* r) {
    double s = 0;
    for (int j = 0; j < x.n; ++j) s += r[j] * r[j];
    return s < 1.0;
}
inline bool radial_inside_impl(const WeightedRadial& x, const double* r) {
    double s = 0;
    for (int j = 0; j < x.n; ++j) s += r[j] * r[j];
    return s < 1.0;
}
inline bool radial_inside_impl(const Polydisk& x, const double* r) {
    for (std::size_t j = 0; j < x.radii.size(); ++j)
        if (!(r[j] < x.radii[j])) return false;
    return true;
}
inline bool radial_inside_impl(const Egg& x, const double* r) {
    double s = 0;
    for (std::size_t j = 0; j < x.exponents.size(); ++j) s += std::pow(r[j], x.exponents[j]);
    return s < 1.0;
}
inline bool radial_inside_impl(const Counterexample&, const double* r) {
    return r[1] * (1.0 + r[0]) < 1.0;
}
inline bool radial_inside_impl(const Anh& x, const double* r) {
    const int k2 = 2 * x.k;
    const double a = r[1] * (1.0 + r[0]);
    const double b = r[1] * std::abs(1.0 - r[0]);
    const double c = (r[0] * r[0] + r[1] * r[1]) / x.k;
    return ipow(a, k2) + ipow(b, k2) + ipow(c, x.k) < 1.0;
}
inline bool radial_inside_impl(const Alg& x, const double* r) {
    const int k2 = 2 * x.k;
    double s = ipow(r[0] * r[0] + r[1] * r[1] + r[2] * r[2], k2);
    for (int sgn = 0; sgn < 8; ++sgn) {
        double u = (sgn & 1 ? -r[0] : r[0]) + (sgn & 2 ? -r[1] : r[1]) + (sgn & 4 ? -r[2] : r[2]);
        s += ipow(u, k2);
    }
    return s < 1.0;
}
inline bool radial_inside_impl(const HartogsOverDisk& x, const double* r) {
    if (!(r[0] < 1.0)) return false;
    return r[1] < std::pow(1.0 - r[0], 0.5 * x.q);
}
inline bool radial_inside_impl(const Product& x, const double* r) {
    return radial_inside(*x.left, r) && radial_inside(*x.right, r + dimension(*x.left));
}

inline bool radial_inside(const DomainSpec& d, const double* r) {
    return std::visit([&](const auto& x) { return radial_inside_impl(x, r); }, d.v);
}

// Finite bounding radii; only valid for bounded specs.
inline void bounding_radii(const DomainSpec& d, double* out);

inline void bounding_radii_impl(const UnitDisk&, double* o) { o[0] = 1.0; }
inline void bounding_radii_impl(const Disk& x, double* o) { o[0] = x.radius; }
inline void bounding_radii_impl(const WeightedDisk&, double* o) { o[0] = 1.0; }
inline void bounding_radii_impl(const Annulus&, double* o) { o[0] = 1.0; }
inline void bounding_radii_impl(const Ball& x, double* o) {
    for (int j = 0; j < x.n; ++j) o[j] = 1.0;
}
inline void bounding_radii_impl(const WeightedRadial& x, double* o) {
    for (int j = 0; j < x.n; ++j) o[j] = 1.0;
}
inline void bounding_radii_impl(const Polydisk& x, double* o) {
    for (std::size_t j = 0; j < x.radii.size(); ++j) o[j] = x.radii[j];
}
inline void bounding_radii_impl(const Egg&, double* o) {
    // per-axis radius is 1 regardless of the exponent
    o[0] = o[1] = o[2] = o[3] = 1.0;
}
inline void bounding_radii_impl(const Counterexample&, double*) {
    throw std::domain_error("counterexample: unbounded domain has no bounding box");
}
inline void bounding_radii_impl(const Anh& x, double* o) {
    o[0] = std::sqrt(static_cast<double>(x.k));  // third term alone forces r1^2 < k
    o[1] = 1.0;                                  // first term alone forces r2 < 1
}
inline void bounding_radii_impl(const Alg&, double* o) {
    o[0] = o[1] = o[2] = 1.0;  // the (+++) term alone exceeds 1 once any r_j >= 1
}
inline void bounding_radii_impl(const HartogsOverDisk&, double* o) { o[0] = o[1] = 1.0; }
inline void bounding_radii_impl(const Product& x, double* o) {
    bounding_radii(*x.left, o);
    bounding_radii(*x.right, o + dimension(*x.left));
}

inline void bounding_radii(const DomainSpec& d, double* out) {
    std::visit([&](const auto& x) { bounding_radii_impl(x, out); }, d.v);
}

}  // namespace detail_dom

// Radial section of a Reinhardt domain: strict indicator on radius vectors
// plus a bounding box. monotone means downward closed (complete Reinhardt);
// the annulus is the one catalog entry that is not.
struct RadialRegion {
    int n = 1;
    RVec box{};  // section is contained in [0, box_j)
    RegionIndicator inside;
    bool monotone = true;
    bool bounded = true;
};

inline RadialRegion radial_region(const DomainSpec& d) {
    RadialRegion reg;
    reg.n = dimension(d);
    reg.bounded = is_bounded(d);
    reg.monotone = !std::holds_alternative<Annulus>(d.v);
    if (std::holds_alternative<Product>(d.v)) {
        const auto& p = std::get<Product>(d.v);
        reg.monotone = !std::holds_alternative<Annulus>(p.left->v) &&
                       !std::holds_alternative<Annulus>(p.right->v);
    }
    if (reg.bounded) detail_dom::bounding_radii(d, reg.box.data());
    DomainSpec copy = d;
    reg.inside = [copy](const RVec& r) { return detail_dom::radial_inside(copy, r.data()); };
    return reg;
}

// Strict membership for a point of C^n.
inline bool contains(const DomainSpec& d, std::span<const cx> z) {
    if (static_cast<int>(z.size()) != dimension(d))
        throw std::invalid_argument("contains: point dimension does not match domain");
    double r[max_dimension] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < z.size(); ++j) r[j] = std::abs(z[j]);
    return detail_dom::radial_inside(d, r);
}

inline bool contains(const DomainSpec& d, const cvec& z) {
    return contains(d, std::span<const cx>(z));
}

// --- volume -------------------------------------------------------------

// Euclidean volume of the underlying set (weights ignored). Closed forms for
// the disk/ball/polydisk/egg family; adaptive quadrature over the radial
// section otherwise. Unbounded domains throw domain_error.
inline double volume(const DomainSpec& d) {
    if (!is_bounded(d)) throw std::domain_error("volume: domain is unbounded");
    return std::visit(
        [&](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UnitDisk> || std::is_same_v<T, WeightedDisk>)
                return pi;
            else if constexpr (std::is_same_v<T, Disk>)
                return pi * x.radius * x.radius;
            else if constexpr (std::is_same_v<T, Ball>) {
                double v = 1.0;
                for (int j = 1; j <= x.n; ++j) v *= pi / j;
                return v;
            } else if constexpr (std::is_same_v<T, WeightedRadial>) {
                double v = 1.0;
                for (int j = 1; j <= x.n; ++j) v *= pi / j;
                return v;
            } else if constexpr (std::is_same_v<T, Polydisk>) {
                double v = 1.0;
                for (double r : x.radii) v *= pi * r * r;
                return v;
            } else if constexpr (std::is_same_v<T, Egg>) {
                // Dirichlet integral over the radial simplex, log space
                double lg = 0.0, asum = 0.0;
                for (double e : x.exponents) {
                    lg += std::log(2.0 * pi / e) + log_gamma(2.0 / e);
                    asum += 2.0 / e;
                }
                return std::exp(lg - log_gamma(1.0 + asum));
            } else if constexpr (std::is_same_v<T, HartogsOverDisk>) {
                Egg egg{{1.0, 2.0 / x.q}};
                return volume(DomainSpec{egg});
            } else if constexpr (std::is_same_v<T, Annulus>)
                return pi * (1.0 - x.inner * x.inner);
            else if constexpr (std::is_same_v<T, Product>)
                return volume(*x.left) * volume(*x.right);
            else {
                // Anh / Alg: (2pi)^n * integral of prod r_j over the section
                RadialRegion reg = radial_region(d);
                QuadResult q = integrate_region(reg.n, RVec{}, reg.box, reg.inside, IVec{1, 1, 1, 1},
                                                0.0, 1e-11);
                double scale = std::pow(2.0 * pi, reg.n);
                return scale * q.value;
            }
        },
        d.v);
}

// --- serialization -------------------------------------------------------

inline json to_json(const DomainSpec& d) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            json p = json::object();
            const char* name = "";
            if constexpr (std::is_same_v<T, UnitDisk>)
                name = "unit_disk";
            else if constexpr (std::is_same_v<T, Disk>) {
                name = "disk";
                p["radius"] = x.radius;
            } else if constexpr (std::is_same_v<T, Ball>) {
                name = "ball";
                p["n"] = x.n;
            } else if constexpr (std::is_same_v<T, Polydisk>) {
                name = "polydisk";
                p["radii"] = x.radii;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                name = "annulus";
                p["inner"] = x.inner;
            } else if constexpr (std::is_same_v<T, Egg>) {
                name = "egg";
                p["exponents"] = x.exponents;
            } else if constexpr (std::is_same_v<T, Counterexample>)
                name = "counterexample";
            else if constexpr (std::is_same_v<T, Anh>) {
                name = "anh";
                p["k"] = x.k;
            } else if constexpr (std::is_same_v<T, Alg>) {
                name = "alg";
                p["k"] = x.k;
            } else if constexpr (std::is_same_v<T, WeightedDisk>) {
                name = "weighted_disk";
                p["q"] = x.q;
            } else if constexpr (std::is_same_v<T, WeightedRadial>) {
                name = "weighted_radial";
                p["n"] = x.n;
                p["t"] = x.t;
            } else if constexpr (std::is_same_v<T, HartogsOverDisk>) {
                name = "hartogs_disk";
                p["q"] = x.q;
            } else {
                name = "product";
                p["left"] = to_json(*x.left);
                p["right"] = to_json(*x.right);
            }
            return json{{"variant", name}, {"params", p}};
        },
        d.v);
}

inline DomainSpec domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant"))
        throw std::invalid_argument("domain: expected {\"variant\":..., \"params\":...}");
    const std::string v = j.at("variant").get<std::string>();
    const json p = j.value("params", json::object());
    DomainSpec d;
    if (v == "unit_disk")
        d.v = UnitDisk{};
    else if (v == "disk")
        d.v = Disk{p.value("radius", 1.0)};
    else if (v == "ball")
        d.v = Ball{p.value("n", 2)};
    else if (v == "polydisk")
        d.v = Polydisk{p.at("radii").get<std::vector<double>>()};
    else if (v == "annulus")
        d.v = Annulus{p.value("inner", 0.5)};
    else if (v == "egg")
        d.v = Egg{p.at("exponents").get<std::vector<double>>()};
    else if (v == "counterexample")
        d.v = Counterexample{};
    else if (v == "anh")
        d.v = Anh{p.value("k", 1)};
    else if (v == "alg")
        d.v = Alg{p.value("k", 1)};
    else if (v == "weighted_disk")
        d.v = WeightedDisk{p.value("q", 1.0)};
    else if (v == "weighted_radial")
        d.v = WeightedRadial{p.value("n", 1), p.value("t", 1.0)};
    else if (v == "hartogs_disk")
        d.v = HartogsOverDisk{p.value("q", 2.0)};
    else if (v == "product")
        d = make_product(domain_from_json(p.at("left")), domain_from_json(p.at("right")));
    else
        throw std::invalid_argument("domain: unknown variant '" + v + "'");
    validate(d);
    return d;
}

// Canonical one-line form: variant tag plus parameters printed to 15
// significant digits. This string, not the pretty JSON, is what gets hashed.
inline std::string canonical_string(const DomainSpec& d) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, UnitDisk>)
                os << "unit_disk()";
            else if constexpr (std::is_same_v<T, Disk>)
                os << "disk(radius=" << canonical_num(x.radius) << ")";
            else if constexpr (std::is_same_v<T, Ball>)
                os << "ball(n=" << x.n << ")";
            else if constexpr (std::is_same_v<T, Polydisk>) {
                os << "polydisk(radii=[";
                for (std::size_t j = 0; j < x.radii.size(); ++j)
                    os << (j ? "," : "") << canonical_num(x.radii[j]);
                os << "])";
            } else if constexpr (std::is_same_v<T, Annulus>)
                os << "annulus(inner=" << canonical_num(x.inner) << ")";
            else if constexpr (std::is_same_v<T, Egg>) {
                os << "egg(exponents=[";
                for (std::size_t j = 0; j < x.exponents.size(); ++j)
                    os << (j ? "," : "") << canonical_num(x.exponents[j]);
                os << "])";
            } else if constexpr (std::is_same_v<T, Counterexample>)
                os << "counterexample()";
            else if constexpr (std::is_same_v<T, Anh>)
                os << "anh(k=" << x.k << ")";
            else if constexpr (std::is_same_v<T, Alg>)
                os << "alg(k=" << x.k << ")";
            else if constexpr (std::is_same_v<T, WeightedDisk>)
                os << "weighted_disk(q=" << canonical_num(x.q) << ")";
            else if constexpr (std::is_same_v<T, WeightedRadial>)
                os << "weighted_radial(n=" << x.n << ",t=" << canonical_num(x.t) << ")";
            else if constexpr (std::is_same_v<T, HartogsOverDisk>)
                os << "hartogs_disk(q=" << canonical_num(x.q) << ")";
            else
                os << "product(" << canonical_string(*x.left) << "," << canonical_string(*x.right)
                   << ")";
            return os.str();
        },
        d.v);
}

inline std::string domain_hash(const DomainSpec& d) {
    return hex64(fnv1a64(canonical_string(d)));
}

}  // namespace bergman
