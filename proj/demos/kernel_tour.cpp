// A short tour of kernel evaluation: closed forms, series with certified
// tail bounds, the transformation rule, and the derived geometry.

#include <cstdio>

#include <bergman/transforms.hpp>

using namespace bergman;

static void show(const char* label, const EvaluatedValue& v) {
    std::printf("  %-34s %.12f %+.12fi   tail %.2e%s\n", label, v.value.real(), v.value.imag(),
                v.tail_bound, v.certified ? "" : "  (uncertified)");
}

int main() {
    std::printf("-- closed forms --------------------------------------------\n");
    const cvec z{cx(0.35, 0.1)}, w{cx(0.2, -0.3)};
    show("unit disk K(z,w)", eval_closed(DomainSpec{UnitDisk{}}, z, w));
    show("disk r=0.5 K(z/2,w/2)",
         eval_closed(DomainSpec{Disk{0.5}}, cvec{0.5 * z[0]}, cvec{0.5 * w[0]}));

    const cvec z2{cx(0.3, 0.1), cx(-0.2, 0.15)}, w2{cx(0.25), cx(0.1, 0.2)};
    show("ball(2) K(z,w)", eval_closed(DomainSpec{Ball{2}}, z2, w2));
    show("bidisk K(z,w)", eval_closed(DomainSpec{Polydisk{{1.0, 1.0}}}, z2, w2));

    std::printf("\n-- series with tail bounds ---------------------------------\n");
    std::printf("  the same kernels summed from moment tables; the bound covers\n");
    std::printf("  every dropped term, so closed minus series stays inside it\n");
    for (int degree : {10, 20, 40}) {
        SeriesEvaluator se(build_table(DomainSpec{Ball{2}}, degree));
        const EvaluatedValue v = se.eval(z2, w2);
        const cx exact = eval_closed(DomainSpec{Ball{2}}, z2, w2).value;
        std::printf("  degree %2d: value %.12f, tail %.2e, true error %.2e\n", degree,
                    v.value.real(), v.tail_bound, std::abs(v.value - exact));
    }

    std::printf("\n-- domains without closed forms ----------------------------\n");
    SeriesEvaluator annulus(build_table(DomainSpec{Annulus{0.5}}, 400));
    show("annulus rho=1/2 K(z,w)", annulus.eval(cvec{cx(0.7, 0.05)}, cvec{cx(0.66)}));
    SeriesEvaluator anh(build_table(DomainSpec{Anh{1}}, 12));
    show("anh k=1 K(z,w)", anh.eval(cvec{cx(0.3), cx(0.2)}, cvec{cx(0.3), cx(0.2)}));

    std::printf("\n-- transformation rule -------------------------------------\n");
    const KernelFn k = closed_kernel_fn(DomainSpec{UnitDisk{}});
    const HoloMap f = mobius_map(cx(0.3));
    std::printf("  mobius a=0.3 residual at (z,w): %.2e\n",
                transformation_residual(k, k, f, z, w));
    std::printf("  squaring-map identity residual: %.2e\n",
                bell_residual(k, k, cx(0.4, 0.1), cx(0.3, -0.2)));

    std::printf("\n-- derived geometry ----------------------------------------\n");
    const HermMatrix g = bergman_metric(k, 1, cvec{cx(0.3)});
    std::printf("  disk metric at 0.3: %.10f   (closed form %.10f)\n", g.at(0, 0).real(),
                2.0 / ((1.0 - 0.09) * (1.0 - 0.09)));
    const cx rd = riemann_derivative(k, cx(0.3), cx(0.1));
    std::printf("  riemann derivative at 0.1 (base 0.3): %.10f %+.10fi\n", rd.real(), rd.imag());

    const MomentTable t = build_table(DomainSpec{UnitDisk{}}, 40);
    const std::vector<double> sums = diagonal_partial_sums(t, cvec{cx(0.5)});
    std::printf("  diagonal partial sums at w=0.5: S_1 %.6f, S_5 %.6f, S_40 %.6f\n", sums[1],
                sums[5], sums[40]);
    std::printf("  limit K(w,w) = %.6f\n",
                eval_closed(DomainSpec{UnitDisk{}}, cvec{cx(0.5)}, cvec{cx(0.5)}).value.real());
    return 0;
}
