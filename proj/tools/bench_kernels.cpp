// Serial vs OpenMP timings for the parallel kernels: Maurer-Cartan residual on a
// chart grid, the period vector over a loop basis, and the pathology sup deviation.
//
//   bench_kernels [--reps N]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "mapgrp/forms.hpp"
#include "mapgrp/monodromy.hpp"
#include "mapgrp/pathology.hpp"

using namespace mapgrp;

namespace {

double best_of(int reps, const std::function<double()>& f, double& value)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        value = f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, int reps, const std::function<double()>& serial, const std::function<double()>& parallel)
{
    double vs = 0.0, vp = 0.0;
    const double ts = best_of(reps, serial, vs);
    const double tp = best_of(reps, parallel, vp);
    std::printf("%-28s %10.4f %10.4f %8.2fx   |diff| %.1e\n", name, ts, tp, ts / tp, std::abs(vs - vp));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"serial vs OpenMP kernel timings"};
    int reps = 3;
    app.add_option("--reps", reps, "repetitions (best time is reported)");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n%-28s %10s %10s %9s\n", omp_get_max_threads(), "kernel", "serial s", "openmp s",
                "speedup");

    const Domain chart = Domain::chart(-1.0, 1.0, -1.0, 1.0);
    const OneForm mc = OneForm::parse_chart(chart, "[[x*y, exp(x)], [y, -x*y]]", "[[x, y*y], [exp(-y), -x]]");
    row("mc_residual 401x401", reps, [&] { return mc_residual_serial(mc, 401, 401); },
        [&] { return mc_residual(mc, 401, 401); });

    std::vector<Point> punctures;
    for (int k = 0; k < 8; ++k)
        punctures.emplace_back(3.0 * std::cos(k * 0.785398), 3.0 * std::sin(k * 0.785398));
    const Domain plane = Domain::punctured_plane(punctures, 0.0);
    std::string expr = "[[0, 1], [";
    for (std::size_t k = 0; k < punctures.size(); ++k) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s1/(z-(%.17g+%.17g*i))", k ? "+" : "", punctures[k].real(),
                      punctures[k].imag());
        expr += buf;
    }
    expr += ", 0]]";
    const OneForm alpha = OneForm::parse(plane, expr);
    const GroupDescriptor gl2 = GroupDescriptor::general_linear(2);
    const LoopBasis basis = fundamental_loops(plane, 0.0);
    const EvolutionControl control{2048, true, {}};
    row("period_vector 8 loops", reps,
        [&] { return period_vector_serial(gl2, alpha, basis, control).max_distance_to_identity(); },
        [&] { return period_vector(gl2, alpha, basis, control).max_distance_to_identity(); });

    const MatrixExpr h = pathology_map(6);
    const auto grid = disk_grid(2.0, 801, 2880);
    row("sup_deviation 801^2 grid", reps, [&] { return sup_deviation_serial(h, grid); },
        [&] { return sup_deviation(h, grid); });
    return 0;
}
