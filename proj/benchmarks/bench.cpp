#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dualspec/duality.hpp"
#include "dualspec/eigensolver.hpp"
#include "dualspec/models.hpp"
#include "dualspec/specfun.hpp"
#include "dualspec/verify.hpp"

using namespace dualspec;

namespace {

const models::ESParams kES{1.5, 4.0};
const models::CESParams kCES{82.0 / 9.0, 8.0};

eigen::TridiagonalOperator es_operator(int n_points) {
    return eigen::discretize([](double x) { return models::es_potential(kES, x); },
                             eigen::Grid(1e-3, 30.0, n_points));
}

void BM_jacobi_p(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::jacobi_p(n, 1.3, 0.7, 0.4));
    }
}
BENCHMARK(BM_jacobi_p)->Arg(2)->Arg(10)->Arg(50);

void BM_solve_cubic(benchmark::State& state) {
    const auto cubic = models::ces_energy_cubic(kCES, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::solve_cubic_real(cubic));
    }
}
BENCHMARK(BM_solve_cubic);

void BM_schwarzian_formula(benchmark::State& state) {
    const auto map = duality::log_sinh_map();
    for (auto _ : state) {
        benchmark::DoNotOptimize(duality::schwarzian(map, 1.3));
    }
}
BENCHMARK(BM_schwarzian_formula);

void BM_schwarzian_closed_form(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(duality::schwarzian_closed_form(1.3));
    }
}
BENCHMARK(BM_schwarzian_closed_form);

void BM_ces_energy(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::ces_energy(kCES, 0));
    }
}
BENCHMARK(BM_ces_energy);

void BM_ces_wavefunction(benchmark::State& state) {
    const auto level = models::ces_energy(kCES, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(models::ces_wavefunction(level, kCES, 0.5));
    }
}
BENCHMARK(BM_ces_wavefunction);

void BM_discretize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(es_operator(n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_discretize)->Arg(3000)->Arg(12000)->Complexity(benchmark::oN);

void BM_count_below(benchmark::State& state) {
    const auto t = es_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigen::count_below(t, -8.0));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_count_below)->Arg(3000)->Arg(12000)->Complexity(benchmark::oN);

void BM_eigenvalue_at(benchmark::State& state) {
    const auto t = es_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigen::eigenvalue_at(t, 0));
    }
}
BENCHMARK(BM_eigenvalue_at)->Arg(3000)->Arg(12000);

void BM_eigen_lowest(benchmark::State& state) {
    const auto t = es_operator(3000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigen::eigen_lowest(t, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_eigen_lowest)->Arg(1)->Arg(3);

void BM_rayleigh_quotient_resampled(benchmark::State& state) {
    const eigen::Grid g(-12.0, 12.0, 4000);
    const auto t = eigen::discretize([](double q) { return q * q; }, g);
    // A Gaussian sampled on a slightly offset grid forces the interpolating
    // code path.
    duality::SampledFunction f;
    const int m = 3000;
    f.coordinate.resize(m);
    f.value.resize(m);
    for (int i = 0; i < m; ++i) {
        const double y = -11.5 + 23.0 * i / (m - 1);
        f.coordinate[i] = y;
        f.value[i] = std::exp(-0.5 * y * y);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigen::rayleigh_quotient(t, f));
    }
}
BENCHMARK(BM_rayleigh_quotient_resampled);

void BM_es_level_numeric(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify::es_level_numeric(kES, 0, 3000));
    }
}
BENCHMARK(BM_es_level_numeric);

} // namespace

BENCHMARK_MAIN();
