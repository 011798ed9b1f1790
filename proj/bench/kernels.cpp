#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>

#include "piq/identity.hpp"
#include "piq/ncpoly.hpp"
#include "piq/swan.hpp"

using namespace piq;

namespace {

int sign_of(const std::vector<std::size_t>& perm)
{
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                s = -s;
    return s;
}

Element standard_by_permutations(const AlgebraHandle& algebra, const std::vector<Path>& tuple)
{
    std::vector<std::size_t> perm(tuple.size());
    std::iota(perm.begin(), perm.end(), 0);
    Element out;
    do {
        std::optional<Path> prod = tuple[perm[0]];
        for (std::size_t t = 1; t < perm.size() && prod; ++t)
            prod = algebra.multiply(*prod, tuple[perm[t]]);
        if (prod)
            algebra.accumulate(out, *prod, sign_of(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<Path> cycle_tuple(const AlgebraHandle& algebra, std::size_t width)
{
    auto basis = algebra.standard_basis(3);
    basis.erase(std::remove_if(basis.begin(), basis.end(), [](const Path& p) { return p.length() == 0; }),
                basis.end());
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(width), basis.end());
    return basis;
}

void verify_strategy(benchmark::State& state, TupleStrategy strategy)
{
    AlgebraHandle fc(oriented_cycle(2), {}, 12);
    auto st = standard_poly(4);
    VerifyOptions options{static_cast<int>(state.range(0)), strategy};
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_multilinear_identity(fc, st, 3, options).tuples_checked);
}

void BM_verify_naive(benchmark::State& state)
{
    verify_strategy(state, TupleStrategy::naive_scan);
}

void BM_verify_chains(benchmark::State& state)
{
    verify_strategy(state, TupleStrategy::endpoint_chains);
}

void BM_standard_permutations(benchmark::State& state)
{
    AlgebraHandle fc(oriented_cycle(3), {}, 24);
    auto tuple = cycle_tuple(fc, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(standard_by_permutations(fc, tuple));
}

void BM_standard_swan(benchmark::State& state)
{
    AlgebraHandle fc(oriented_cycle(3), {}, 24);
    auto tuple = cycle_tuple(fc, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(eval_standard_via_swan(fc, tuple));
}

void BM_glued_sampling(benchmark::State& state)
{
    GluedOptions options;
    options.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_glued_cycle_identity(3, 4, 200, 4, 2024, options).tuples_checked);
}

}  // namespace

BENCHMARK(BM_verify_naive)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_chains)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_standard_permutations)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_standard_swan)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_glued_sampling)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
