#include "perspectra/catalog.hpp"
#include "perspectra/pgroup.hpp"
#include "perspectra/rank1.hpp"
#include "perspectra/ring.hpp"
#include "perspectra/summand.hpp"

#include <benchmark/benchmark.h>

using namespace perspectra;

namespace {

FiniteAbelianGroup group_for(int which) {
    static const std::vector<std::vector<i64>> orders{{2, 4}, {4, 4}, {2, 2, 8}, {2, 2, 2, 2, 2}, {8, 8}, {3, 9, 4}};
    return FiniteAbelianGroup::from_orders(orders.at(static_cast<std::size_t>(which)));
}

void BM_SubgroupCatalog(benchmark::State& state) {
    const auto g = group_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SubgroupCatalog cat(g, 128);
        benchmark::DoNotOptimize(cat.subgroups().size());
    }
    state.SetLabel(g.to_string());
}
BENCHMARK(BM_SubgroupCatalog)->DenseRange(0, 5);

void BM_CommonComplementAllPairs(benchmark::State& state) {
    const auto g = group_for(static_cast<int>(state.range(0)));
    SubgroupCatalog cat(g, 128);
    const auto summands = enumerate_summands(cat);
    ComplementOptions opt;
    opt.trace = false;
    opt.validate_inputs = false;
    std::int64_t pairs = 0;
    for (auto _ : state) {
        for (std::size_t i = 0; i < summands.size(); ++i)
            for (std::size_t j = i; j < summands.size(); ++j) {
                if (!(iso_invariants(summands[i].subgroup) == iso_invariants(summands[j].subgroup))) continue;
                benchmark::DoNotOptimize(finite_common_complement(summands[i].subgroup, summands[j].subgroup, opt));
                ++pairs;
            }
    }
    state.SetItemsProcessed(pairs);
    state.SetLabel(g.to_string());
}
BENCHMARK(BM_CommonComplementAllPairs)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Condition4EndRing(benchmark::State& state) {
    const auto g = group_for(static_cast<int>(state.range(0)));
    const auto r = FiniteRing::end_ring(g, std::int64_t{1} << 26);
    for (auto _ : state) benchmark::DoNotOptimize(check_condition4(r).holds);
    state.SetLabel(g.to_string() + " |End|=" + std::to_string(r.size()));
}
BENCHMARK(BM_Condition4EndRing)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Condition4Product(benchmark::State& state) {
    const auto r = FiniteRing::product({FiniteRing::matrix(2, 2), FiniteRing::zn(4), FiniteRing::zn(3)});
    for (auto _ : state) benchmark::DoNotOptimize(check_condition4(r).holds);
}
BENCHMARK(BM_Condition4Product)->Unit(benchmark::kMillisecond);

void BM_WitnessU(benchmark::State& state) {
    const auto type = RationalGroupType::divisible_except({2, 3});
    i64 m = 7, n = 11;
    for (auto _ : state) {
        const auto w = witness_U(type, m, n, 5, 3);
        benchmark::DoNotOptimize(w);
        m = m % 997 + 2;
        n = m + 1;
    }
}
BENCHMARK(BM_WitnessU);

void BM_Gplusg(benchmark::State& state) {
    const auto type = RationalGroupType::divisible_by({11});
    for (auto _ : state) benchmark::DoNotOptimize(gplusg_decide(type).status);
}
BENCHMARK(BM_Gplusg);

} // namespace
BENCHMARK_MAIN();
