// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "bdproof/distance.hpp"
#include "bdproof/logic.hpp"
#include "bdproof/proof.hpp"

namespace {

using namespace bdproof;

std::shared_ptr<const Lmc> fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURES_DIR) + "/" + name + ".json", std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return load_lmc(os.str());
}

void BM_DistanceRady5(benchmark::State& state) {
    const auto rady = fixture("rady5");
    const auto x = StateId::of(std::string("x0"));
    const auto y = StateId::of(std::string("y0"));
    const auto depth = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance(*rady, x, y, depth));
    }
}
BENCHMARK(BM_DistanceRady5)->DenseRange(1, 4);

void BM_DistanceRandomWalk(benchmark::State& state) {
    const auto walk = builtin_lmc("random-walk", {});
    const auto x = StateId::of(std::uint64_t{4});
    const auto y = StateId::of(std::uint64_t{6});
    const auto depth = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance(*walk, x, y, depth));
    }
}
BENCHMARK(BM_DistanceRandomWalk)->DenseRange(3, 6);

void BM_SynthesizeRady5(benchmark::State& state) {
    const auto rady = fixture("rady5");
    const auto x = StateId::of(std::string("x0"));
    const auto y = StateId::of(std::string("y0"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize_proof(*rady, x, y, 3));
    }
}
BENCHMARK(BM_SynthesizeRady5);

void BM_CheckRady5(benchmark::State& state) {
    const auto rady = fixture("rady5");
    const auto dag =
        synthesize_proof(*rady, StateId::of(std::string("x0")), StateId::of(std::string("y0")), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_proof(*rady, dag));
    }
}
BENCHMARK(BM_CheckRady5);

void BM_ProofToFormula(benchmark::State& state) {
    const auto rady = fixture("rady5");
    const auto dag =
        synthesize_proof(*rady, StateId::of(std::string("x0")), StateId::of(std::string("y0")), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(proof_to_formula(*rady, dag));
    }
}
BENCHMARK(BM_ProofToFormula);

} // namespace

BENCHMARK_MAIN();
