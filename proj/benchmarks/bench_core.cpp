/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include <benchmark/benchmark.h>

#include "hmc/fps.hpp"
#include "hmc/northeast.hpp"
#include "hmc/quadrature.hpp"
#include "hmc/transcendence.hpp"

using namespace hmc;

namespace {

BigRational R(long p, long q = 1) { return BigRational(BigInt(p), BigInt(q)); }

void BM_EDigits(benchmark::State &state)
{
	for (auto _ : state) {
		// fresh node each round so the cache does not hide the work
		CReal e = exp(R(1));
		benchmark::DoNotOptimize(render_digits(e, static_cast<unsigned>(state.range(0))));
	}
}
BENCHMARK(BM_EDigits)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

std::vector<CReal> monomial(unsigned k)
{
	std::vector<CReal> p(k + 1, CReal(R(0)));
	p[k] = CReal(R(1));
	return p;
}

void BM_EulerRiemann(benchmark::State &state)
{
	for (auto _ : state)
		benchmark::DoNotOptimize(
		    integrate_improper_polyexp(monomial(static_cast<unsigned>(state.range(0))), 1000).approx(BigInt(4000)));
}
BENCHMARK(BM_EulerRiemann)->DenseRange(0, 6, 3)->Unit(benchmark::kMillisecond);

void BM_EulerNewton(benchmark::State &state)
{
	for (auto _ : state)
		benchmark::DoNotOptimize(
		    newton_improper_polyexp(monomial(static_cast<unsigned>(state.range(0))), 1000).approx(BigInt(4000)));
}
BENCHMARK(BM_EulerNewton)->DenseRange(0, 6, 3)->Unit(benchmark::kMillisecond);

void BM_ComputeB(benchmark::State &state)
{
	CandidateRelation rel({BigInt(5), BigInt(-3), BigInt(0), BigInt(2)});
	for (auto _ : state)
		benchmark::DoNotOptimize(compute_B(rel, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_ComputeB)->Arg(6)->Arg(12)->Arg(24);

void BM_HilbertReport(benchmark::State &state)
{
	CandidateRelation rel({BigInt(-3), BigInt(1)});
	for (auto _ : state)
		benchmark::DoNotOptimize(hilbert_report(rel, 8).witness);
}
BENCHMARK(BM_HilbertReport)->Unit(benchmark::kMillisecond);

void BM_QuasiShiftExp(benchmark::State &state)
{
	for (auto _ : state) {
		ConvFPS s = quasi_shift(ConvFPS::exp(), CReal(R(1)));
		for (std::uint64_t n = 0; n < 10; ++n)
			benchmark::DoNotOptimize(s.coeff(n).approx(BigInt(1000000)));
	}
}
BENCHMARK(BM_QuasiShiftExp)->Unit(benchmark::kMillisecond);

void BM_BuildStage(benchmark::State &state)
{
	for (auto _ : state)
		benchmark::DoNotOptimize(build_stage(static_cast<unsigned>(state.range(0))).c);
}
BENCHMARK(BM_BuildStage)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_NorthEastEval(benchmark::State &state)
{
	for (auto _ : state) {
		NorthEast ne;
		for (std::uint64_t j = 1; j <= static_cast<std::uint64_t>(state.range(0)); ++j)
			benchmark::DoNotOptimize(ne.eval(enumerate_q01(j)).value);
	}
}
BENCHMARK(BM_NorthEastEval)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
