#include <benchmark/benchmark.h>

#include "hecke/analysis.hpp"
#include "hecke/approximants.hpp"
#include "hecke/expansion.hpp"
#include "hecke/parse.hpp"
#include "hecke/words.hpp"

using namespace hecke;

namespace {

SturmianParams params(const char* slope, const char* rho) {
  const SlopeSpec s = parse_slope(slope);
  return SturmianParams(s, parse_intercept(rho, s));
}

void BM_ContractedStream(benchmark::State& state) {
  for (auto _ : state) {
    PartialQuotientStream s(params("per:[;2]", "digits[0,2]"), {2, 3});
    benchmark::DoNotOptimize(s.take(static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ContractedStream)->Arg(10)->Arg(25)->Arg(40);

void BM_WordFamily(benchmark::State& state) {
  for (auto _ : state) {
    SturmianParams P = params("per:[;1]", "digits[]");
    benchmark::DoNotOptimize(build_word_family(P, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_WordFamily)->Arg(15)->Arg(25);

void BM_WordValue(benchmark::State& state) {
  SturmianParams P = params("per:[;1]", "digits[]");
  const BinaryWord w = sturmian_prefix(P, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(word_value(w, 3, 2));
}
BENCHMARK(BM_WordValue)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 19);

void BM_FareyChain(benchmark::State& state) {
  for (auto _ : state) {
    SturmianParams P = params("per:[;2]", "digits[1]");
    benchmark::DoNotOptimize(farey_chain(element_quads(P, {2, 3}, static_cast<std::size_t>(state.range(0))), {2, 3}));
  }
}
BENCHMARK(BM_FareyChain)->Arg(8)->Arg(12);

void BM_EvalDirect(benchmark::State& state) {
  for (auto _ : state) {
    SturmianParams P = params("per:[;3]", "digits[0,2]");
    benchmark::DoNotOptimize(eval_to_precision(P, {2, 3}, state.range(0)));
  }
}
BENCHMARK(BM_EvalDirect)->Arg(512)->Arg(4096);

void BM_EvalFast(benchmark::State& state) {
  for (auto _ : state) {
    SturmianParams P = params("per:[;3]", "digits[0,2]");
    benchmark::DoNotOptimize(eval_fast(P, {2, 3}, 25, state.range(0)));
  }
}
BENCHMARK(BM_EvalFast)->Arg(512)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
