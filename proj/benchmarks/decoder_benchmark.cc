// Copyright 2026 The mlprior Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Decoder timings on the bench-decode problem distribution.

#include <benchmark/benchmark.h>

#include "mlprior/decoder.h"
#include "mlprior/harness.h"
#include "mlprior/trs.h"

namespace {

using namespace mlprior;

void RunDecoder(benchmark::State& state, DecoderKind kind, SignConstraint prior,
                bool cardinality) {
  BenchSpec spec;
  spec.num_labels = static_cast<int>(state.range(0));
  spec.prior = prior;
  spec.cardinality = cardinality;
  spec.seed = 7;
  DecoderOptions options;
  options.kind = kind;
  int trial = 0;
  for (auto _ : state) {
    const QboProblem p = RandomBenchProblem(spec, trial % 16);
    benchmark::DoNotOptimize(Decode(p, options, trial).rounded_value);
    ++trial;
  }
}

void BM_Exhaustive(benchmark::State& s) {
  RunDecoder(s, DecoderKind::kExhaustive, SignConstraint::kAny, false);
}
void BM_MinCut(benchmark::State& s) {
  RunDecoder(s, DecoderKind::kMinCut, SignConstraint::kNonPositive, false);
}
void BM_MinCutCardinality(benchmark::State& s) {
  RunDecoder(s, DecoderKind::kMinCut, SignConstraint::kNonPositive, true);
}
void BM_Sdp(benchmark::State& s) {
  RunDecoder(s, DecoderKind::kSdp, SignConstraint::kAny, false);
}
void BM_Spectral(benchmark::State& s) {
  RunDecoder(s, DecoderKind::kSpectral, SignConstraint::kAny, false);
}
void BM_SpectralCardinality(benchmark::State& s) {
  RunDecoder(s, DecoderKind::kSpectral, SignConstraint::kAny, true);
}

BENCHMARK(BM_Exhaustive)->DenseRange(8, 16, 4);
BENCHMARK(BM_MinCut)->RangeMultiplier(2)->Range(8, 256);
BENCHMARK(BM_MinCutCardinality)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_Sdp)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_Spectral)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_SpectralCardinality)->RangeMultiplier(2)->Range(8, 128);

void BM_Trs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BenchSpec spec;
  spec.num_labels = n;
  const QboProblem p = RandomBenchProblem(spec, 0);
  const TrsProblem trs{p.A(), p.b(), static_cast<double>(n)};
  for (auto _ : state) benchmark::DoNotOptimize(SolveTrs(trs).value);
}
BENCHMARK(BM_Trs)->RangeMultiplier(2)->Range(4, 128);

}  // namespace

BENCHMARK_MAIN();
