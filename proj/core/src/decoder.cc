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

#include "mlprior/decoder.h"

#include <string>

#include "mlprior/cardinality_decoder.h"
#include "mlprior/errors.h"
#include "mlprior/exhaustive.h"
#include "mlprior/mincut_decoder.h"

namespace mlprior {

std::string_view ToString(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::kExhaustive: return "exhaustive";
    case DecoderKind::kMinCut: return "mincut";
    case DecoderKind::kSdp: return "sdp";
    case DecoderKind::kSpectral: return "spectral";
    case DecoderKind::kAuto: return "auto";
  }
  return "unknown";
}

DecoderKind ParseDecoderKind(std::string_view text) {
  for (DecoderKind k : {DecoderKind::kExhaustive, DecoderKind::kMinCut,
                        DecoderKind::kSdp, DecoderKind::kSpectral,
                        DecoderKind::kAuto}) {
    if (text == ToString(k)) return k;
  }
  throw InvalidArgument("unknown decoder '" + std::string(text) +
                        "' (expected exhaustive, mincut, sdp, spectral or auto)");
}

DecoderKind ResolveDecoder(DecoderKind kind, int num_labels,
                           SignConstraint sign, int auto_exhaustive_labels) {
  if (kind != DecoderKind::kAuto) return kind;
  if (num_labels <= auto_exhaustive_labels) return DecoderKind::kExhaustive;
  if (sign == SignConstraint::kNonPositive || sign == SignConstraint::kZero) {
    return DecoderKind::kMinCut;
  }
  return DecoderKind::kSpectral;
}

bool DecoderSupports(DecoderKind kind, SignConstraint sign) {
  return kind != DecoderKind::kMinCut || sign == SignConstraint::kNonPositive ||
         sign == SignConstraint::kZero;
}

DecodeSolution Decode(const QboProblem& problem, const DecoderOptions& options,
                      std::uint64_t seed) {
  const DecoderKind kind =
      options.kind == DecoderKind::kAuto
          ? ResolveDecoder(options.kind, problem.size(),
                           problem.OffDiagonalNonPositive()
                               ? SignConstraint::kNonPositive
                               : SignConstraint::kAny,
                           options.auto_exhaustive_labels)
          : options.kind;
  switch (kind) {
    case DecoderKind::kExhaustive:
      return ExhaustiveDecode(problem);
    case DecoderKind::kMinCut: {
      const auto& c = problem.constraint();
      if (!c) return MinCutDecode(problem, options.maxflow);
      if (!c->Cardinality()) {
        throw InvalidArgument("min-cut decoding supports only cardinality constraints");
      }
      DecodeSolution sol = CardinalityDecodeNonPositive(problem);
      if (sol.approximate && problem.size() <= options.exhaustive_fallback_labels) {
        return ExhaustiveDecode(problem);
      }
      return sol;
    }
    case DecoderKind::kSdp:
      return SdpDecode(problem, options.sdp, options.rounding_samples, seed);
    case DecoderKind::kSpectral:
      if (options.spectral_qr && problem.constraint()) return SpectralDecodeQr(problem);
      return SpectralDecode(problem, options.spectral);
    case DecoderKind::kAuto:
      break;
  }
  throw InvalidArgument("unresolved decoder kind");
}

}  // namespace mlprior
