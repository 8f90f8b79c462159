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

#ifndef MLPRIOR_DECODER_H_
#define MLPRIOR_DECODER_H_

#include <cstdint>
#include <string_view>

#include "mlprior/maxflow.h"
#include "mlprior/model.h"
#include "mlprior/qbo.h"
#include "mlprior/sdp.h"
#include "mlprior/spectral.h"

namespace mlprior {

enum class DecoderKind { kExhaustive, kMinCut, kSdp, kSpectral, kAuto };

std::string_view ToString(DecoderKind kind);
DecoderKind ParseDecoderKind(std::string_view text);

struct DecoderOptions {
  DecoderKind kind = DecoderKind::kAuto;
  MaxFlowAlgorithm maxflow = MaxFlowAlgorithm::kAuto;
  SdpConfig sdp;
  int rounding_samples = kDefaultRoundingSamples;
  SpectralConfig spectral;
  // Constrained spectral problems go through the QR elimination instead of
  // the multiplier search.
  bool spectral_qr = false;
  // Cardinality decodes that min-cut could not certify are re-solved by
  // enumeration when V is at most this.
  int exhaustive_fallback_labels = 0;
  // Largest V that kAuto sends to enumeration.
  int auto_exhaustive_labels = 16;
};

// kAuto: enumeration for small V, min-cut when the prior is non-positive,
// spectral otherwise. Other kinds are returned unchanged.
DecoderKind ResolveDecoder(DecoderKind kind, int num_labels,
                           SignConstraint sign, int auto_exhaustive_labels = 16);

// Whether `kind` handles problems whose prior has this sign constraint.
bool DecoderSupports(DecoderKind kind, SignConstraint sign);

// Relaxation decoders report an upper bound in relaxation_value; exact ones
// report the attained maximum. `seed` only affects SDP rounding.
DecodeSolution Decode(const QboProblem& problem, const DecoderOptions& options,
                      std::uint64_t seed = 0);

}  // namespace mlprior

#endif  // MLPRIOR_DECODER_H_
