#pragma once

// One-sided testers for B^1 and Z^2 and the decoders that rebuild a nearby
// member of the tested space.

#include <cstdint>
#include <optional>
#include <vector>

#include "cubetest/cochain.hpp"

namespace cubetest {

struct TestVerdict {
  bool accepted = true;
  std::uint64_t trials = 0;
  int queries_per_trial = 0;
  std::optional<Cell> rejecting_witness;  ///< first rejecting cell
  std::uint64_t rejections = 0;

  double rejection_rate() const { return trials == 0 ? 0.0 : static_cast<double>(rejections) / static_cast<double>(trials); }
};

/// Evaluates delta^1 f on `trials` uniform squares. Needs n >= 4.
TestVerdict test_B1(const Cochain& f, std::uint64_t trials, Rng& rng);

/// Evaluates delta^2 g on `trials` uniform cubes. Needs n >= 8.
TestVerdict test_Z2(const Cochain& g, std::uint64_t trials, Rng& rng);

/// Norms of delta f are computed exactly up to this many target cells.
inline constexpr std::uint64_t kExactNormLimit = 5'000'000;

struct DecodeOptions {
  std::uint64_t budget = 0;          ///< tuples per detector estimate; 0 means 64 n^2
  bool force_exact = false;          ///< exact delta norm regardless of size
  std::uint64_t norm_samples = 1'000'000;
};

struct DecodeReport {
  int d = 1;  ///< dimension of the decoded cochain
  Sign theta;
  Sign pi;  ///< d = 2 only
  Cochain recovered{1, 0};  ///< alpha in C^0 for d = 1, f in C^1 for d = 2

  NormEstimate delta_norm;             ///< ||delta f|| or ||delta^2 g||
  std::optional<Ratio> delta_norm_exact;
  std::uint64_t ratio_constant = 0;    ///< 3 or 1504
  double certified_bound = 0.0;        ///< ratio_constant * delta_norm
  Ratio achieved_distance;             ///< exact distance to the reconstruction
  bool within_bound = false;

  std::vector<Vertex> anchors;         ///< a for d = 1; a0, b0 for d = 2
  std::uint64_t symmetrized = 0;       ///< pairs where f'_ij != f'_ji
};

/// theta delta^0 alpha, or theta [pi] delta^1 f, from a report.
Cochain reconstruction(const DecodeReport& r);

DecodeReport decode_B1(const Cochain& f, Rng& rng, const DecodeOptions& opts = {});

/// Needs n >= 12.
DecodeReport decode_Z2(const Cochain& g, Rng& rng, const DecodeOptions& opts = {});

struct Classification {
  Sign theta;
  Sign pi;
  Cochain f{2, 1};
};

/// Exact factorization g = theta [pi] delta^1 f of a cocycle, verified by
/// reconstruction. Needs n >= 10; throws NotACocycleError when delta^2 g != 1.
Classification classify_exact(const Cochain& g);

/// ||delta f||, exact when the target has at most `exact_limit` cells.
NormEstimate delta_norm(const Cochain& f, Rng& rng, std::uint64_t samples, std::uint64_t exact_limit = kExactNormLimit,
                        std::optional<Ratio>* exact = nullptr);

}  // namespace cubetest
