#pragma once

// Exact cocycle/coboundary dimensions, generators of H^1 and H^2, the directed
// coboundaries B^2(X_vec), and expansion constants.

#include <cstdint>
#include <optional>
#include <vector>

#include "cubetest/cochain.hpp"

namespace cubetest {

struct CohomologyReport {
  int n = 0;
  int d = 0;
  std::uint64_t dim_C = 0;
  std::uint64_t dim_Z = 0;
  std::uint64_t dim_B = 0;
  std::uint64_t dim_H = 0;
  std::vector<Cochain> generators;  ///< -1 for d = 1; -1 and [-1] for d = 2
  bool generators_independent = false;  ///< cocycles, independent modulo B
  bool covered = false;  ///< n is in the range where H^1 = mu2 / H^2 = mu2 x mu2 is known
};

/// Smallest n for which the dimension of H^d is asserted: 4 for d = 1, 10 for d = 2.
int cohomology_threshold(int d);

/// Throws RangeError below the threshold unless allow_small is set.
CohomologyReport cohomology(int n, int d, bool allow_small = false);

/// Delta''(g) == +1 for a cocycle g. Throws NotACocycleError otherwise.
bool membership_B2vec(const Cochain& g);

struct Z2Structure {
  int n = 0;
  std::uint64_t dim_Z2 = 0;
  std::uint64_t dim_B2 = 0;
  std::uint64_t dim_B2vec = 0;  ///< rank of the image of the directed differential
  bool minus_one_in_B2vec = true;
  std::uint64_t index_Z2_B2 = 0;  ///< [Z^2 : B^2]
  bool confirmed = false;
};

/// Needs n >= 10.
Z2Structure verify_Z2_structure(int n);

/// Basis of C_vec^I = {f : N f in Z^1}, as directed cochains.
std::vector<DirectedCochain> directed_cocycle_basis(int n);

/// min over g not in Z^1 of ||delta g|| / dist(g, Z^1), by enumerating C^1.
/// Needs 4 <= n <= 6.
Ratio expansion_exact(int n);

struct ProbeResult {
  double ratio = 0.0;       ///< ||delta^2 g|| / min_alpha ||g alpha delta f_hat||
  double delta_norm = 0.0;
  bool delta_exact = false;
  Ratio coset_upper;        ///< min over alpha in H of ||g alpha delta f_hat||
};

/// Ratio for one g; nullopt when g is a cocycle. n >= 12.
std::optional<ProbeResult> probe_ratio(const Cochain& g, Rng& rng);

struct ExpansionProbe {
  std::optional<double> value;  ///< min over probes; heuristic
  std::uint64_t probes = 0;
  std::uint64_t excluded = 0;   ///< probes that landed in Z^2
};

/// Samples `trials` planted members of Z^2 with 1..8 flipped squares and
/// reports the smallest probe ratio.
ExpansionProbe expansion_probe(int n, Rng& rng, std::uint64_t trials);

}  // namespace cubetest
