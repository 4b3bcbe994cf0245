#pragma once

// Detecting maps: products of a few cochain entries that are constant on
// cocycles, and whose constant identifies the cohomology class. Plus the
// sampling helpers the decoders are built from.

#include <cstdint>
#include <span>
#include <vector>

#include "cubetest/cochain.hpp"

namespace cubetest {

/// (Delta f)_{ijk} = f_ij f_jk f_ki, for f in C^1.
TupleFunction Delta(const Cochain& f);

/// (Delta' g)_{ijkl} = g_{ijkl} g_{ikjl} g_{ijlk}, for g in C^2.
TupleFunction DeltaPrime(const Cochain& g);

/// (Delta'' g)_{ab;ijk} = g_{aibj} g_{ajbk} g_{akbi}, for g in C^2.
/// Slots are ordered (a, b, i, j, k).
TupleFunction DeltaDoublePrime(const Cochain& g);

/// (f x f)_{x,y} = f_x f_y on 2k-tuples whose two halves are disjoint.
TupleFunction pair_product(const TupleFunction& f);

struct DetectorReport {
  Sign estimated_constant;
  double empirical_error = 0.0;  ///< fraction of evaluations disagreeing with the constant
  std::uint64_t samples = 0;
  std::uint64_t disagreeing = 0;
  bool exact = false;  ///< every tuple was evaluated
};

/// Majority vote; ties go to +1.
DetectorReport majority_constant(std::span<const Sign> values);

/// Streaming form of majority_constant.
class MajorityCounter {
 public:
  void add(Sign s) { (s.is_minus() ? minus_ : plus_) += 1; }
  std::uint64_t total() const { return plus_ + minus_; }
  DetectorReport report() const;

 private:
  std::uint64_t plus_ = 0;
  std::uint64_t minus_ = 0;
};

/// Majority constant of t over X^[k]: every tuple when there are at most
/// `budget` of them, otherwise `budget` uniform draws.
DetectorReport estimate_constant(const TupleFunction& t, std::uint64_t budget, Rng& rng);

/// A tuple function with one starred slot (the vertex being chosen) and
/// possibly some slots pinned to already-chosen vertices. The remaining slots
/// range over distinct vertices avoiding the star and the pinned ones.
struct StarCondition {
  TupleFunction f;
  std::size_t star = 0;
  std::vector<std::pair<std::size_t, Vertex>> pinned;
};

struct VertexSelection {
  Vertex vertex = 0;
  double worst_ratio = 0.0;                ///< max over conditions of conditional / global error
  std::vector<double> conditional_error;   ///< per condition, at the chosen vertex
  std::vector<double> global_error;        ///< per condition, averaged over candidates
  bool exact = false;
};

/// Vertex minimizing the worst ratio (error with the star at that vertex) /
/// (error of the condition overall). Ties go to the least id. Conditions are
/// evaluated exactly when candidates x free tuples <= budget, otherwise with
/// budget / candidates draws per candidate.
VertexSelection select_vertex(std::span<const StarCondition> conditions, std::uint64_t budget, Rng& rng);

/// Checks (delta f)_{ijkl} = (Delta f)_{ijl} (Delta f)_{jkl} on every 4-tuple
/// when there are at most `samples` of them, otherwise on `samples` random
/// ones. Throws ConsistencyError on a violation; returns the number checked.
std::uint64_t delta1_from_Delta(const Cochain& f, Rng& rng, std::uint64_t samples = 100000);

/// The cube with bottom face cycle b0 b1 b2 b3 and top face t0 t1 t2 t3, where
/// b_r is joined to t_r.
std::array<Vertex, 8> cube_from_faces(const std::array<Vertex, 4>& bottom, const std::array<Vertex, 4>& top);

/// (delta^2 g) on one cube, evaluated from g directly.
Sign delta2_at(const Cochain& g, std::span<const Vertex> cube_labeling);

/// (delta^1 f) on one square, evaluated from f directly.
Sign delta1_at(const Cochain& f, const std::array<Vertex, 4>& cycle);

/// Product of delta^2 g over the three cubes whose bottoms are the squares
/// (ijkl), (ikjl), (ijlk) and whose tops are the primed copies. Equals
/// (Delta' g)_{ijkl} (Delta' g)_{i'j'k'l'} for every g.
Sign three_cube_product(const Cochain& g, std::span<const Vertex> eight);

}  // namespace cubetest
