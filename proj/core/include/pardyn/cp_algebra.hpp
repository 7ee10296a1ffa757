#pragma once

// Matrix model of the Cuntz-Pimsner algebra of a cycle-free finite system.
//
// Each chain x_1 -> ... -> x_N contributes one full matrix block acting on
// the span of paths |k, w>, where k is the position along the chain
// (1-based) and w = (e_1, ..., e_{k-1}) picks a basis vector of the fiber
// at each earlier point. Functions act diagonally, pi(f)|k,w> = f(x_k)|k,w>,
// and sections append an edge,
//
//   t(xi)|k,w> = sum_e xi(x_k)_e |k+1, w.e>   (0 at k = N).
//
// The gauge degree of the matrix unit |k,w><k',w'| is k - k', so the
// fixed-point algebra is block diagonal by position with fibers M_{m_k},
// m_k = d(x_1)...d(x_{k-1}), and the block has size l = sum_k m_k.

#include "pardyn/correspondence.hpp"
#include "pardyn/matrix.hpp"
#include "pardyn/measures.hpp"
#include "pardyn/rank.hpp"
#include "pardyn/rational.hpp"
#include "pardyn/system.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pardyn {

/// Basis element |k, w> of a block; `position` is 1-based and every letter
/// of `word` is 1-based (e_j in 1..d(x_j)).
struct PathElement {
  std::size_t position;
  std::vector<std::uint32_t> word;

  friend bool operator==(const PathElement&, const PathElement&) = default;
};

struct CpBlock {
  std::vector<PointId> chain;
  /// multiplicity[k-1] = number of basis paths at position k.
  std::vector<BigInt> multiplicity;
  BigInt size;
  /// Whether matrices for this block can be produced.
  bool materialized = false;
  /// offset[k-1] = index of the first basis path at position k (materialized only).
  std::vector<std::size_t> offset;
};

struct CpBuildOptions {
  /// Blocks larger than this keep only their path counts.
  std::size_t materialize_limit = 4096;
  /// Relations and the path-count oracle are checked on blocks up to this size.
  std::size_t verify_limit = 64;
  /// Span saturation (block is all of M_l) is checked up to this size.
  std::size_t fullness_limit = 12;
};

class CpAlgebra {
public:
  CpAlgebra(Correspondence corr, std::vector<CpBlock> blocks);

  const Correspondence& correspondence() const { return corr_; }
  const FiniteSystem& system() const { return corr_.system(); }
  const RankFunction& rank() const { return corr_.rank(); }

  const std::vector<CpBlock>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  /// Block index and 1-based chain position of a point.
  std::pair<std::size_t, std::size_t> locate(PointId x) const { return where_[x]; }

  bool materialized() const;
  /// Sizes of all blocks; throws ValidationError if some block is not materialized.
  std::vector<std::size_t> block_sizes() const;

  /// Explicit path basis of a materialized block, in index order.
  std::vector<PathElement> path_basis(std::size_t block) const;
  /// 1-based position of basis index i in a materialized block.
  std::size_t position_of(std::size_t block, std::size_t i) const;

  Matrix pi_block(std::size_t block, const PointFunction& f) const;
  Matrix t_block(std::size_t block, const Section& xi) const;

  BlockMatrix identity() const;
  BlockMatrix zero() const;
  BlockMatrix pi(const PointFunction& f) const;
  BlockMatrix t(const Section& xi) const;

  /// pi(indicator of x) for every point, then t(unit section) for every
  /// unit section.
  std::vector<BlockMatrix> generators() const;

  /// Throws ValidationError when `a` does not have this algebra's block shape.
  void require_shape(const BlockMatrix& a) const;

private:
  const CpBlock& materialized_block(std::size_t b) const;

  Correspondence corr_;
  std::vector<CpBlock> blocks_;
  std::vector<std::pair<std::size_t, std::size_t>> where_;
};

/// Throws ValidationError naming a cycle point if the system has a cycle,
/// and std::logic_error if a build-time check of the model fails.
CpAlgebra build_cp_algebra(const FiniteSystem& sys, const RankFunction& rank,
                           const CpBuildOptions& options = {});

/// Component of gauge degree `degree` (entries with k - k' = degree).
BlockMatrix homogeneous_component(const CpAlgebra& cp, const BlockMatrix& a, long degree);
/// Conditional expectation onto the fixed-point algebra (degree 0).
BlockMatrix expectation(const CpAlgebra& cp, const BlockMatrix& a);

/// Fixed-point fiber size per point: product of ranks along the backward
/// path of length j for x in D_j \ D_{j+1}. Throws on cycles.
std::vector<BigInt> fixed_point_fibers(const FiniteSystem& sys, const RankFunction& rank);
/// Fiber sizes of B_[0,n]: as above with the backward depth capped at n
/// (the n ranks nearest to the point).
std::vector<BigInt> bn_fibers(const FiniteSystem& sys, const RankFunction& rank, std::size_t n);

/// Convex combination of normalized block traces.
struct Trace {
  std::vector<Rational> weights;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Throws ValidationError unless weights are nonnegative, sum to 1 and
/// match the block count.
void validate(const CpAlgebra& cp, const Trace& tau);
Complex evaluate(const CpAlgebra& cp, const Trace& tau, const BlockMatrix& a);

/// tau_mu(a) = sum_x mu(x) tr_{fiber(x)}(Phi(a)(x)) for a conformal measure mu.
/// Throws ValidationError naming the violated constraint if mu is not conformal.
Complex trace_from_measure(const CpAlgebra& cp, const Measure& mu, const BlockMatrix& a);

/// Normalized trace of each single block.
std::vector<Trace> traces_of_cp(const CpAlgebra& cp);
/// mu(x) = tau(pi(1_x)).
Measure measure_from_trace(const CpAlgebra& cp, const Trace& tau);

struct RelationCheck {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> first_failures;
};

/// Checks t(xi)* t(eta) = pi(<xi,eta>), pi(f) t(xi) = t(f.xi) and
/// t(xi) pi(f) = t(xi.f) for all pairs drawn from the given sections and
/// functions.
RelationCheck check_relations(const CpAlgebra& cp, const std::vector<Section>& sections,
                              const std::vector<PointFunction>& functions);

/// Checks pi(1_v) = sum_e t(delta_{u,e}) t(delta_{u,e})* for every v = theta(u).
RelationCheck check_covariance(const CpAlgebra& cp);

/// Dimension of the unital *-algebra generated inside one block.
std::size_t generated_dimension(const CpAlgebra& cp, std::size_t block);
/// Dimension of the degree-0 part of that algebra.
std::size_t generated_degree_zero_dimension(const CpAlgebra& cp, std::size_t block);

}  // namespace pardyn
