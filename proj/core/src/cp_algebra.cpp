#include "pardyn/cp_algebra.hpp"

#include "pardyn/dynamics.hpp"
#include "pardyn/error.hpp"
#include "pardyn/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pardyn {

namespace {

std::size_t to_size(const BigInt& v) {
  return static_cast<std::size_t>(v);
}

void require_cycle_free(const FiniteSystem& sys, const ChainDecomposition& cd) {
  if (!cd.cycles.empty()) {
    throw ValidationError("system has a cycle through point '" + sys.label(cd.cycles[0][0]) +
                          "'; the finite matrix model needs a cycle-free system");
  }
}

}  // namespace

CpAlgebra::CpAlgebra(Correspondence corr, std::vector<CpBlock> blocks)
    : corr_(std::move(corr)), blocks_(std::move(blocks)) {
  where_.assign(system().size(), {0, 0});
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t k = 0; k < blocks_[b].chain.size(); ++k) {
      where_[blocks_[b].chain[k]] = {b, k + 1};
    }
  }
}

bool CpAlgebra::materialized() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const CpBlock& b) { return b.materialized; });
}

const CpBlock& CpAlgebra::materialized_block(std::size_t b) const {
  const CpBlock& blk = blocks_.at(b);
  if (!blk.materialized) {
    throw ValidationError("block " + std::to_string(b) + " of size " + blk.size.str() +
                          " is too large to materialize");
  }
  return blk;
}

std::vector<std::size_t> CpAlgebra::block_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    out.push_back(to_size(materialized_block(b).size));
  }
  return out;
}

std::size_t CpAlgebra::position_of(std::size_t block, std::size_t i) const {
  const CpBlock& blk = materialized_block(block);
  const auto it = std::upper_bound(blk.offset.begin(), blk.offset.end(), i);
  return static_cast<std::size_t>(it - blk.offset.begin());
}

std::vector<PathElement> CpAlgebra::path_basis(std::size_t block) const {
  const CpBlock& blk = materialized_block(block);
  std::vector<PathElement> out;
  out.reserve(to_size(blk.size));
  std::vector<std::vector<std::uint32_t>> words{{}};
  for (std::size_t k = 1; k <= blk.chain.size(); ++k) {
    for (const auto& w : words) {
      out.push_back({k, w});
    }
    if (k == blk.chain.size()) {
      break;
    }
    // Appending a letter as the least significant digit keeps the index
    // formula index(w.e) = index(w) * d(x_k) + (e - 1).
    const std::uint32_t d = rank().at(blk.chain[k - 1]);
    std::vector<std::vector<std::uint32_t>> next;
    next.reserve(words.size() * d);
    for (const auto& w : words) {
      for (std::uint32_t e = 1; e <= d; ++e) {
        auto extended = w;
        extended.push_back(e);
        next.push_back(std::move(extended));
      }
    }
    words = std::move(next);
  }
  return out;
}

Matrix CpAlgebra::pi_block(std::size_t block, const PointFunction& f) const {
  corr_.validate(f);
  const CpBlock& blk = materialized_block(block);
  Matrix m(to_size(blk.size));
  for (std::size_t k = 0; k < blk.chain.size(); ++k) {
    const Complex& value = f[blk.chain[k]];
    if (value.is_zero()) {
      continue;
    }
    const std::size_t begin = blk.offset[k];
    const std::size_t end = begin + to_size(blk.multiplicity[k]);
    for (std::size_t i = begin; i < end; ++i) {
      m.set(i, i, value);
    }
  }
  return m;
}

Matrix CpAlgebra::t_block(std::size_t block, const Section& xi) const {
  corr_.validate(xi);
  const CpBlock& blk = materialized_block(block);
  Matrix m(to_size(blk.size));
  for (std::size_t k = 0; k + 1 < blk.chain.size(); ++k) {
    const auto& fiber = xi.fibers[blk.chain[k]];
    const std::size_t d = fiber.size();
    const std::size_t count = to_size(blk.multiplicity[k]);
    for (std::size_t w = 0; w < count; ++w) {
      const std::size_t col = blk.offset[k] + w;
      for (std::size_t e = 0; e < d; ++e) {
        if (!fiber[e].is_zero()) {
          m.set(blk.offset[k + 1] + w * d + e, col, fiber[e]);
        }
      }
    }
  }
  return m;
}

BlockMatrix CpAlgebra::identity() const {
  return BlockMatrix::identity(block_sizes());
}

BlockMatrix CpAlgebra::zero() const {
  return BlockMatrix::zero(block_sizes());
}

BlockMatrix CpAlgebra::pi(const PointFunction& f) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks.push_back(pi_block(b, f));
  }
  return BlockMatrix(std::move(blocks));
}

BlockMatrix CpAlgebra::t(const Section& xi) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks.push_back(t_block(b, xi));
  }
  return BlockMatrix(std::move(blocks));
}

std::vector<BlockMatrix> CpAlgebra::generators() const {
  std::vector<BlockMatrix> out;
  for (PointId x = 0; x < system().size(); ++x) {
    out.push_back(pi(indicator(system().size(), x)));
  }
  for (const auto& s : corr_.unit_sections()) {
    out.push_back(t(s));
  }
  return out;
}

void CpAlgebra::require_shape(const BlockMatrix& a) const {
  if (a.sizes() != block_sizes()) {
    throw ValidationError("element does not match the block shape of the algebra");
  }
}

namespace {

// Generators living in one block: pi of the chain's indicators, t of the
// chain's unit sections, and the adjoints of the latter.
std::vector<Matrix> block_generators(const CpAlgebra& cp, std::size_t b, bool with_adjoints) {
  const CpBlock& blk = cp.blocks()[b];
  const std::size_t n = cp.system().size();
  std::vector<Matrix> gens;
  for (PointId x : blk.chain) {
    gens.push_back(cp.pi_block(b, indicator(n, x)));
  }
  for (PointId u : blk.chain) {
    if (!cp.system().in_domain(u)) {
      continue;
    }
    for (std::size_t e = 0; e < cp.rank().at(u); ++e) {
      Matrix t = cp.t_block(b, cp.correspondence().unit_section(u, e));
      if (with_adjoints) {
        gens.push_back(t.adjoint());
      }
      gens.push_back(std::move(t));
    }
  }
  return gens;
}

Matrix block_expectation(const CpAlgebra& cp, std::size_t b, const Matrix& a, long degree) {
  Matrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto pi = static_cast<long>(cp.position_of(b, i));
    for (const auto& [j, v] : a.row(i)) {
      if (pi - static_cast<long>(cp.position_of(b, j)) == degree) {
        out.set(i, j, v);
      }
    }
  }
  return out;
}

// Independent count of the path basis: grow the set of paths edge by edge
// and tally how many end at each position.
std::vector<BigInt> enumerate_path_counts(const FiniteSystem& sys, const RankFunction& rank,
                                          const std::vector<PointId>& chain) {
  std::vector<BigInt> counts(chain.size(), BigInt(0));
  struct Path {
    std::size_t position;
    std::size_t length;
  };
  std::vector<Path> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      counts[p.position] += 1;
      const PointId x = chain[p.position];
      if (!sys.in_domain(x)) {
        continue;
      }
      for (std::uint32_t e = 0; e < rank.at(x); ++e) {
        next.push_back({p.position + 1, p.length + 1});
      }
    }
    frontier = std::move(next);
  }
  return counts;
}

void verify_block(const CpAlgebra& cp, std::size_t b, const CpBuildOptions& options) {
  const CpBlock& blk = cp.blocks()[b];
  const std::size_t l = to_size(blk.size);
  const std::string where = "block " + std::to_string(b) + ": ";

  const auto counts = enumerate_path_counts(cp.system(), cp.rank(), blk.chain);
  BigInt total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] != blk.multiplicity[k]) {
      throw std::logic_error(where + "path enumeration disagrees with multiplicity");
    }
    total += counts[k];
  }
  if (total != blk.size || cp.path_basis(b).size() != l) {
    throw std::logic_error(where + "path enumeration disagrees with block size");
  }

  const auto& corr = cp.correspondence();
  const std::size_t n = cp.system().size();
  std::vector<std::pair<PointId, std::size_t>> units;
  for (PointId u : blk.chain) {
    if (cp.system().in_domain(u)) {
      for (std::size_t e = 0; e < cp.rank().at(u); ++e) {
        units.emplace_back(u, e);
      }
    }
  }
  for (const auto& [u1, e1] : units) {
    const Section xi = corr.unit_section(u1, e1);
    const Matrix t_xi = cp.t_block(b, xi);
    for (const auto& [u2, e2] : units) {
      const Section eta = corr.unit_section(u2, e2);
      if (t_xi.adjoint() * cp.t_block(b, eta) != cp.pi_block(b, corr.inner_product(xi, eta))) {
        throw std::logic_error(where + "t(xi)* t(eta) != pi(<xi, eta>)");
      }
    }
    for (PointId x : blk.chain) {
      const PointFunction f = indicator(n, x);
      if (cp.pi_block(b, f) * t_xi != cp.t_block(b, corr.left_act(f, xi)) ||
          t_xi * cp.pi_block(b, f) != cp.t_block(b, corr.right_act(xi, f))) {
        throw std::logic_error(where + "module actions are not intertwined");
      }
    }
  }

  if (l <= options.fullness_limit && generated_dimension(cp, b) != l * l) {
    throw std::logic_error(where + "generated algebra is not all of M_" + std::to_string(l));
  }
}

}  // namespace

CpAlgebra build_cp_algebra(const FiniteSystem& sys, const RankFunction& rank,
                           const CpBuildOptions& options) {
  const ChainDecomposition cd = chain_decomposition(sys);
  require_cycle_free(sys, cd);
  Correspondence corr(sys, rank);

  std::vector<CpBlock> blocks;
  blocks.reserve(cd.chains.size());
  for (const auto& chain : cd.chains) {
    CpBlock blk;
    blk.chain = chain;
    BigInt m = 1;
    blk.size = 0;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      blk.multiplicity.push_back(m);
      blk.size += m;
      if (k + 1 < chain.size()) {
        m *= rank.at(chain[k]);
      }
    }
    blk.materialized = blk.size <= options.materialize_limit;
    if (blk.materialized) {
      std::size_t off = 0;
      for (const auto& mk : blk.multiplicity) {
        blk.offset.push_back(off);
        off += to_size(mk);
      }
    }
    blocks.push_back(std::move(blk));
  }

  CpAlgebra cp(std::move(corr), std::move(blocks));
  for (std::size_t b = 0; b < cp.block_count(); ++b) {
    const CpBlock& blk = cp.blocks()[b];
    if (blk.materialized && blk.size <= options.verify_limit) {
      verify_block(cp, b, options);
    }
  }
  return cp;
}

BlockMatrix homogeneous_component(const CpAlgebra& cp, const BlockMatrix& a, long degree) {
  cp.require_shape(a);
  std::vector<Matrix> blocks;
  blocks.reserve(a.block_count());
  for (std::size_t b = 0; b < a.block_count(); ++b) {
    blocks.push_back(block_expectation(cp, b, a.block(b), degree));
  }
  return BlockMatrix(std::move(blocks));
}

BlockMatrix expectation(const CpAlgebra& cp, const BlockMatrix& a) {
  return homogeneous_component(cp, a, 0);
}

namespace {

std::vector<BigInt> capped_fibers(const FiniteSystem& sys, const RankFunction& rank,
                                  std::optional<std::size_t> cap) {
  require_cycle_free(sys, chain_decomposition(sys));
  if (rank.size() != sys.size()) {
    throw ValidationError("rank function does not match the system");
  }
  const DomainTable domains = compute_domains(sys);
  std::vector<BigInt> out(sys.size(), BigInt(1));
  for (PointId x = 0; x < sys.size(); ++x) {
    // Largest j with x in D_j; the table stabilizes at the empty set.
    std::size_t j = 0;
    while (j < domains.horizon() && domains.at(static_cast<long>(j + 1)).test(x)) {
      ++j;
    }
    const std::size_t depth = cap ? std::min(j, *cap) : j;
    PointId cur = x;
    for (std::size_t i = 0; i < depth; ++i) {
      cur = *sys.preimage(cur);
      out[x] *= rank.at(cur);
    }
  }
  return out;
}

}  // namespace

std::vector<BigInt> fixed_point_fibers(const FiniteSystem& sys, const RankFunction& rank) {
  return capped_fibers(sys, rank, std::nullopt);
}

std::vector<BigInt> bn_fibers(const FiniteSystem& sys, const RankFunction& rank, std::size_t n) {
  return capped_fibers(sys, rank, n);
}

void validate(const CpAlgebra& cp, const Trace& tau) {
  if (tau.weights.size() != cp.block_count()) {
    throw ValidationError("trace has " + std::to_string(tau.weights.size()) +
                          " weights for " + std::to_string(cp.block_count()) + " blocks");
  }
  Rational sum = 0;
  for (const auto& w : tau.weights) {
    if (w < 0) {
      throw ValidationError("trace weights must be nonnegative");
    }
    sum += w;
  }
  if (sum != 1) {
    throw ValidationError("trace weights must sum to 1");
  }
}

Complex evaluate(const CpAlgebra& cp, const Trace& tau, const BlockMatrix& a) {
  validate(cp, tau);
  cp.require_shape(a);
  Complex out;
  for (std::size_t b = 0; b < a.block_count(); ++b) {
    if (tau.weights[b] == 0) {
      continue;
    }
    Complex tr = a.block(b).trace();
    tr *= Rational(tau.weights[b] / Rational(cp.blocks()[b].size));
    out += tr;
  }
  return out;
}

Complex trace_from_measure(const CpAlgebra& cp, const Measure& mu, const BlockMatrix& a) {
  const FiniteSystem& sys = cp.system();
  if (mu.weights.size() != sys.size()) {
    throw ValidationError("measure does not match the system");
  }
  const MeasurePolytope conformal = conformal_measure_polytope(sys, cp.rank());
  if (auto bad = conformal.first_violation(mu)) {
    throw ValidationError("measure is not conformal: violates " + describe(sys, *bad));
  }
  if (!mu.is_probability()) {
    throw ValidationError("measure is not a probability measure");
  }
  const BlockMatrix phi = expectation(cp, a);
  Complex out;
  for (PointId x = 0; x < sys.size(); ++x) {
    if (mu.weights[x] == 0) {
      continue;
    }
    const auto [b, k] = cp.locate(x);
    const CpBlock& blk = cp.blocks()[b];
    // Normalized trace of the fiber sub-block at position k.
    Complex tr;
    const std::size_t begin = blk.offset[k - 1];
    const std::size_t end = begin + static_cast<std::size_t>(blk.multiplicity[k - 1]);
    for (std::size_t i = begin; i < end; ++i) {
      tr += phi.block(b).at(i, i);
    }
    tr *= Rational(mu.weights[x] / Rational(blk.multiplicity[k - 1]));
    out += tr;
  }
  return out;
}

std::vector<Trace> traces_of_cp(const CpAlgebra& cp) {
  std::vector<Trace> out;
  out.reserve(cp.block_count());
  for (std::size_t b = 0; b < cp.block_count(); ++b) {
    Trace t{std::vector<Rational>(cp.block_count(), Rational(0))};
    t.weights[b] = 1;
    out.push_back(std::move(t));
  }
  return out;
}

Measure measure_from_trace(const CpAlgebra& cp, const Trace& tau) {
  validate(cp, tau);
  const std::size_t n = cp.system().size();
  Measure mu{std::vector<Rational>(n, Rational(0))};
  for (PointId x = 0; x < n; ++x) {
    const auto [b, k] = cp.locate(x);
    const CpBlock& blk = cp.blocks()[b];
    if (tau.weights[b] == 0) {
      continue;
    }
    // tau(pi(1_x)) restricted to block b is Tr(pi(1_x)) / l; without a
    // materialized block the trace of the diagonal projection is m_k.
    Rational projection_trace = blk.materialized
                                    ? cp.pi_block(b, indicator(n, x)).trace().real()
                                    : Rational(blk.multiplicity[k - 1]);
    mu.weights[x] = tau.weights[b] * projection_trace / Rational(blk.size);
  }
  return mu;
}

RelationCheck check_relations(const CpAlgebra& cp, const std::vector<Section>& sections,
                              const std::vector<PointFunction>& functions) {
  RelationCheck r;
  const auto& corr = cp.correspondence();
  auto record = [&r](bool ok, const std::string& what) {
    ++r.checked;
    if (!ok) {
      ++r.failures;
      if (r.first_failures.size() < 5) {
        r.first_failures.push_back(what);
      }
    }
  };
  const std::size_t count = sections.size();
  for (std::size_t i = 0; i < count; ++i) {
    const Section& xi = sections[i];
    const Section& eta = sections[(i + 1) % count];
    const BlockMatrix t_xi = cp.t(xi);
    record(t_xi.adjoint() * cp.t(eta) == cp.pi(corr.inner_product(xi, eta)),
           "t(xi)* t(eta) = pi(<xi, eta>) for section pair " + std::to_string(i));
    if (functions.empty()) {
      continue;
    }
    const PointFunction& f = functions[i % functions.size()];
    const BlockMatrix pi_f = cp.pi(f);
    record(pi_f * t_xi == cp.t(corr.left_act(f, xi)),
           "pi(f) t(xi) = t(f.xi) for pair " + std::to_string(i));
    record(t_xi * pi_f == cp.t(corr.right_act(xi, f)),
           "t(xi) pi(f) = t(xi.f) for pair " + std::to_string(i));
  }
  return r;
}

RelationCheck check_covariance(const CpAlgebra& cp) {
  RelationCheck r;
  const FiniteSystem& sys = cp.system();
  for (PointId u = 0; u < sys.size(); ++u) {
    if (!sys.in_domain(u)) {
      continue;
    }
    BlockMatrix sum = cp.zero();
    for (std::size_t e = 0; e < cp.rank().at(u); ++e) {
      const BlockMatrix t = cp.t(cp.correspondence().unit_section(u, e));
      sum += t * t.adjoint();
    }
    ++r.checked;
    if (sum != cp.pi(indicator(sys.size(), *sys.image(u)))) {
      ++r.failures;
      if (r.first_failures.size() < 5) {
        r.first_failures.push_back("covariance at '" + sys.label(*sys.image(u)) + "'");
      }
    }
  }
  return r;
}

std::size_t generated_dimension(const CpAlgebra& cp, std::size_t block) {
  const std::size_t l = static_cast<std::size_t>(cp.blocks().at(block).size);
  return generated_algebra(l, block_generators(cp, block, true)).dimension();
}

std::size_t generated_degree_zero_dimension(const CpAlgebra& cp, std::size_t block) {
  const std::size_t l = static_cast<std::size_t>(cp.blocks().at(block).size);
  const MatrixSpan whole = generated_algebra(l, block_generators(cp, block, true));
  MatrixSpan degree_zero(l);
  for (const auto& m : whole.independent()) {
    degree_zero.insert(block_expectation(cp, block, m, 0));
  }
  return degree_zero.dimension();
}

}  // namespace pardyn
