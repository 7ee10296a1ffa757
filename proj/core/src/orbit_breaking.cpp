#include "pardyn/orbit_breaking.hpp"

#include "pardyn/cp_algebra.hpp"
#include "pardyn/dynamics.hpp"
#include "pardyn/error.hpp"
#include "pardyn/generators.hpp"
#include "pardyn/measures.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace pardyn {

namespace {

constexpr std::size_t kKeptCounterexamples = 10;

// Orbit size of every point, read off the chain/cycle decomposition.
std::vector<std::size_t> orbit_sizes(const FiniteSystem& sys) {
  std::vector<std::size_t> out(sys.size(), 0);
  const ChainDecomposition cd = chain_decomposition(sys);
  for (const auto* group : {&cd.chains, &cd.cycles}) {
    for (const auto& path : *group) {
      for (PointId x : path) {
        out[x] = path.size();
      }
    }
  }
  return out;
}

std::vector<PointId> subset_from_mask(const std::vector<PointId>& pool, std::uint64_t mask) {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (mask >> i & 1U) {
      out.push_back(pool[i]);
    }
  }
  return out;
}

void record(VerifyReport& r, Counterexample c) {
  ++r.counterexample_count;
  if (r.counterexamples.size() < kKeptCounterexamples) {
    r.counterexamples.push_back(std::move(c));
  }
}

}  // namespace

FiniteSystem break_orbit(const FiniteSystem& sys, const PointSet& y) {
  if (y.size() != sys.size()) {
    throw ValidationError("break set has the wrong universe size");
  }
  const PointSet dom = sys.domain();
  if (!y.is_subset_of(dom)) {
    const auto bad = (y - dom).find_first();
    throw ValidationError("break point '" + sys.label(bad) + "' is not in the domain of theta");
  }
  return restrict_domain(sys, dom - y);
}

bool is_global(const FiniteSystem& sys) {
  return sys.domain().all();
}

bool preserves_orbit_size(const FiniteSystem& sys, const FiniteSystem& broken) {
  return orbit_sizes(sys) == orbit_sizes(broken);
}

bool meets_once_and_in_glob(const FiniteSystem& sys, const PointSet& y) {
  const PointSet glob = orbit_decomposition(sys).points_of(OrbitType::Glob);
  if (!y.is_subset_of(glob)) {
    return false;
  }
  const auto n = static_cast<long>(sys.size());
  for (PointId p : members(y)) {
    for (long k = 1; k <= n; ++k) {
      for (long sign : {1L, -1L}) {
        const auto z = sys.iterate(p, sign * k);
        if (z && y.test(*z) && *z != p) {
          return false;
        }
      }
    }
  }
  return true;
}

bool preserves_invariant_measures(const FiniteSystem& sys, const FiniteSystem& broken) {
  return same_vertex_set(invariant_measure_polytope(sys).vertices,
                         invariant_measure_polytope(broken).vertices);
}

bool preserves_dense_orbits(const FiniteSystem& sys, const FiniteSystem& broken) {
  for (PointId x = 0; x < sys.size(); ++x) {
    if (orbit(sys, x).all() && !orbit(broken, x).all()) {
      return false;
    }
  }
  return true;
}

BreakReport check_conditions(const FiniteSystem& sys, const PointSet& y) {
  BreakReport r;
  r.restricted = break_orbit(sys, y);
  r.preserves_orbit_size = preserves_orbit_size(sys, r.restricted);
  r.meets_once_and_in_dgl = meets_once_and_in_glob(sys, y);
  r.preserves_measures = preserves_invariant_measures(sys, r.restricted);
  r.restricted_minimal = is_minimal(r.restricted);
  r.preserves_dense_orbits = preserves_dense_orbits(sys, r.restricted);
  r.restricted_simple = r.restricted_minimal && is_free(r.restricted);
  return r;
}

void VerifyReport::merge(VerifyReport other) {
  instances += other.instances;
  counterexample_count += other.counterexample_count;
  for (auto& c : other.counterexamples) {
    if (counterexamples.size() < kKeptCounterexamples) {
      counterexamples.push_back(std::move(c));
    }
  }
  for (auto& s : other.skipped_statements) {
    if (std::find(skipped_statements.begin(), skipped_statements.end(), s) ==
        skipped_statements.end()) {
      skipped_statements.push_back(std::move(s));
    }
  }
}

namespace {

void check_blurbs_instance(VerifyReport& r, const FiniteSystem& sys) {
  const auto dom = members(sys.domain());
  const std::uint64_t subsets = std::uint64_t{1} << dom.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    const auto y_members = subset_from_mask(dom, mask);
    const PointSet y = make_point_set(sys.size(), y_members);
    const FiniteSystem broken = break_orbit(sys, y);
    const bool size_kept = preserves_orbit_size(sys, broken);
    const bool meets_once = meets_once_and_in_glob(sys, y);
    const bool measures_kept = preserves_invariant_measures(sys, broken);
    ++r.instances;
    if (size_kept != meets_once || meets_once != measures_kept) {
      record(r, {sys.images(), y_members,
                 "orbit size preserved=" + std::to_string(size_kept) +
                     ", meets once in D_gl=" + std::to_string(meets_once) +
                     ", measures preserved=" + std::to_string(measures_kept)});
    }
  }
}

VerifyReport blurbs_shard(const std::vector<std::size_t>& sizes, EnumerationMode mode,
                          unsigned shard, unsigned shards) {
  VerifyReport r;
  std::uint64_t index = 0;
  auto visit = [&](const std::vector<std::optional<PointId>>& image) {
    if (index++ % shards == shard) {
      check_blurbs_instance(r, FiniteSystem(image));
    }
  };
  for (std::size_t n : sizes) {
    if (mode == EnumerationMode::Permutations) {
      for (const auto& image : enumerate_permutations(n)) {
        visit(image);
      }
    } else {
      for (const auto& image : PartialInjections(n)) {
        visit(image);
      }
    }
  }
  return r;
}

}  // namespace

VerifyReport verify_blurbs(const std::vector<std::size_t>& sizes, EnumerationMode mode,
                           unsigned shards) {
  if (shards == 0) {
    shards = std::max(1U, std::thread::hardware_concurrency());
  }
  for (std::size_t n : sizes) {
    if (n > kMaxEnumerationSize) {
      throw ValidationError("enumeration size " + std::to_string(n) + " exceeds the limit of " +
                            std::to_string(kMaxEnumerationSize));
    }
  }
  std::vector<std::future<VerifyReport>> parts;
  for (unsigned s = 1; s < shards; ++s) {
    parts.push_back(std::async(std::launch::async, blurbs_shard, std::cref(sizes), mode, s, shards));
  }
  VerifyReport total = blurbs_shard(sizes, mode, 0, shards);
  for (auto& p : parts) {
    total.merge(p.get());
  }
  total.name = mode == EnumerationMode::Permutations ? "blurbs (permutations)"
                                                     : "blurbs (partial injections)";
  return total;
}

VerifyReport verify_restricted_minimality(const std::vector<std::size_t>& cycle_sizes) {
  VerifyReport r;
  r.name = "restricted minimality (single cycles)";
  r.skipped_statements = {
      "(2) => (3): uses that a finite orbit is never dense, which needs X infinite",
      "(1)-(3) <=> (4)-(6): the link through the minimality theorem needs X infinite"};
  for (std::size_t n : cycle_sizes) {
    const FiniteSystem sys = make_cycle(n);
    const auto all = members(sys.all_points());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto y_members = subset_from_mask(all, mask);
      const PointSet y = make_point_set(n, y_members);
      const FiniteSystem broken = break_orbit(sys, y);
      const bool s1 = is_minimal(broken);
      const bool s2 = preserves_dense_orbits(sys, broken);
      bool s3 = preserves_orbit_size(sys, broken);
      for (PointId p : y_members) {
        s3 = s3 && forward_orbit(sys, p).all() && backward_orbit(sys, p).all();
      }
      const bool s4 = preserves_orbit_size(sys, broken);
      const bool s5 = meets_once_and_in_glob(sys, y);
      const bool s6 = preserves_invariant_measures(sys, broken);
      ++r.instances;
      const bool ok = s4 == s5 && s5 == s6 && s1 == s2 && (!s3 || s2);
      if (!ok) {
        std::string bits;
        for (bool b : {s1, s2, s3, s4, s5, s6}) {
          bits += b ? '1' : '0';
        }
        record(r, {sys.images(), y_members, "statements (1)..(6) = " + bits});
      }
    }
  }
  return r;
}

BreakTraceReport verify_break_traces(const FiniteSystem& sys, const PointSet& y,
                                     const RankFunction& rank) {
  if (!is_global(sys)) {
    throw ValidationError("orbit-breaking trace check needs a global system (a permutation)");
  }
  if (rank.size() != sys.size()) {
    throw ValidationError("rank function does not match the system");
  }
  BreakTraceReport r;
  r.broken = break_orbit(sys, y);

  // A rank given on the whole domain restricts to the broken domain; a rank
  // given on the broken domain extends to the global one only when constant.
  const bool covers_global = std::all_of(rank.values().begin(), rank.values().end(),
                                         [](std::uint32_t v) { return v != 0; });
  const RankFunction broken_rank = covers_global ? rank.restricted_to(r.broken) : rank;
  std::optional<RankFunction> global_rank;
  if (covers_global) {
    global_rank = rank;
  } else if (rank.is_constant()) {
    global_rank = RankFunction::constant(sys, rank.constant_value());
  }

  CpBuildOptions options;
  options.materialize_limit = 256;
  const CpAlgebra cp = build_cp_algebra(r.broken, broken_rank, options);
  for (const auto& blk : cp.blocks()) {
    r.block_sizes.push_back(blk.size.str());
  }
  r.meets_once = meets_once_and_in_glob(sys, y);

  std::vector<Measure> trace_measures;
  for (const auto& tau : traces_of_cp(cp)) {
    trace_measures.push_back(measure_from_trace(cp, tau));
  }
  r.broken_trace_count = trace_measures.size();

  const MeasurePolytope invariant = invariant_measure_polytope(sys);
  r.invariant_vertex_count = invariant.vertices.size();
  const bool line_bundle = broken_rank.is_constant() && broken_rank.constant_value() == 1;
  if (line_bundle) {
    r.traces_match_invariant_measures = same_vertex_set(invariant.vertices, trace_measures);
  }

  const MeasurePolytope broken_conformal = conformal_measure_polytope(r.broken, broken_rank);
  r.broken_conformal_nonempty = !broken_conformal.empty();
  r.broken_traces_match_conformal = same_vertex_set(broken_conformal.vertices, trace_measures);

  if (global_rank) {
    const MeasurePolytope global_conformal = conformal_measure_polytope(sys, *global_rank);
    r.global_conformal_empty = global_conformal.empty();
    if (!line_bundle) {
      r.new_traces_appear = trace_measures.size() > global_conformal.vertices.size();
    }
  }
  return r;
}

VerifyReport verify_break_simplicity(const std::vector<std::size_t>& cycle_sizes) {
  VerifyReport r;
  r.name = "orbit-breaking simplicity (single cycles)";
  for (std::size_t n : cycle_sizes) {
    const FiniteSystem sys = make_cycle(n);
    const auto all = members(sys.all_points());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto y_members = subset_from_mask(all, mask);
      const FiniteSystem broken = break_orbit(sys, make_point_set(n, y_members));
      for (std::uint32_t d : {1U, 2U}) {
        bool one_block = false;
        if (!y_members.empty()) {
          one_block = build_cp_algebra(broken, RankFunction::constant(broken, d)).block_count() == 1;
        } else if (is_free(broken)) {
          record(r, {sys.images(), y_members, "unbroken cycle reported cycle-free"});
        }
        ++r.instances;
        if (one_block != (y_members.size() == 1)) {
          record(r, {sys.images(), y_members,
                     "rank " + std::to_string(d) + ": one block=" + std::to_string(one_block)});
        }
      }
    }
  }
  return r;
}

}  // namespace pardyn
