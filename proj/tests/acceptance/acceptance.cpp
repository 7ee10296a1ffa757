// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// limit. Exit status is nonzero when any criterion fails.

#include "pardyn/cp_algebra.hpp"
#include "pardyn/dynamics.hpp"
#include "pardyn/generators.hpp"
#include "pardyn/measures.hpp"
#include "pardyn/orbit_breaking.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

using namespace pardyn;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure message and keeps counting.
class Tally {
public:
  void check(bool cond, const std::string& what) {
    ++checks_;
    if (!cond) {
      ++failures_;
      if (first_.empty()) {
        first_ = what;
      }
    }
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << checks_ << " checks, " << failures_ << " failures";
    if (!first_.empty()) {
      s << " (first: " << first_ << ")";
    }
    return {failures_ == 0, s.str()};
  }

private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string show(const std::vector<std::optional<PointId>>& theta) {
  std::string s = "[";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    s += (i ? "," : "") + (theta[i] ? std::to_string(*theta[i]) : std::string("-"));
  }
  return s + "]";
}

oracle::Mask to_mask(const PointSet& s) {
  oracle::Mask m = 0;
  for (PointId x : members(s)) {
    m |= oracle::Mask{1} << x;
  }
  return m;
}

std::uint64_t base_seed() {
  const char* raw = std::getenv("PARDYN_SEED");
  return raw ? std::strtoull(raw, nullptr, 10) : 20240601ULL;
}

PointSet power_image(const FiniteSystem& sys, PointSet s, long n) {
  for (long i = 0; i < std::abs(n); ++i) {
    s = n > 0 ? forward_image(sys, s) : backward_image(sys, s);
  }
  return s;
}

// 1 -------------------------------------------------------------------------
Outcome domain_identities() {
  Tally t;
  const std::uint64_t seed = base_seed();
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t size = 1 + i % 12;
    const FiniteSystem sys = make_random(size, seed + i);
    const DomainTable table = compute_domains(sys, 12);
    for (long n = -12; n <= 12; ++n) {
      t.check(to_mask(table.at(n)) == oracle::domain_by_iteration(sys.images(), n),
              "D_" + std::to_string(n) + " differs from iteration on " + show(sys.images()));
    }
    for (long n = -6; n <= 6; ++n) {
      for (long k = -6; k <= 6; ++k) {
        const PointSet lhs = power_image(sys, table.at(-n) & table.at(k), n);
        const PointSet rhs = table.at(n) & table.at(k + n);
        t.check(lhs == rhs, "identity fails at n=" + std::to_string(n) + " k=" +
                                std::to_string(k) + " on " + show(sys.images()));
      }
    }
  }
  return t.outcome("500 random systems, |n|,|k| <= 6");
}

// 2 -------------------------------------------------------------------------
Outcome minimality_equivalence() {
  Tally t;
  std::size_t systems = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& theta : PartialInjections(n)) {
      ++systems;
      const FiniteSystem sys(theta);
      const auto report = minimality_report(sys);
      const auto o = oracle::minimality_by_subsets(theta);
      t.check(o.no_proper_invariant_subset == o.all_orbits_dense,
              "(1) != (2) on " + show(theta));
      t.check(report.no_proper_invariant_subset == o.no_proper_invariant_subset &&
                  report.all_orbits_dense == o.all_orbits_dense &&
                  is_minimal(sys) == o.all_orbits_dense,
              "library disagrees with subset oracle on " + show(theta));
    }
  }
  return t.outcome(std::to_string(systems) + " partial injections on 1..5 points");
}

// 3 -------------------------------------------------------------------------
Outcome measure_polytopes() {
  Tally t;
  std::size_t systems = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& theta : PartialInjections(n)) {
      ++systems;
      const FiniteSystem sys(theta);
      const PointSet glob = orbit_decomposition(sys).points_of(OrbitType::Glob);
      const bool has_chain = !chain_decomposition(sys).chains.empty();
      for (std::uint32_t d : {1U, 2U, 3U}) {
        const MeasurePolytope p =
            d == 1 ? invariant_measure_polytope(sys) : conformal_measure_polytope(sys, d);
        std::vector<Measure> expected;
        for (auto& w : oracle::basic_feasible_vertices(
                 theta, std::vector<std::int64_t>(n, static_cast<std::int64_t>(d)))) {
          expected.push_back(oracle::to_measure(w));
        }
        t.check(same_vertex_set(p.vertices, expected),
                "vertices differ from oracle for d=" + std::to_string(d) + " on " + show(theta));
        if (d >= 2) {
          for (const auto& v : p.vertices) {
            t.check(v.mass(glob) == 0, "conformal mass on D_gl on " + show(theta));
          }
          t.check(p.empty() != has_chain, "nonempty iff chain fails on " + show(theta));
        }
      }
    }
  }
  return t.outcome(std::to_string(systems) + " systems on 1..6 points, d = 1, 2, 3");
}

// 4 -------------------------------------------------------------------------
Outcome conformal_sequence_bound() {
  Tally t;
  const std::size_t length = 10;
  for (std::uint32_t d : {2U, 3U}) {
    for (std::size_t n = 0; n < length; ++n) {
      const auto s = conformal_sequence(length, d, n);
      Rational sum = 0;
      Rational power = 1;
      for (std::size_t i = 0; i <= n; ++i) {
        sum += Rational(1) / power;
        if (i < n) {
          power *= d;
        }
      }
      const Rational bound = Rational(1) / (power * sum);
      const std::string where = "d=" + std::to_string(d) + " n=" + std::to_string(n);
      t.check(s.error_bound == bound, "bound formula at " + where);
      const auto defect = conformal_defect(s.ray, RankFunction::constant(s.ray, d), s.measure);
      t.check(defect.max_defect <= s.error_bound, "bound exceeded at " + where);
      if (n + 1 < length) {
        t.check(defect.max_defect == s.error_bound && defect.argmax == PointId{n + 1},
                "bound not attained at the ray tail at " + where);
      } else {
        const auto p = conformal_measure_polytope(s.ray, d);
        t.check(p.vertices.size() == 1 && p.vertices[0] == s.measure,
                "final approximant is not the conformal measure at " + where);
      }
    }
  }
  return t.outcome("ray length 10, d = 2, 3, all n");
}

// 5 -------------------------------------------------------------------------
Outcome cp_matrix_model() {
  Tally t;
  auto size_of = [](std::size_t n, std::uint32_t d) {
    const auto sys = make_chain(n);
    return build_cp_algebra(sys, RankFunction::constant(sys, d)).block_sizes();
  };
  t.check(size_of(3, 2) == std::vector<std::size_t>{7}, "chain 3, d = 2 is not M_7");
  t.check(size_of(4, 2) == std::vector<std::size_t>{15}, "chain 4, d = 2 is not M_15");

  std::mt19937_64 rng(base_seed());
  std::size_t instances = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t words = 1;
    for (std::size_t i = 1; i < n; ++i) {
      words *= 3;
    }
    for (std::size_t code = 0; code < words; ++code) {
      ++instances;
      const FiniteSystem sys = make_chain(n);
      std::vector<std::uint32_t> values(n, 0);
      std::size_t c = code;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        values[i] = 1 + static_cast<std::uint32_t>(c % 3);
        c /= 3;
      }
      const RankFunction rank(sys, values);
      const CpAlgebra cp = build_cp_algebra(sys, rank, {4096, 0, 0});
      const std::size_t l = cp.block_sizes()[0];
      const std::string where = "chain " + std::to_string(n) + " rank code " + std::to_string(code);
      t.check(generated_dimension(cp, 0) == l * l, "span is not l^2 for " + where);
      std::vector<Section> sections;
      std::vector<PointFunction> functions;
      for (int i = 0; i < 100; ++i) {
        sections.push_back(oracle::random_section(cp.correspondence(), rng));
        functions.push_back(oracle::random_function(n, rng));
      }
      const auto rel = check_relations(cp, sections, functions);
      t.check(rel.failures == 0 && rel.checked > 0, "relations fail for " + where);
      t.check(check_covariance(cp).failures == 0, "covariance fails for " + where);
    }
  }
  return t.outcome(std::to_string(instances) + " chains N <= 4, ranks <= 3, 100 sections each");
}

// 6 -------------------------------------------------------------------------
void trace_identities(Tally& t, const FiniteSystem& sys, const RankFunction& rank,
                      std::mt19937_64& rng, std::size_t samples) {
  const CpAlgebra cp = build_cp_algebra(sys, rank, {4096, 0, 0});
  const auto poly = conformal_measure_polytope(sys, rank);
  const auto traces = traces_of_cp(cp);
  const std::string where = show(sys.images());
  for (std::size_t s = 0; s < samples; ++s) {
    const BlockMatrix a = oracle::random_element(cp, rng, 2, 3);
    const BlockMatrix b = oracle::random_element(cp, rng, 2, 3);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const Measure mu = measure_from_trace(cp, traces[i]);
      const Complex ab = trace_from_measure(cp, mu, a * b);
      t.check(ab == trace_from_measure(cp, mu, b * a), "not tracial on " + where);
      const Complex pos = trace_from_measure(cp, mu, a.adjoint() * a);
      t.check(pos.is_real() && pos.real() >= 0, "not positive on " + where);
      t.check(trace_from_measure(cp, mu, cp.identity()) == Complex(1), "not unital on " + where);
      t.check(trace_from_measure(cp, mu, a) == evaluate(cp, traces[i], a),
              "measure trace differs from block trace on " + where);
      t.check(evaluate(cp, traces[i], expectation(cp, a)) == evaluate(cp, traces[i], a),
              "tau o Phi != tau on " + where);
    }
    // A non-extreme trace as well.
    Trace mixed{std::vector<Rational>(traces.size(), Rational(1, traces.size()))};
    t.check(evaluate(cp, mixed, expectation(cp, a)) == evaluate(cp, mixed, a),
            "tau o Phi != tau for a mixed trace on " + where);
  }
  t.check(static_cast<long>(cp.block_count()) - 1 == poly.affine_dimension,
          "simplex dimensions differ on " + where);
}

// Systems of disjoint chains, one per isomorphism class: chain lengths
// nonincreasing, and rank words nondecreasing among chains of equal length.
void for_each_chain_class(std::size_t n, const std::function<void(const FiniteSystem&,
                                                                   const RankFunction&)>& f) {
  struct Part {
    std::size_t length;
    std::size_t code;
  };
  std::vector<Part> parts;
  std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
    if (remaining == 0) {
      std::vector<std::optional<PointId>> image;
      std::vector<std::uint32_t> values;
      for (const auto& p : parts) {
        const std::size_t start = image.size();
        std::size_t c = p.code;
        for (std::size_t i = 0; i < p.length; ++i) {
          if (i + 1 < p.length) {
            image.emplace_back(start + i + 1);
            values.push_back(1 + static_cast<std::uint32_t>(c % 3));
            c /= 3;
          } else {
            image.emplace_back();
            values.push_back(0);
          }
        }
      }
      const FiniteSystem sys(image);
      f(sys, RankFunction(sys, values));
      return;
    }
    const std::size_t max_len = parts.empty() ? remaining : std::min(remaining, parts.back().length);
    for (std::size_t len = max_len; len >= 1; --len) {
      std::size_t words = 1;
      for (std::size_t i = 1; i < len; ++i) {
        words *= 3;
      }
      const std::size_t first =
          !parts.empty() && parts.back().length == len ? parts.back().code : 0;
      for (std::size_t code = first; code < words; ++code) {
        parts.push_back({len, code});
        rec(remaining - len);
        parts.pop_back();
      }
    }
  };
  rec(n);
}

Outcome trace_measure_bijection() {
  Tally t;
  std::size_t labeled = 0;
  // Labeled sweep: every cycle-free system on <= 6 points, every rank <= 3.
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& theta : PartialInjections(n)) {
      const FiniteSystem sys(theta);
      if (!is_free(sys)) {
        continue;
      }
      std::vector<PointId> dom = members(sys.domain());
      std::size_t combos = 1;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        combos *= 3;
      }
      for (std::size_t code = 0; code < combos; ++code) {
        std::vector<std::uint32_t> values(n, 0);
        std::size_t c = code;
        for (PointId u : dom) {
          values[u] = 1 + static_cast<std::uint32_t>(c % 3);
          c /= 3;
        }
        const RankFunction rank(sys, values);
        const CpAlgebra cp = build_cp_algebra(sys, rank, {4096, 0, 0});
        std::vector<Measure> from_traces;
        for (const auto& tau : traces_of_cp(cp)) {
          from_traces.push_back(measure_from_trace(cp, tau));
        }
        ++labeled;
        t.check(same_vertex_set(from_traces, conformal_measure_polytope(sys, rank).vertices),
                "trace measures differ from conformal vertices on " + show(theta));
      }
    }
  }
  // Functional identities on random elements, one system per isomorphism class.
  std::mt19937_64 rng(base_seed() + 6);
  std::size_t classes = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for_each_chain_class(n, [&](const FiniteSystem& sys, const RankFunction& rank) {
      ++classes;
      trace_identities(t, sys, rank, rng, 2);
    });
  }
  return t.outcome(std::to_string(labeled) + " labeled (system, rank) pairs, " +
                   std::to_string(classes) + " isomorphism classes with random elements");
}

// 7 -------------------------------------------------------------------------
Outcome fiber_structure() {
  Tally t;
  std::size_t instances = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for_each_chain_class(n, [&](const FiniteSystem& sys, const RankFunction& rank) {
      ++instances;
      const std::string where = show(sys.images()) + " ranks";
      const CpAlgebra cp = build_cp_algebra(sys, rank, {4096, 0, 0});
      const auto fibers = fixed_point_fibers(sys, rank);
      for (std::size_t b = 0; b < cp.block_count(); ++b) {
        const CpBlock& blk = cp.blocks()[b];
        std::vector<std::uint32_t> chain_ranks;
        for (PointId x : blk.chain) {
          chain_ranks.push_back(sys.in_domain(x) ? rank.at(x) : 0);
        }
        const auto counts = oracle::path_counts(chain_ranks);
        std::vector<std::size_t> per_position(blk.chain.size(), 0);
        for (const auto& p : cp.path_basis(b)) {
          ++per_position[p.position - 1];
        }
        for (std::size_t k = 0; k < blk.chain.size(); ++k) {
          const PointId x = blk.chain[k];
          t.check(fibers[x] == blk.multiplicity[k] && fibers[x] == counts[k] &&
                      per_position[k] == counts[k],
                  "fiber at position " + std::to_string(k + 1) + " on " + where);
        }
      }
      // B_[0,n] rule: x in D_j \ D_{j+1} has the ranks of its min(j, n)
      // nearest predecessors.
      for (std::size_t cap = 0; cap <= sys.size(); ++cap) {
        const auto bn = bn_fibers(sys, rank, cap);
        for (PointId x = 0; x < sys.size(); ++x) {
          std::size_t j = 0;
          while (oracle::domain_by_iteration(sys.images(), static_cast<long>(j + 1)) >> x & 1U) {
            ++j;
          }
          BigInt expected = 1;
          PointId cur = x;
          for (std::size_t i = 0; i < std::min(j, cap); ++i) {
            for (PointId p = 0; p < sys.size(); ++p) {
              if (sys.image(p) == cur) {
                cur = p;
                break;
              }
            }
            expected *= rank.at(cur);
          }
          t.check(bn[x] == expected, "bn_fibers n=" + std::to_string(cap) + " on " + where);
        }
      }
    });
  }
  return t.outcome(std::to_string(instances) + " chain systems on <= 6 points, mixed ranks <= 3");
}

// 8 -------------------------------------------------------------------------
Outcome blurbs() {
  auto perms = verify_blurbs({1, 2, 3, 4, 5, 6, 7}, EnumerationMode::Permutations);
  const auto partial = verify_blurbs({1, 2, 3, 4, 5}, EnumerationMode::PartialInjections);
  std::ostringstream s;
  s << perms.instances << " (permutation, Y) pairs on <= 7 points, " << partial.instances
    << " (partial injection, Y) pairs on <= 5 points; "
    << perms.counterexample_count + partial.counterexample_count << " counterexamples";
  perms.merge(partial);
  if (!perms.counterexamples.empty()) {
    s << " (first: " << show(perms.counterexamples[0].theta) << " "
      << perms.counterexamples[0].detail << ")";
  }
  return {perms.ok(), s.str()};
}

// 9 -------------------------------------------------------------------------
Outcome break_traces() {
  Tally t;
  std::ostringstream s;
  for (std::size_t q : {5U, 101U, 1009U}) {
    const FiniteSystem sys = make_rotation(q, 1);
    const PointSet y = make_point_set(q, {0});
    const auto r = verify_break_traces(sys, y, RankFunction::constant(sys, 1));
    const std::string where = "q=" + std::to_string(q);
    t.check(r.block_sizes == std::vector<std::string>{std::to_string(q)},
            "broken algebra is not M_q at " + where);
    t.check(r.broken == make_rotation(q, 1, {0}), "broken system differs from rotation at " + where);
    t.check(r.traces_match_invariant_measures.value_or(false) && r.broken_trace_count == 1,
            "unique trace does not match the uniform measure at " + where);
    const auto inv = invariant_measure_polytope(sys);
    bool uniform = inv.vertices.size() == 1;
    for (const auto& w : inv.vertices.empty() ? std::vector<Rational>{} : inv.vertices[0].weights) {
      uniform = uniform && w == Rational(1, q);
    }
    t.check(uniform, "invariant measure is not uniform at " + where);
    s << "M_" << r.block_sizes.front() << (q > 256 ? " (size only)" : "") << ", ";
  }
  const FiniteSystem five = make_rotation(5, 1);
  const auto r = verify_break_traces(five, make_point_set(5, {0}), RankFunction::constant(five, 2));
  t.check(r.global_conformal_empty.value_or(false), "global conformal polytope not empty");
  t.check(r.block_sizes == std::vector<std::string>{"31"}, "d = 2 block is not M_31");
  const auto p = conformal_measure_polytope(r.broken, 2);
  // Chain order 1 -> 2 -> 3 -> 4 -> 0 carries (1, 2, 4, 8, 16)/31.
  const std::vector<Rational> expected{Rational(16, 31), Rational(1, 31), Rational(2, 31),
                                       Rational(4, 31), Rational(8, 31)};
  t.check(p.vertices.size() == 1 && p.vertices[0].weights == expected,
          "broken conformal polytope is not {(1,2,4,8,16)/31}");
  t.check(r.broken_traces_match_conformal, "broken trace does not match the conformal measure");
  s << "d=2: M_" << (r.block_sizes.empty() ? "?" : r.block_sizes.front());
  return t.outcome(s.str());
}

// 10 ------------------------------------------------------------------------
Outcome simplicity() {
  const auto r = verify_break_simplicity({1, 2, 3, 4, 5, 6, 7});
  std::ostringstream s;
  s << r.instances << " (cycle, Y, rank) cases on <= 7 points; " << r.counterexample_count
    << " counterexamples";
  if (!r.counterexamples.empty()) {
    s << " (first: " << show(r.counterexamples[0].theta) << " " << r.counterexamples[0].detail
      << ")";
  }
  return {r.ok(), s.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "domain identity suite", 10, domain_identities},
      {2, "minimality equivalence", 60, minimality_equivalence},
      {3, "measure polytopes vs basic-feasible-solution oracle", 120, measure_polytopes},
      {4, "conformal sequence error bound", 1, conformal_sequence_bound},
      {5, "CP matrix model", 60, cp_matrix_model},
      {6, "trace / conformal measure bijection", 120, trace_measure_bijection},
      {7, "fixed-point fiber structure", 1, fiber_structure},
      {8, "orbit-breaking equivalences", 300, blurbs},
      {9, "orbit-breaking traces", 30, break_traces},
      {10, "orbit-breaking simplicity", 60, simplicity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d: %s [%.2f s, limit %.0f s%s] %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, secs, c.limit_seconds, in_time ? "" : ", TOO SLOW", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
