#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace oracle {

using pardyn::Complex;
using pardyn::Rational;

namespace {

std::optional<std::size_t> preimage(const Image& theta, std::size_t y) {
  for (std::size_t x = 0; x < theta.size(); ++x) {
    if (theta[x] == y) {
      return x;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> step(const Image& theta, std::size_t x, long dir) {
  return dir > 0 ? theta[x] : preimage(theta, x);
}

Mask full(std::size_t n) { return n == 0 ? 0 : static_cast<Mask>((1ULL << n) - 1); }

// Rank of a small integer matrix by fraction-free (Bareiss) elimination.
// Intermediate products go through 128 bits and overflow is fatal.
std::size_t integer_rank(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) {
      ++p;
    }
    if (p == rows) {
      continue;
    }
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        const __int128 v = static_cast<__int128>(a[r][k]) * a[rank][c] -
                           static_cast<__int128>(a[r][c]) * a[rank][k];
        if (v % prev != 0) {
          throw std::logic_error("integer_rank: inexact division");
        }
        const __int128 q = v / prev;
        if (q > std::numeric_limits<std::int64_t>::max() ||
            q < std::numeric_limits<std::int64_t>::min()) {
          throw std::overflow_error("integer_rank overflow");
        }
        a[r][k] = static_cast<std::int64_t>(q);
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Unique solution of an independent, consistent system, by plain rational
// Gauss-Jordan elimination.
std::vector<Rational> solve(const std::vector<std::vector<std::int64_t>>& aug, std::size_t cols) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : aug) {
    std::vector<Rational> r;
    for (auto v : row) {
      r.emplace_back(v);
    }
    m.push_back(std::move(r));
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = row;
    while (m[p][c] == 0) {
      ++p;
    }
    std::swap(m[p], m[row]);
    const Rational pivot = m[row][c];
    for (auto& v : m[row]) {
      v /= pivot;
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != row && m[r][c] != 0) {
        const Rational f = m[r][c];
        for (std::size_t k = 0; k <= cols; ++k) {
          m[r][k] -= f * m[row][k];
        }
      }
    }
    ++row;
  }
  std::vector<Rational> x(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    x[c] = m[c][cols];
  }
  return x;
}

}  // namespace

Mask domain_by_iteration(const Image& theta, long n) {
  const std::size_t size = theta.size();
  Mask out = 0;
  for (std::size_t x = 0; x < size; ++x) {
    std::optional<std::size_t> cur = x;
    for (long i = 0; i < std::abs(n) && cur; ++i) {
      cur = theta[*cur];
    }
    if (cur) {
      out |= n >= 0 ? Mask{1} << *cur : Mask{1} << x;
    }
  }
  return out;
}

Mask apply_power(const Image& theta, Mask s, long n) {
  Mask out = 0;
  for (std::size_t x = 0; x < theta.size(); ++x) {
    if (!(s >> x & 1U)) {
      continue;
    }
    std::optional<std::size_t> cur = x;
    for (long i = 0; i < std::abs(n) && cur; ++i) {
      cur = step(theta, *cur, n);
    }
    if (cur) {
      out |= Mask{1} << *cur;
    }
  }
  return out;
}

Mask orbit_by_walking(const Image& theta, std::size_t x) {
  Mask out = Mask{1} << x;
  for (long dir : {1L, -1L}) {
    std::optional<std::size_t> cur = step(theta, x, dir);
    while (cur && !(out >> *cur & 1U)) {
      out |= Mask{1} << *cur;
      cur = step(theta, *cur, dir);
    }
  }
  return out;
}

Mask periodic_points(const Image& theta) {
  Mask out = 0;
  for (std::size_t x = 0; x < theta.size(); ++x) {
    std::optional<std::size_t> cur = theta[x];
    for (std::size_t i = 0; i < theta.size() && cur; ++i) {
      if (*cur == x) {
        out |= Mask{1} << x;
        break;
      }
      cur = theta[*cur];
    }
  }
  return out;
}

bool is_forward_invariant(const Image& theta, Mask y) {
  for (std::size_t x = 0; x < theta.size(); ++x) {
    if ((y >> x & 1U) && theta[x] && !(y >> *theta[x] & 1U)) {
      return false;
    }
  }
  return true;
}

bool is_backward_invariant(const Image& theta, Mask y) {
  for (std::size_t x = 0; x < theta.size(); ++x) {
    if (theta[x] && (y >> *theta[x] & 1U) && !(y >> x & 1U)) {
      return false;
    }
  }
  return true;
}

bool is_invariant(const Image& theta, Mask y) {
  return is_forward_invariant(theta, y) && is_backward_invariant(theta, y);
}

MinimalityOracle minimality_by_subsets(const Image& theta) {
  const std::size_t n = theta.size();
  const Mask all = full(n);
  const Mask glob = periodic_points(theta);
  MinimalityOracle r{true, true, true, true, true};
  for (Mask y = 1; y < all; ++y) {
    const bool inv = is_invariant(theta, y);
    if (inv) {
      r.no_proper_invariant_subset = false;
    }
    if ((y & glob) != 0) {
      if (inv) {
        r.invariant_meeting_glob_trivial = false;
      }
      if (is_forward_invariant(theta, y)) {
        r.forward_invariant_meeting_glob_trivial = false;
      }
      if (is_backward_invariant(theta, y)) {
        r.backward_invariant_meeting_glob_trivial = false;
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (orbit_by_walking(theta, x) != all) {
      r.all_orbits_dense = false;
    }
  }
  return r;
}

std::vector<std::vector<Rational>> basic_feasible_vertices(const Image& theta,
                                                           const std::vector<std::int64_t>& factor) {
  const std::size_t n = theta.size();
  // Rows: one per domain point, then the normalization row; last column is b.
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t u = 0; u < n; ++u) {
    if (theta[u]) {
      std::vector<std::int64_t> row(n + 1, 0);
      row[*theta[u]] += 1;
      row[u] -= factor[u];
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::int64_t> norm(n + 1, 1);
  rows.push_back(std::move(norm));

  std::vector<std::vector<Rational>> out;
  for (Mask s = 1; s <= full(n); ++s) {
    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < n; ++x) {
      if (s >> x & 1U) {
        support.push_back(x);
      }
    }
    std::vector<std::vector<std::int64_t>> a;
    std::vector<std::vector<std::int64_t>> aug;
    for (const auto& row : rows) {
      std::vector<std::int64_t> r;
      for (std::size_t x : support) {
        r.push_back(row[x]);
      }
      a.push_back(r);
      r.push_back(row[n]);
      aug.push_back(std::move(r));
    }
    const std::size_t k = support.size();
    if (integer_rank(a) != k || integer_rank(aug) != k) {
      continue;
    }
    // Keep k independent rows for the solve.
    std::vector<std::vector<std::int64_t>> chosen;
    std::vector<std::vector<std::int64_t>> probe;
    for (const auto& r : aug) {
      probe.push_back(std::vector<std::int64_t>(r.begin(), r.end() - 1));
      if (integer_rank(probe) == chosen.size() + 1) {
        chosen.push_back(r);
      } else {
        probe.pop_back();
      }
      if (chosen.size() == k) {
        break;
      }
    }
    const auto x = solve(chosen, k);
    if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v > 0; })) {
      std::vector<Rational> w(n, Rational(0));
      for (std::size_t i = 0; i < k; ++i) {
        w[support[i]] = x[i];
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::uint64_t> path_counts(const std::vector<std::uint32_t>& chain_ranks) {
  // chain_ranks[j] = rank at the j-th chain point (the last entry is unused).
  std::vector<std::uint64_t> out;
  std::uint64_t paths = 1;
  for (std::size_t k = 0; k < chain_ranks.size(); ++k) {
    out.push_back(paths);
    std::uint64_t next = 0;
    for (std::uint64_t p = 0; p < paths; ++p) {
      for (std::uint32_t e = 0; e < chain_ranks[k]; ++e) {
        ++next;
      }
    }
    paths = next;
  }
  return out;
}

std::uint64_t count_partial_injections_brute(std::size_t n) {
  // Encode each map as a base-(n+1) number; digit n means "undefined".
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= n + 1;
  }
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<bool> hit(n, false);
    std::uint64_t c = code;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      const auto d = static_cast<std::size_t>(c % (n + 1));
      c /= n + 1;
      if (d < n) {
        ok = !hit[d];
        hit[d] = true;
      }
    }
    count += ok ? 1 : 0;
  }
  return count;
}

Rational random_rational(std::mt19937_64& rng) {
  const auto num = static_cast<long>(rng() % 11) - 5;
  const auto den = static_cast<long>(rng() % 4) + 1;
  return Rational(num) / den;
}

Complex random_complex(std::mt19937_64& rng) {
  return {random_rational(rng), random_rational(rng)};
}

pardyn::Section random_section(const pardyn::Correspondence& corr, std::mt19937_64& rng) {
  pardyn::Section xi = corr.zero_section();
  for (auto& fiber : xi.fibers) {
    for (auto& v : fiber) {
      v = random_complex(rng);
    }
  }
  return xi;
}

pardyn::PointFunction random_function(std::size_t n, std::mt19937_64& rng) {
  pardyn::PointFunction f(n);
  for (auto& v : f) {
    v = random_complex(rng);
  }
  return f;
}

pardyn::BlockMatrix random_element(const pardyn::CpAlgebra& cp, std::mt19937_64& rng,
                                   std::size_t terms, std::size_t max_word) {
  const auto gens = cp.generators();
  std::vector<pardyn::BlockMatrix> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  pardyn::BlockMatrix out = cp.zero();
  for (std::size_t t = 0; t < terms; ++t) {
    pardyn::BlockMatrix word = cp.identity();
    const std::size_t len = rng() % (max_word + 1);
    for (std::size_t i = 0; i < len && !letters.empty(); ++i) {
      word = word * letters[rng() % letters.size()];
    }
    out += word * random_complex(rng);
  }
  return out;
}

pardyn::Measure to_measure(const std::vector<Rational>& w) { return pardyn::Measure{w}; }

}  // namespace oracle
