#pragma once

// Deterministic constructors for example systems and exhaustive enumerators.

#include "pardyn/rank.hpp"
#include "pardyn/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pardyn {

/// x1 -> x2 -> ... -> xN.
FiniteSystem make_chain(std::size_t n);
/// x0 -> x1 -> ... -> x{N-1} -> x0.
FiniteSystem make_cycle(std::size_t n);
/// Points "0".."q-1", x -> x + p mod q, with `break_set` removed from the
/// domain. Requires q >= 1 and gcd(p, q) = 1.
FiniteSystem make_rotation(std::size_t q, std::size_t p,
                           const std::vector<std::size_t>& break_set = {});
/// Points of part i are relabelled "i.<label>" when there is more than one part.
FiniteSystem disjoint_union(const std::vector<FiniteSystem>& parts);
/// Random partial injection from a seeded 64-bit Mersenne twister.
FiniteSystem make_random(std::size_t n, std::uint64_t seed);

enum class SystemKind : std::uint8_t { Chain, Cycle, DisjointUnion, Rotation, Random };

struct SystemSpec {
  SystemKind kind = SystemKind::Chain;
  std::size_t size = 0;       // chain, cycle, random
  std::size_t modulus = 0;    // rotation q
  std::size_t step = 0;       // rotation p
  std::vector<std::size_t> break_set;
  std::uint64_t seed = 0;
  std::vector<SystemSpec> parts;  // disjoint union
  std::optional<std::uint32_t> rank;
};

struct GeneratedSystem {
  FiniteSystem system;
  std::optional<RankFunction> rank;
};

/// Throws ValidationError on invalid parameters (size 0, rank 0, gcd != 1,
/// break point out of range).
GeneratedSystem make(const SystemSpec& spec);

/// Text form: "chain:N", "cycle:N", "rotation:Q:P[:b1,b2,...]",
/// "random:N[:SEED]", parts joined by '+' for a disjoint union, and an
/// optional "@D" suffix for a constant rank. `default_seed` is used when a
/// random spec has no explicit seed.
SystemSpec parse_spec(std::string_view text, std::uint64_t default_seed = 0);

/// Number of partial injective self-maps of an n-set: sum_k C(n,k)^2 k!.
std::uint64_t count_partial_injections(std::size_t n);

inline constexpr std::size_t kMaxEnumerationSize = 8;

/// Every partial injection of {0..n-1} exactly once, in lexicographic order
/// of the image codes (undefined < 0 < 1 < ...).
class PartialInjections {
public:
  /// Throws ValidationError for n > kMaxEnumerationSize.
  explicit PartialInjections(std::size_t n);

  class iterator {
  public:
    using value_type = std::vector<std::optional<PointId>>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const value_type& operator*() const { return current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

  private:
    friend class PartialInjections;
    explicit iterator(std::size_t n);

    std::vector<long> code_;
    std::vector<bool> used_;
    value_type current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(n_); }
  iterator end() const { return {}; }

private:
  std::size_t n_;
};

/// Every permutation of {0..n-1} in lexicographic order, as image maps.
std::vector<std::vector<std::optional<PointId>>> enumerate_permutations(std::size_t n);

}  // namespace pardyn
