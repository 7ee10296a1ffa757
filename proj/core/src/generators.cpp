#include "pardyn/generators.hpp"

#include "pardyn/error.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

namespace pardyn {

FiniteSystem make_chain(std::size_t n) {
  if (n == 0) {
    throw ValidationError("chain size must be positive");
  }
  std::vector<std::optional<PointId>> image(n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) {
      image[i] = i + 1;
    }
    labels.push_back("x" + std::to_string(i + 1));
  }
  return FiniteSystem(std::move(image), std::move(labels));
}

FiniteSystem make_cycle(std::size_t n) {
  if (n == 0) {
    throw ValidationError("cycle size must be positive");
  }
  std::vector<std::optional<PointId>> image(n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    image[i] = (i + 1) % n;
    labels.push_back("x" + std::to_string(i));
  }
  return FiniteSystem(std::move(image), std::move(labels));
}

FiniteSystem make_rotation(std::size_t q, std::size_t p, const std::vector<std::size_t>& break_set) {
  if (q == 0) {
    throw ValidationError("rotation modulus must be positive");
  }
  if (std::gcd(p, q) != 1) {
    throw ValidationError("rotation step " + std::to_string(p) + " is not coprime to " +
                          std::to_string(q));
  }
  std::vector<std::optional<PointId>> image(q);
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < q; ++x) {
    image[x] = (x + p) % q;
    labels.push_back(std::to_string(x));
  }
  for (std::size_t b : break_set) {
    if (b >= q) {
      throw ValidationError("break point " + std::to_string(b) + " is outside Z/" +
                            std::to_string(q));
    }
    image[b].reset();
  }
  return FiniteSystem(std::move(image), std::move(labels));
}

FiniteSystem disjoint_union(const std::vector<FiniteSystem>& parts) {
  std::vector<std::optional<PointId>> image;
  std::vector<std::string> labels;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const FiniteSystem& part = parts[i];
    for (PointId x = 0; x < part.size(); ++x) {
      if (const auto& y = part.image(x)) {
        image.emplace_back(*y + offset);
      } else {
        image.emplace_back();
      }
      labels.push_back(parts.size() > 1 ? std::to_string(i) + "." + part.label(x)
                                        : part.label(x));
    }
    offset += part.size();
  }
  return FiniteSystem(std::move(image), std::move(labels));
}

FiniteSystem make_random(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw ValidationError("random system size must be positive");
  }
  // Raw engine output only: distribution objects are not portable across
  // standard libraries, the engine sequence is.
  std::mt19937_64 rng(seed);
  std::vector<PointId> perm(n);
  std::iota(perm.begin(), perm.end(), PointId{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng() % (i + 1)]);
  }
  std::vector<std::optional<PointId>> image(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rng() % 4 != 0) {
      image[x] = perm[x];
    }
  }
  return FiniteSystem(std::move(image));
}

GeneratedSystem make(const SystemSpec& spec) {
  if (spec.rank && *spec.rank == 0) {
    throw ValidationError("rank must be at least 1");
  }
  GeneratedSystem out;
  switch (spec.kind) {
    case SystemKind::Chain:
      out.system = make_chain(spec.size);
      break;
    case SystemKind::Cycle:
      out.system = make_cycle(spec.size);
      break;
    case SystemKind::Rotation:
      out.system = make_rotation(spec.modulus, spec.step, spec.break_set);
      break;
    case SystemKind::Random:
      out.system = make_random(spec.size, spec.seed);
      break;
    case SystemKind::DisjointUnion: {
      if (spec.parts.empty()) {
        throw ValidationError("disjoint union needs at least one part");
      }
      std::vector<FiniteSystem> parts;
      for (const auto& p : spec.parts) {
        parts.push_back(make(p).system);
      }
      out.system = disjoint_union(parts);
      break;
    }
  }
  if (spec.rank) {
    out.rank = RankFunction::constant(out.system, *spec.rank);
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) {
      return out;
    }
    s.remove_prefix(pos + 1);
  }
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

SystemSpec parse_single(std::string_view text, std::uint64_t default_seed) {
  const auto fields = split(text, ':');
  const std::string_view kind = fields[0];
  auto require_fields = [&](std::size_t lo, std::size_t hi) {
    if (fields.size() < lo || fields.size() > hi) {
      throw ValidationError("malformed system spec '" + std::string(text) + "'");
    }
  };
  SystemSpec spec;
  if (kind == "chain" || kind == "cycle") {
    require_fields(2, 2);
    spec.kind = kind == "chain" ? SystemKind::Chain : SystemKind::Cycle;
    spec.size = parse_number<std::size_t>(fields[1], "size");
  } else if (kind == "rotation") {
    require_fields(3, 4);
    spec.kind = SystemKind::Rotation;
    spec.modulus = parse_number<std::size_t>(fields[1], "modulus");
    spec.step = parse_number<std::size_t>(fields[2], "step");
    if (fields.size() == 4 && !fields[3].empty()) {
      for (auto b : split(fields[3], ',')) {
        spec.break_set.push_back(parse_number<std::size_t>(b, "break point"));
      }
    }
  } else if (kind == "random") {
    require_fields(2, 3);
    spec.kind = SystemKind::Random;
    spec.size = parse_number<std::size_t>(fields[1], "size");
    spec.seed = fields.size() == 3 ? parse_number<std::uint64_t>(fields[2], "seed") : default_seed;
  } else {
    throw ValidationError("unknown system kind '" + std::string(kind) + "'");
  }
  return spec;
}

}  // namespace

SystemSpec parse_spec(std::string_view text, std::uint64_t default_seed) {
  std::optional<std::uint32_t> rank;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    rank = parse_number<std::uint32_t>(text.substr(at + 1), "rank");
    text = text.substr(0, at);
  }
  const auto parts = split(text, '+');
  SystemSpec spec;
  if (parts.size() == 1) {
    spec = parse_single(parts[0], default_seed);
  } else {
    spec.kind = SystemKind::DisjointUnion;
    for (auto p : parts) {
      spec.parts.push_back(parse_single(p, default_seed));
    }
  }
  spec.rank = rank;
  return spec;
}

std::uint64_t count_partial_injections(std::size_t n) {
  // sum_k C(n,k)^2 k!
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    std::uint64_t binom = 1;
    for (std::size_t i = 0; i < k; ++i) {
      binom = binom * (n - i) / (i + 1);
    }
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= k; ++i) {
      fact *= i;
    }
    total += binom * binom * fact;
  }
  return total;
}

PartialInjections::PartialInjections(std::size_t n) : n_(n) {
  if (n > kMaxEnumerationSize) {
    throw ValidationError("enumeration size " + std::to_string(n) + " exceeds the limit of " +
                          std::to_string(kMaxEnumerationSize));
  }
}

PartialInjections::iterator::iterator(std::size_t n)
    : code_(n, -1), used_(n, false), current_(n), done_(false) {}

PartialInjections::iterator& PartialInjections::iterator::operator++() {
  const auto n = static_cast<long>(code_.size());
  for (long i = n - 1; i >= 0; --i) {
    long& c = code_[static_cast<std::size_t>(i)];
    if (c >= 0) {
      used_[static_cast<std::size_t>(c)] = false;
    }
    long next = c + 1;
    while (next < n && used_[static_cast<std::size_t>(next)]) {
      ++next;
    }
    if (next < n) {
      c = next;
      used_[static_cast<std::size_t>(next)] = true;
      for (long j = i + 1; j < n; ++j) {
        code_[static_cast<std::size_t>(j)] = -1;
      }
      for (std::size_t j = 0; j < code_.size(); ++j) {
        current_[j] = code_[j] < 0 ? std::nullopt
                                   : std::optional<PointId>(static_cast<PointId>(code_[j]));
      }
      return *this;
    }
    c = -1;
  }
  done_ = true;
  return *this;
}

std::vector<std::vector<std::optional<PointId>>> enumerate_permutations(std::size_t n) {
  if (n > kMaxEnumerationSize) {
    throw ValidationError("enumeration size exceeds the limit");
  }
  std::vector<PointId> perm(n);
  std::iota(perm.begin(), perm.end(), PointId{0});
  std::vector<std::vector<std::optional<PointId>>> out;
  do {
    out.emplace_back(perm.begin(), perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace pardyn
