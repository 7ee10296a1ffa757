#include "pardyn/dynamics.hpp"

#include "pardyn/error.hpp"

#include <stdexcept>
#include <string>

namespace pardyn {

DomainTable::DomainTable(std::size_t horizon, std::vector<PointSet> negative,
                         std::vector<PointSet> positive, bool stabilized)
    : horizon_(horizon),
      negative_(std::move(negative)),
      positive_(std::move(positive)),
      stabilized_(stabilized) {}

const PointSet& DomainTable::at(long n) const {
  const auto k = static_cast<std::size_t>(n < 0 ? -n : n);
  if (k > horizon_) {
    throw std::out_of_range("domain index " + std::to_string(n) + " beyond horizon " +
                            std::to_string(horizon_));
  }
  return n < 0 ? negative_[k] : positive_[k];
}

DomainTable compute_domains(const FiniteSystem& sys, std::size_t horizon) {
  if (horizon == 0) {
    horizon = std::max<std::size_t>(sys.size(), 1);
  }
  std::vector<PointSet> neg{sys.all_points()};
  std::vector<PointSet> pos{sys.all_points()};
  neg.reserve(horizon + 2);
  pos.reserve(horizon + 2);
  // One step past the horizon decides stabilization. Once a step repeats,
  // the remaining tail is copied rather than recomputed.
  bool neg_stable = false;
  bool pos_stable = false;
  for (std::size_t k = 1; k <= horizon + 1; ++k) {
    if (neg_stable) {
      neg.push_back(neg.back());
    } else {
      neg.push_back(backward_image(sys, neg.back()));
      neg_stable = neg[k] == neg[k - 1];
    }
    if (pos_stable) {
      pos.push_back(pos.back());
    } else {
      pos.push_back(forward_image(sys, pos.back()));
      pos_stable = pos[k] == pos[k - 1];
    }
  }
  const bool stabilized = neg[horizon] == neg[horizon + 1] && pos[horizon] == pos[horizon + 1];
  neg.pop_back();
  pos.pop_back();
  return DomainTable(horizon, std::move(neg), std::move(pos), stabilized);
}

PointSet forward_orbit(const FiniteSystem& sys, PointId x) {
  PointSet s(sys.size());
  std::optional<PointId> cur = x;
  while (cur && !s.test(*cur)) {
    s.set(*cur);
    cur = sys.image(*cur);
  }
  return s;
}

PointSet backward_orbit(const FiniteSystem& sys, PointId x) {
  PointSet s(sys.size());
  std::optional<PointId> cur = x;
  while (cur && !s.test(*cur)) {
    s.set(*cur);
    cur = sys.preimage(*cur);
  }
  return s;
}

PointSet orbit(const FiniteSystem& sys, PointId x) {
  if (x >= sys.size()) {
    throw ValidationError("unknown point id " + std::to_string(x));
  }
  return forward_orbit(sys, x) | backward_orbit(sys, x);
}

const char* to_string(OrbitType t) {
  switch (t) {
    case OrbitType::Fin:
      return "Fin";
    case OrbitType::Plus:
      return "Plus";
    case OrbitType::Minus:
      return "Minus";
    case OrbitType::Glob:
      return "Glob";
  }
  return "?";
}

PointSet OrbitDecomposition::points_of(OrbitType t) const {
  PointSet s(labels.size());
  for (PointId x = 0; x < labels.size(); ++x) {
    if (labels[x] == t) {
      s.set(x);
    }
  }
  return s;
}

OrbitDecomposition orbit_decomposition(const FiniteSystem& sys) {
  // With a stabilized table, membership in every D_n (n > 0) is membership
  // in D_horizon.
  const DomainTable domains = compute_domains(sys);
  const auto h = static_cast<long>(domains.horizon());
  const PointSet& forward_all = domains.at(-h);
  const PointSet& backward_all = domains.at(h);
  OrbitDecomposition out;
  out.labels.resize(sys.size(), OrbitType::Fin);
  for (PointId x = 0; x < sys.size(); ++x) {
    const bool fwd = forward_all.test(x);
    const bool bwd = backward_all.test(x);
    if (fwd && bwd) {
      out.labels[x] = OrbitType::Glob;
    } else if (fwd) {
      out.labels[x] = OrbitType::Plus;
    } else if (bwd) {
      out.labels[x] = OrbitType::Minus;
    }
  }
  return out;
}

ChainDecomposition chain_decomposition(const FiniteSystem& sys) {
  ChainDecomposition out;
  std::vector<bool> seen(sys.size(), false);
  for (PointId x = 0; x < sys.size(); ++x) {
    if (sys.in_range(x)) {
      continue;
    }
    std::vector<PointId> chain;
    std::optional<PointId> cur = x;
    while (cur) {
      chain.push_back(*cur);
      seen[*cur] = true;
      cur = sys.image(*cur);
    }
    out.chains.push_back(std::move(chain));
  }
  for (PointId x = 0; x < sys.size(); ++x) {
    if (seen[x]) {
      continue;
    }
    std::vector<PointId> cycle;
    PointId cur = x;
    do {
      cycle.push_back(cur);
      seen[cur] = true;
      cur = *sys.image(cur);
    } while (cur != x);
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

bool is_invariant(const FiniteSystem& sys, const PointSet& y) {
  return forward_image(sys, y).is_subset_of(y) && backward_image(sys, y).is_subset_of(y);
}

bool is_minimal(const FiniteSystem& sys) {
  return sys.empty() || orbit(sys, 0).all();
}

bool is_free(const FiniteSystem& sys) {
  return chain_decomposition(sys).cycles.empty();
}

namespace {

template <typename Step>
PointSet closure(const FiniteSystem& sys, PointSet s, Step step) {
  for (;;) {
    PointSet next = s | step(sys, s);
    if (next == s) {
      return s;
    }
    s = std::move(next);
  }
}

PointSet both_directions(const FiniteSystem& sys, const PointSet& s) {
  return forward_image(sys, s) | backward_image(sys, s);
}

PointSet singleton(std::size_t n, PointId x) {
  PointSet s(n);
  s.set(x);
  return s;
}

}  // namespace

PointSet forward_closure(const FiniteSystem& sys, const PointSet& seed) {
  return closure(sys, seed, forward_image);
}

PointSet backward_closure(const FiniteSystem& sys, const PointSet& seed) {
  return closure(sys, seed, backward_image);
}

PointSet invariant_closure(const FiniteSystem& sys, const PointSet& seed) {
  return closure(sys, seed, both_directions);
}

MinimalityReport minimality_report(const FiniteSystem& sys) {
  const std::size_t n = sys.size();
  const PointSet glob = orbit_decomposition(sys).points_of(OrbitType::Glob);
  MinimalityReport r{};

  // (1): the smallest invariant set around any point must be everything,
  // otherwise it is a proper nonempty closed invariant subset.
  r.no_proper_invariant_subset = true;
  for (PointId x = 0; x < n && r.no_proper_invariant_subset; ++x) {
    r.no_proper_invariant_subset = invariant_closure(sys, singleton(n, x)).all();
  }

  r.all_orbits_dense = true;
  for (PointId x = 0; x < n && r.all_orbits_dense; ++x) {
    r.all_orbits_dense = orbit(sys, x).all();
  }

  // (6)-(8): a (forward/backward) invariant Y meeting D_gl contains the
  // corresponding closure of one of its D_gl points, so it suffices to test
  // those closures.
  r.invariant_meeting_glob_trivial = true;
  r.forward_invariant_meeting_glob_trivial = true;
  r.backward_invariant_meeting_glob_trivial = true;
  for (PointId x : members(glob)) {
    const PointSet seed = singleton(n, x);
    r.invariant_meeting_glob_trivial &= invariant_closure(sys, seed).all();
    r.forward_invariant_meeting_glob_trivial &= forward_closure(sys, seed).all();
    r.backward_invariant_meeting_glob_trivial &= backward_closure(sys, seed).all();
  }

  if (glob.any()) {
    bool orbits_dense = true;
    bool fwd_dense = true;
    bool bwd_dense = true;
    for (PointId x : members(glob)) {
      orbits_dense &= orbit(sys, x).all();
      fwd_dense &= forward_orbit(sys, x).all();
      bwd_dense &= backward_orbit(sys, x).all();
    }
    r.glob_orbits_dense = orbits_dense;
    r.glob_forward_dense = fwd_dense;
    r.glob_backward_dense = bwd_dense;
  }
  return r;
}

FiniteSystem restrict_domain(const FiniteSystem& sys, const PointSet& w) {
  if (w.size() != sys.size()) {
    throw ValidationError("restriction set has the wrong universe size");
  }
  std::vector<std::optional<PointId>> image(sys.size());
  for (PointId x = 0; x < sys.size(); ++x) {
    if (!w.test(x)) {
      continue;
    }
    if (!sys.in_domain(x)) {
      throw ValidationError("point '" + sys.label(x) + "' is not in the domain of theta");
    }
    image[x] = sys.image(x);
  }
  return FiniteSystem::with_labels_of(sys, std::move(image));
}

FiniteSystem restrict_to_invariant(const FiniteSystem& sys, const PointSet& y) {
  if (y.size() != sys.size()) {
    throw ValidationError("subset has the wrong universe size");
  }
  if (!is_invariant(sys, y)) {
    throw ValidationError("subset is not theta-invariant");
  }
  const auto pts = members(y);
  std::vector<std::size_t> new_id(sys.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    new_id[pts[i]] = i;
  }
  std::vector<std::optional<PointId>> image(pts.size());
  std::vector<std::string> labels;
  labels.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (const auto& t = sys.image(pts[i])) {
      image[i] = new_id[*t];
    }
    labels.push_back(sys.label(pts[i]));
  }
  return FiniteSystem(std::move(image), std::move(labels));
}

std::vector<PointSet> orbits(const FiniteSystem& sys) {
  std::vector<PointSet> out;
  PointSet covered(sys.size());
  for (PointId x = 0; x < sys.size(); ++x) {
    if (covered.test(x)) {
      continue;
    }
    PointSet o = orbit(sys, x);
    covered |= o;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<OrbitComponent> orbit_space(const FiniteSystem& sys) {
  std::vector<OrbitComponent> out;
  for (const PointSet& o : orbits(sys)) {
    out.push_back({members(o), restrict_to_invariant(sys, o)});
  }
  return out;
}

}  // namespace pardyn
