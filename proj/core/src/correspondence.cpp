#include "pardyn/correspondence.hpp"

#include "pardyn/error.hpp"

namespace pardyn {

PointFunction indicator(std::size_t n, PointId x) {
  PointFunction f(n);
  f.at(x) = Complex(1);
  return f;
}

PointFunction constant_function(std::size_t n, const Complex& c) {
  return PointFunction(n, c);
}

Correspondence::Correspondence(FiniteSystem sys, RankFunction rank)
    : sys_(std::move(sys)), rank_(std::move(rank)) {
  if (rank_.size() != sys_.size()) {
    throw ValidationError("rank function does not match the system");
  }
  for (PointId u = 0; u < sys_.size(); ++u) {
    if (sys_.in_domain(u) != (rank_.values()[u] != 0)) {
      throw ValidationError("rank must be defined exactly on the domain; point '" +
                            sys_.label(u) + "' disagrees");
    }
  }
}

void Correspondence::validate(const Section& xi) const {
  if (xi.fibers.size() != sys_.size()) {
    throw ValidationError("section has " + std::to_string(xi.fibers.size()) +
                          " fibers for " + std::to_string(sys_.size()) + " points");
  }
  for (PointId u = 0; u < sys_.size(); ++u) {
    const std::size_t want = sys_.in_domain(u) ? rank_.at(u) : 0;
    if (xi.fibers[u].size() != want) {
      throw ValidationError("section fiber at '" + sys_.label(u) + "' has length " +
                            std::to_string(xi.fibers[u].size()) + ", rank is " +
                            std::to_string(want));
    }
  }
}

void Correspondence::validate(const PointFunction& f) const {
  if (f.size() != sys_.size()) {
    throw ValidationError("function has " + std::to_string(f.size()) + " values for " +
                          std::to_string(sys_.size()) + " points");
  }
}

Section Correspondence::zero_section() const {
  Section s;
  s.fibers.resize(sys_.size());
  for (PointId u = 0; u < sys_.size(); ++u) {
    if (sys_.in_domain(u)) {
      s.fibers[u].assign(rank_.at(u), Complex());
    }
  }
  return s;
}

Section Correspondence::unit_section(PointId u, std::size_t e) const {
  if (u >= sys_.size() || !sys_.in_domain(u) || e >= rank_.at(u)) {
    throw ValidationError("no unit section (" + std::to_string(u) + ", " + std::to_string(e) +
                          ")");
  }
  Section s = zero_section();
  s.fibers[u][e] = Complex(1);
  return s;
}

std::vector<Section> Correspondence::unit_sections() const {
  std::vector<Section> out;
  for (PointId u = 0; u < sys_.size(); ++u) {
    if (!sys_.in_domain(u)) {
      continue;
    }
    for (std::size_t e = 0; e < rank_.at(u); ++e) {
      out.push_back(unit_section(u, e));
    }
  }
  return out;
}

PointFunction Correspondence::inner_product(const Section& xi, const Section& eta) const {
  validate(xi);
  validate(eta);
  PointFunction out(sys_.size());
  for (PointId u = 0; u < sys_.size(); ++u) {
    for (std::size_t e = 0; e < xi.fibers[u].size(); ++e) {
      out[u] += xi.fibers[u][e].conj() * eta.fibers[u][e];
    }
  }
  return out;
}

Section Correspondence::left_act(const PointFunction& f, const Section& xi) const {
  validate(f);
  validate(xi);
  Section out = xi;
  for (PointId u = 0; u < sys_.size(); ++u) {
    if (const auto& v = sys_.image(u)) {
      for (auto& c : out.fibers[u]) {
        c *= f[*v];
      }
    }
  }
  return out;
}

Section Correspondence::right_act(const Section& xi, const PointFunction& f) const {
  validate(f);
  validate(xi);
  Section out = xi;
  for (PointId u = 0; u < sys_.size(); ++u) {
    for (auto& c : out.fibers[u]) {
      c *= f[u];
    }
  }
  return out;
}

}  // namespace pardyn
