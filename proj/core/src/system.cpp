#include "pardyn/system.hpp"

#include "pardyn/error.hpp"

#include <unordered_set>

namespace pardyn {

PointSet make_point_set(std::size_t size, const std::vector<PointId>& members) {
  PointSet s(size);
  for (PointId x : members) {
    s.set(x);
  }
  return s;
}

std::vector<PointId> members(const PointSet& s) {
  std::vector<PointId> out;
  out.reserve(s.count());
  for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x)) {
    out.push_back(x);
  }
  return out;
}

namespace {

std::shared_ptr<const std::vector<std::string>> default_labels(
    std::size_t n, std::vector<std::string> given) {
  if (given.empty() && n > 0) {
    given.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      given.push_back(std::to_string(i));
    }
  }
  return std::make_shared<const std::vector<std::string>>(std::move(given));
}

}  // namespace

FiniteSystem::FiniteSystem(std::vector<std::optional<PointId>> image,
                           std::vector<std::string> labels)
    : image_(std::move(image)) {
  if (!labels.empty() && labels.size() != image_.size()) {
    throw ValidationError("label count " + std::to_string(labels.size()) +
                          " does not match point count " +
                          std::to_string(image_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw ValidationError("duplicate point name '" + l + "'");
    }
  }
  labels_ = default_labels(image_.size(), std::move(labels));
  validate_and_index();
}

FiniteSystem::FiniteSystem(std::vector<std::optional<PointId>> image,
                           std::shared_ptr<const std::vector<std::string>> labels)
    : image_(std::move(image)), labels_(std::move(labels)) {
  validate_and_index();
}

FiniteSystem FiniteSystem::with_labels_of(const FiniteSystem& like,
                                          std::vector<std::optional<PointId>> image) {
  if (image.size() != like.size()) {
    throw ValidationError("point count mismatch when sharing labels");
  }
  return FiniteSystem(std::move(image), like.labels_);
}

void FiniteSystem::validate_and_index() {
  const std::size_t n = image_.size();
  preimage_.assign(n, std::nullopt);
  for (PointId x = 0; x < n; ++x) {
    if (!image_[x]) {
      continue;
    }
    const PointId y = *image_[x];
    if (y >= n) {
      throw ValidationError("image of point " + std::to_string(x) + " is out of range");
    }
    if (preimage_[y]) {
      throw ValidationError("theta is not injective: '" + (*labels_)[*preimage_[y]] +
                            "' and '" + (*labels_)[x] + "' both map to '" +
                            (*labels_)[y] + "'");
    }
    preimage_[y] = x;
  }
}

PointSet FiniteSystem::domain() const {
  PointSet s(size());
  for (PointId x = 0; x < size(); ++x) {
    if (image_[x]) {
      s.set(x);
    }
  }
  return s;
}

PointSet FiniteSystem::range() const {
  PointSet s(size());
  for (PointId y = 0; y < size(); ++y) {
    if (preimage_[y]) {
      s.set(y);
    }
  }
  return s;
}

PointSet FiniteSystem::all_points() const {
  PointSet s(size());
  s.set();
  return s;
}

std::optional<PointId> FiniteSystem::find(std::string_view label) const {
  for (PointId x = 0; x < labels_->size(); ++x) {
    if ((*labels_)[x] == label) {
      return x;
    }
  }
  return std::nullopt;
}

PointId FiniteSystem::id_of(std::string_view label) const {
  if (auto x = find(label)) {
    return *x;
  }
  throw ValidationError("unknown point '" + std::string(label) + "'");
}

std::optional<PointId> FiniteSystem::iterate(PointId x, long n) const {
  std::optional<PointId> cur = x;
  for (; n > 0 && cur; --n) {
    cur = image_[*cur];
  }
  for (; n < 0 && cur; ++n) {
    cur = preimage_[*cur];
  }
  return cur;
}

PointSet forward_image(const FiniteSystem& sys, const PointSet& s) {
  PointSet out(sys.size());
  for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x)) {
    if (const auto& y = sys.image(x)) {
      out.set(*y);
    }
  }
  return out;
}

PointSet backward_image(const FiniteSystem& sys, const PointSet& s) {
  PointSet out(sys.size());
  for (auto y = s.find_first(); y != PointSet::npos; y = s.find_next(y)) {
    if (const auto& x = sys.preimage(y)) {
      out.set(*x);
    }
  }
  return out;
}

}  // namespace pardyn
