#pragma once

// Finite partial dynamical systems: a finite point set with an injective
// partial self-map theta : U -> V. Every subset of a finite Hausdorff space
// is open and closed, so topology plays no further role.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pardyn {

using PointId = std::size_t;
using PointSet = boost::dynamic_bitset<>;

/// Set of the given points inside a universe of `size` points.
PointSet make_point_set(std::size_t size, const std::vector<PointId>& members = {});
/// Members in increasing order.
std::vector<PointId> members(const PointSet& s);

class FiniteSystem {
public:
  FiniteSystem() = default;

  /// `image[x]` is theta(x) or nullopt when x is outside the domain.
  /// Throws ValidationError when an image is out of range or theta is not
  /// injective. Labels default to "0", "1", ...
  explicit FiniteSystem(std::vector<std::optional<PointId>> image,
                        std::vector<std::string> labels = {});

  /// Shares the labels of `like` without copying them.
  static FiniteSystem with_labels_of(const FiniteSystem& like,
                                     std::vector<std::optional<PointId>> image);

  std::size_t size() const { return image_.size(); }
  bool empty() const { return image_.empty(); }

  const std::optional<PointId>& image(PointId x) const { return image_[x]; }
  const std::optional<PointId>& preimage(PointId y) const { return preimage_[y]; }
  const std::vector<std::optional<PointId>>& images() const { return image_; }

  bool in_domain(PointId x) const { return image_[x].has_value(); }
  bool in_range(PointId y) const { return preimage_[y].has_value(); }

  /// U = domain(theta) and V = range(theta).
  PointSet domain() const;
  PointSet range() const;
  PointSet all_points() const;

  const std::string& label(PointId x) const { return (*labels_)[x]; }
  const std::vector<std::string>& labels() const { return *labels_; }
  /// Throws ValidationError naming the label when it is unknown.
  PointId id_of(std::string_view label) const;
  std::optional<PointId> find(std::string_view label) const;

  /// theta applied n times (n may be negative); nullopt when undefined.
  std::optional<PointId> iterate(PointId x, long n) const;

  /// Same points and same map; labels are not compared.
  friend bool operator==(const FiniteSystem& a, const FiniteSystem& b) {
    return a.image_ == b.image_;
  }

private:
  FiniteSystem(std::vector<std::optional<PointId>> image,
               std::shared_ptr<const std::vector<std::string>> labels);
  void validate_and_index();

  std::vector<std::optional<PointId>> image_;
  std::vector<std::optional<PointId>> preimage_;
  std::shared_ptr<const std::vector<std::string>> labels_ =
      std::make_shared<const std::vector<std::string>>();
};

/// theta(S ∩ U).
PointSet forward_image(const FiniteSystem& sys, const PointSet& s);
/// theta^{-1}(S ∩ V).
PointSet backward_image(const FiniteSystem& sys, const PointSet& s);

}  // namespace pardyn
