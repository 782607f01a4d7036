#pragma once

#include <span>
#include <vector>

#include "tag/core/component.hpp"

namespace tag {

/// Owns every component of one game instance. IDs are dense indices assigned
/// in registration order and survive copies unchanged.
class ComponentRegistry {
 public:
  /// Registers a fresh component. A component that already carries an ID was
  /// registered before and is rejected.
  ComponentId add(Component component);

  /// Registers `contents` and then the container holding them, in order
  /// (contents[0] ends on top). Works for Deck, PartialObservableDeck and Area.
  ComponentId add_container(Component container, std::vector<Component> contents);

  bool contains(ComponentId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < components_.size();
  }
  Component& at(ComponentId id);
  const Component& at(ComponentId id) const;

  template <class T>
  T& get(ComponentId id) { return at(id).as<T>(); }
  template <class T>
  const T& get(ComponentId id) const { return at(id).as<T>(); }

  std::size_t size() const { return components_.size(); }
  std::span<const Component> all() const { return components_; }
  std::span<Component> all() { return components_; }
  void clear() { components_.clear(); }

  bool operator==(const ComponentRegistry&) const = default;

 private:
  std::vector<Component> components_;
};

}  // namespace tag
