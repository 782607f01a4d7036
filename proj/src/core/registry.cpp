#include "tag/core/registry.hpp"

#include <string>

#include "tag/core/errors.hpp"

namespace tag {

ComponentId ComponentRegistry::add(Component component) {
  if (component.id != kNoComponent) {
    throw RegistrationError("component '" + component.name + "' already registered with id " +
                            std::to_string(component.id));
  }
  component.id = static_cast<ComponentId>(components_.size());
  components_.push_back(std::move(component));
  return components_.back().id;
}

ComponentId ComponentRegistry::add_container(Component container, std::vector<Component> contents) {
  if (container.id != kNoComponent) {
    throw RegistrationError("component '" + container.name + "' already registered");
  }
  std::vector<ComponentId> ids;
  ids.reserve(contents.size());
  for (auto& c : contents) ids.push_back(add(std::move(c)));

  std::visit(
      [&](auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Deck>) {
          for (ComponentId id : ids) body.add_bottom(id);
        } else if constexpr (std::is_same_v<T, PartialObservableDeck>) {
          for (ComponentId id : ids) body.add_bottom(id, body.default_visibility());
        } else if constexpr (std::is_same_v<T, Area>) {
          body.contents.insert(body.contents.end(), ids.begin(), ids.end());
        } else {
          throw RegistrationError("component '" + container.name + "' cannot hold other components");
        }
      },
      container.body);
  return add(std::move(container));
}

Component& ComponentRegistry::at(ComponentId id) {
  if (!contains(id)) throw NotFoundError("unknown component id " + std::to_string(id));
  return components_[static_cast<std::size_t>(id)];
}

const Component& ComponentRegistry::at(ComponentId id) const {
  if (!contains(id)) throw NotFoundError("unknown component id " + std::to_string(id));
  return components_[static_cast<std::size_t>(id)];
}

}  // namespace tag
