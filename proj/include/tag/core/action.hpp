#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <tuple>
#include <typeinfo>
#include <utility>

namespace tag {

class GameState;

/// A move. Actions hold component IDs and plain values only, never references
/// into a state, so the same action applies to any copy of that state.
class Action {
 public:
  virtual ~Action() = default;

  virtual void execute(GameState& state) const = 0;
  /// Public description: never mentions information hidden from other players.
  virtual std::string to_string() const = 0;
  virtual bool equals(const Action& other) const = 0;
  virtual std::size_t hash() const = 0;
};

/// Actions are immutable once built, so sharing them is as good as copying.
using ActionPtr = std::shared_ptr<const Action>;

inline bool operator==(const Action& a, const Action& b) { return a.equals(b); }

/// Supplies equals() and hash() from the derived type's `key()`, a tuple of
/// every field that identifies the action.
template <class Derived>
class ActionBase : public Action {
 public:
  bool equals(const Action& other) const final {
    if (typeid(other) != typeid(Derived)) return false;
    return static_cast<const Derived&>(*this).key() == static_cast<const Derived&>(other).key();
  }

  std::size_t hash() const final {
    std::size_t h = typeid(Derived).hash_code();
    std::apply([&h](const auto&... field) { ((h = h * 1000003u ^ static_cast<std::size_t>(field)), ...); },
               static_cast<const Derived&>(*this).key());
    return h;
  }
};

template <class T, class... Args>
ActionPtr make_action(Args&&... args) {
  return std::make_shared<const T>(std::forward<Args>(args)...);
}

}  // namespace tag
