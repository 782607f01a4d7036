#include "tag/core/conceal.hpp"

#include <vector>

namespace tag {

void conceal_and_redraw(ComponentRegistry& registry, std::span<const ComponentId> decks, int player, Rng& rng) {
  struct Slot {
    ComponentId deck;
    std::size_t index;
  };
  std::vector<Slot> slots;
  std::vector<ComponentId> pool;
  for (ComponentId deck_id : decks) {
    const auto& deck = registry.get<PartialObservableDeck>(deck_id);
    for (std::size_t i = 0; i < deck.size(); ++i) {
      if (!deck.is_visible(i, player)) {
        slots.push_back({deck_id, i});
        pool.push_back(deck.at(i));
      }
    }
  }
  rng.shuffle(std::span<ComponentId>(pool));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    registry.get<PartialObservableDeck>(slots[k].deck).set(slots[k].index, pool[k]);
  }
}

}  // namespace tag
