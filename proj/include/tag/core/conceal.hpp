#pragma once

#include <span>

#include "tag/core/registry.hpp"
#include "tag/core/rng.hpp"

namespace tag {

/// Returns every element of `decks` that `player` cannot see to one pool,
/// shuffles it, and deals it back into the same slots. Visible elements and
/// slot visibility are untouched, so deck sizes are preserved.
void conceal_and_redraw(ComponentRegistry& registry, std::span<const ComponentId> decks, int player, Rng& rng);

}  // namespace tag
