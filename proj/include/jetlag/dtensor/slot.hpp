#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "jetlag/error.hpp"

namespace jetlag {

/// Index slot of a d-tensor: temporal, spatial (horizontal) or vertical, each
/// contravariant (Up) or covariant (Down). Vertical slots carry the implicit
/// temporal index of y^i, so VertUp transforms like y^i.
enum class SlotKind : std::uint8_t { TimeUp, TimeDown, SpaceUp, SpaceDown, VertUp, VertDown };

enum class SlotFamily : std::uint8_t { Time, Space, Vert };

constexpr bool is_upper(SlotKind k) {
  return k == SlotKind::TimeUp || k == SlotKind::SpaceUp || k == SlotKind::VertUp;
}

constexpr SlotFamily family(SlotKind k) {
  switch (k) {
    case SlotKind::TimeUp:
    case SlotKind::TimeDown: return SlotFamily::Time;
    case SlotKind::SpaceUp:
    case SlotKind::SpaceDown: return SlotFamily::Space;
    default: return SlotFamily::Vert;
  }
}

/// Time slots have extent 1 (dim R = 1); the others have extent n.
constexpr int extent(SlotKind k, int n) { return family(k) == SlotFamily::Time ? 1 : n; }

constexpr SlotKind lowered(SlotKind k) {
  switch (k) {
    case SlotKind::TimeUp: return SlotKind::TimeDown;
    case SlotKind::SpaceUp: return SlotKind::SpaceDown;
    case SlotKind::VertUp: return SlotKind::VertDown;
    default: return k;
  }
}

constexpr SlotKind raised(SlotKind k) {
  switch (k) {
    case SlotKind::TimeDown: return SlotKind::TimeUp;
    case SlotKind::SpaceDown: return SlotKind::SpaceUp;
    case SlotKind::VertDown: return SlotKind::VertUp;
    default: return k;
  }
}

constexpr std::string_view slot_name(SlotKind k) {
  switch (k) {
    case SlotKind::TimeUp: return "TimeUp";
    case SlotKind::TimeDown: return "TimeDown";
    case SlotKind::SpaceUp: return "SpaceUp";
    case SlotKind::SpaceDown: return "SpaceDown";
    case SlotKind::VertUp: return "VertUp";
    case SlotKind::VertDown: return "VertDown";
  }
  return "?";
}

inline SlotKind parse_slot(std::string_view s) {
  for (auto k : {SlotKind::TimeUp, SlotKind::TimeDown, SlotKind::SpaceUp, SlotKind::SpaceDown, SlotKind::VertUp,
                 SlotKind::VertDown})
    if (slot_name(k) == s) return k;
  throw SignatureError("unknown slot kind '" + std::string(s) + "'");
}

}  // namespace jetlag
