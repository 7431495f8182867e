#ifndef AMPSIM_TOPIC_HPP
#define AMPSIM_TOPIC_HPP

#include <array>
#include <optional>
#include <string_view>

namespace ampsim {

// Political-spectrum topics, in catalog order.
enum class Topic { FarLeft = 0, Left = 1, Center = 2, Right = 3, FarRight = 4 };

inline constexpr std::size_t kTopicCount = 5;

inline constexpr std::array<Topic, kTopicCount> kAllTopics = {
    Topic::FarLeft, Topic::Left, Topic::Center, Topic::Right, Topic::FarRight};

constexpr std::string_view to_string(Topic t) {
  switch (t) {
    case Topic::FarLeft: return "FarLeft";
    case Topic::Left: return "Left";
    case Topic::Center: return "Center";
    case Topic::Right: return "Right";
    case Topic::FarRight: return "FarRight";
  }
  return "?";
}

inline std::optional<Topic> parse_topic(std::string_view s) {
  for (Topic t : kAllTopics)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Left-right reflection: FarLeft <-> FarRight, Left <-> Right.
constexpr Topic mirror(Topic t) {
  return static_cast<Topic>(kTopicCount - 1 - static_cast<std::size_t>(t));
}

constexpr std::size_t index_of(Topic t) { return static_cast<std::size_t>(t); }

}  // namespace ampsim

#endif  // AMPSIM_TOPIC_HPP
