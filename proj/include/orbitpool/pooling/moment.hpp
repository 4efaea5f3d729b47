#pragma once

#include <optional>
#include <string_view>

namespace orbitpool {

/// Statistic used to collapse a distribution of responses over an orbit.
enum class Moment { average, max, std_dev };

/// Short grammar token: A, M or S.
constexpr char moment_token(Moment m) noexcept {
  switch (m) {
    case Moment::average: return 'A';
    case Moment::max: return 'M';
    case Moment::std_dev: return 'S';
  }
  return '?';
}

constexpr std::optional<Moment> moment_from_token(std::string_view token) noexcept {
  if (token == "A") return Moment::average;
  if (token == "M") return Moment::max;
  if (token == "S") return Moment::std_dev;
  return std::nullopt;
}

}  // namespace orbitpool
