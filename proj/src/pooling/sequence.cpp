#include "orbitpool/pooling/sequence.hpp"

#include <algorithm>
#include <cctype>

#include "orbitpool/error.hpp"

namespace orbitpool {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Axis parse_axis(std::string_view token, std::string_view full) {
  if (token == "rot") return Axis::rotation;
  if (token == "scale") return Axis::scale;
  if (token == "trans") return Axis::translation;
  throw ConfigError("pooling sequence \"" + std::string(full) + "\": unknown axis \"" +
                    std::string(token) + "\" (expected rot, scale or trans)");
}

}  // namespace

PoolingSequence::PoolingSequence(std::vector<PoolingStep> steps) : steps_(std::move(steps)) {
  if (steps_.size() > 3) throw ConfigError("pooling sequence: at most 3 steps");
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    for (std::size_t j = i + 1; j < steps_.size(); ++j) {
      if (steps_[i].axis == steps_[j].axis) {
        throw ConfigError("pooling sequence: axis \"" + std::string(axis_token(steps_[i].axis)) +
                          "\" pooled twice");
      }
    }
  }
}

PoolingSequence PoolingSequence::parse(std::string_view text) {
  std::vector<PoolingStep> steps;
  std::string_view rest = trim(text);
  if (rest.empty()) return PoolingSequence();
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view token = trim(rest.substr(0, comma));
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("pooling sequence \"" + std::string(text) + "\": token \"" +
                        std::string(token) + "\" is not moment:axis");
    }
    const auto moment = moment_from_token(trim(token.substr(0, colon)));
    if (!moment) {
      throw ConfigError("pooling sequence \"" + std::string(text) + "\": unknown moment \"" +
                        std::string(token.substr(0, colon)) + "\" (expected A, S or M)");
    }
    steps.push_back({*moment, parse_axis(trim(token.substr(colon + 1)), text)});
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return PoolingSequence(std::move(steps));
}

bool PoolingSequence::consumes(Axis axis) const noexcept {
  return std::any_of(steps_.begin(), steps_.end(),
                     [axis](const PoolingStep& s) { return s.axis == axis; });
}

std::string PoolingSequence::str() const {
  std::string out;
  for (const PoolingStep& s : steps_) {
    if (!out.empty()) out += ',';
    out += moment_token(s.moment);
    out += ':';
    out += axis_token(s.axis);
  }
  return out;
}

std::string PoolingSequence::slug() const {
  if (steps_.empty()) return "raw";
  std::string out;
  for (const PoolingStep& s : steps_) {
    if (!out.empty()) out += '_';
    out += moment_token(s.moment);
    out += '-';
    out += axis_token(s.axis);
  }
  return out;
}

}  // namespace orbitpool
