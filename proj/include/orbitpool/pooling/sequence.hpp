#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orbitpool/core/tensor.hpp"
#include "orbitpool/pooling/moment.hpp"

namespace orbitpool {

struct PoolingStep {
  Moment moment;
  Axis axis;

  friend bool operator==(const PoolingStep&, const PoolingStep&) = default;
};

/// Ordered moment poolings. List order is application order: the first step
/// is the innermost reduction. Axes are pairwise distinct.
class PoolingSequence {
 public:
  PoolingSequence() = default;
  explicit PoolingSequence(std::vector<PoolingStep> steps);

  /// Grammar: comma-separated `moment:axis` tokens, moment in {A, S, M},
  /// axis in {rot, scale, trans}. Empty (or blank) text is the empty
  /// sequence. Throws ConfigError.
  static PoolingSequence parse(std::string_view text);

  const std::vector<PoolingStep>& steps() const noexcept { return steps_; }
  bool empty() const noexcept { return steps_.empty(); }
  bool consumes(Axis axis) const noexcept;

  /// Canonical grammar text, e.g. "A:scale,S:trans,M:rot"; "" when empty.
  std::string str() const;
  /// File-name friendly form, e.g. "A-scale_S-trans_M-rot"; "raw" when empty.
  std::string slug() const;

  friend bool operator==(const PoolingSequence&, const PoolingSequence&) = default;

 private:
  std::vector<PoolingStep> steps_;
};

}  // namespace orbitpool
