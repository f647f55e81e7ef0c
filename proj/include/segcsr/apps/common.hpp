#pragma once

#include <vector>

#include "segcsr/engine.hpp"

namespace segcsr::apps {

/// Wall time of one application round, split by engine phase.
struct IterationTimes {
  double segment_ms = 0;
  double merge_ms = 0;
  double vertex_ms = 0;

  void add_edge_map(const PhaseTimes& t) {
    segment_ms += t.segment_ms;
    merge_ms += t.merge_ms;
  }
};

}  // namespace segcsr::apps
