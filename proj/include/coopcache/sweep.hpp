#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coopcache/analysis.hpp"

namespace coopcache {

struct SweepConfig {
  int files = 0;
  int users = 0;
  int alpha_max = 1;
  // Extra envelope-only rows between consecutive grid points.
  int samples_between = 0;
};

struct SweepRow {
  Rational cache;
  DelayReport report;
};

std::vector<SweepRow> sweep(const SweepConfig& config, unsigned threads = 1);

// Header: the 15 decimal columns followed by an exact "p/q" column for each
// rational-valued one (suffix _exact). Empty cells for undefined values.
std::string csv_header();
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Worker count from COOPCACHE_THREADS, defaulting to hardware concurrency.
unsigned configured_threads();

}  // namespace coopcache
