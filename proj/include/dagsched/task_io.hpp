#pragma once

#include "dagsched/dag.hpp"
#include "dagsched/scheduler.hpp"
#include "dagsched/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dagsched {

// DAG file format: JSON object with
//   "nodes":  [{"id": int, "load": number-or-string}, ...]
//   "edges":  [[from, to], ...]
//   "period": optional number-or-string
//   "seed":   optional integer, provenance only
// Loads may be written as strings ("7.5", "15/2") to stay exact.
DagTask read_task(std::istream& in, const Rational& min_load = Rational(1));
DagTask read_task_file(const std::string& path,
                       const Rational& min_load = Rational(1));

void write_task(const DagTask& task, std::ostream& out,
                std::optional<std::uint64_t> seed = std::nullopt);
void write_task_file(const DagTask& task, const std::string& path,
                     std::optional<std::uint64_t> seed = std::nullopt);

// Schedule export: the DAG-format sections plus groups, segmentations and
// extra dependency edges. Exact rationals are emitted as strings.
void write_scheme(const ScheduleScheme& scheme, std::ostream& out);

void write_trace(const SimTrace& trace, std::ostream& out);

}  // namespace dagsched
