#pragma once

#include <iosfwd>
#include <string>

#include "csslr/config.hpp"
#include "csslr/dataset.hpp"
#include "csslr/selection.hpp"

namespace csslr {

// FNV-1a fingerprint of the dataset's canonical CSV serialization.
std::uint64_t dataset_fingerprint(const Dataset& data);

// Human-readable run report: metadata, final models with coefficients and
// quality measures, and the full step trace. Deterministic for a given run.
void write_run_report(std::ostream& out, const Dataset& data, const SelectionConfig& config,
                      const SelectionResult& result);

// One text line per evaluated candidate.
void write_trace_text(std::ostream& out, const SelectionResult& result);

// One JSON object per line per evaluated candidate; every improvement
// criterion is auditable from the record.
void write_trace_json(std::ostream& out, const SelectionResult& result);

}  // namespace csslr
