#pragma once

#include <cstdint>
#include <vector>

#include "opfc/deferred_multiset.hpp"
#include "opfc/weights.hpp"

namespace opfc {

enum class GdmPhase : uint8_t { initialization, grouping, docking, mixing, conclusion };

struct PhaseRecord {
    GdmPhase phase;
    uint64_t queries;  // data structure queries issued during this phase
};

struct GdmOptions {
    PivotRule pivot = PivotRule::deterministic;
    bool record_trace = false;
    // Re-derives every unpaired node weight from an eagerly sorted shadow
    // copy after each phase and checks the factor-of-two spread and the
    // non-decreasing queue order. For instrumented runs only: costs O(n lg n)
    // setup, issues no data structure queries.
    bool check_invariants = false;
};

struct GdmResult {
    LengthAssignment assignment;
    std::vector<PhaseRecord> trace;    // filled when record_trace is set
    bool invariants_ok = true;         // meaningful when check_invariants is set
};

/// Optimal code over the deferred multiset: pairs leaves in grouped batches,
/// defers weight evaluation of pure internal nodes, and records the work the
/// run actually did. Cost always equals the heap construction's cost.
GdmResult gdm_code(const WeightSeq& w, const GdmOptions& opts = {});

inline LengthAssignment gdm_lengths(const WeightSeq& w, const GdmOptions& opts = {}) {
    return gdm_code(w, opts).assignment;
}

std::vector<PhaseRecord> gdm_phase_trace(const WeightSeq& w);

}  // namespace opfc
