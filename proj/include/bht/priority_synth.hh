#ifndef BHT_PRIORITY_SYNTH_HH_
#define BHT_PRIORITY_SYNTH_HH_

#include <cstddef>
#include <string>
#include <vector>

#include "bht/composition.hh"

namespace bht {

enum class SynthesisStatus { Solved, Unsolvable, BoundExceeded };

const char* synthesis_status_name(SynthesisStatus s);

struct SynthesisResult {
    SynthesisStatus status = SynthesisStatus::Unsolvable;
    std::vector<PriorityRule> rules; // empty unless Solved
    /// Verdict of the system restricted by `rules` (the original system when
    /// rules is empty).
    AnalysisVerdict residual;
    /// Verdict of the unrestricted system, kept for reporting.
    AnalysisVerdict original;
    /// For Solved results: per rule, the bad states its presence eliminates.
    std::vector<std::vector<ProductState>> eliminated_per_rule;
};

inline constexpr std::size_t default_max_rules = 4;

/// Bounded explicit search for a priority-rule set that removes every
/// deadlock and incompatibility witness. Candidates are drawn from conflict
/// frontiers (locations along witness traces where the acting component had
/// two or more distinct edge labels) and explored by iterative deepening
/// over rule-set size in lexicographic candidate order; the first clean set
/// wins. Deterministic for identical inputs.
SynthesisResult synthesize(const ComponentSystem& sys,
                           std::size_t max_rules = default_max_rules);

/// Plain-text report of a synthesis result.
std::string explain(const SynthesisResult& result);

} // namespace bht

#endif // BHT_PRIORITY_SYNTH_HH_
