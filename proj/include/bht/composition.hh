#ifndef BHT_COMPOSITION_HH_
#define BHT_COMPOSITION_HH_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bht/behavioral_type.hh"

namespace bht {

/// "Prefer `higher` over `lower`" inside one component: whenever some joint
/// transition firing a higher-labeled edge of the component is enabled, the
/// component's co-located lower-labeled edges are suppressed.
struct PriorityRule {
    std::string component;
    Label lower;
    Label higher;
};

bool priority_rule_less(const PriorityRule& a, const PriorityRule& b);

/// A named set of behavioral types composed under shared-label
/// synchronization: a label name occurring in two or more alphabets fires
/// only as a joint move of every component declaring it. `priorities` is
/// empty unless the system was restricted via apply_priorities.
struct ComponentSystem {
    std::vector<std::pair<std::string, BehavioralType>> components;
    std::vector<PriorityRule> priorities;
};

std::optional<std::size_t> component_index(const ComponentSystem& sys, const std::string& name);

/// Label names occurring in at least two component alphabets, sorted.
std::vector<std::string> shared_label_names(const ComponentSystem& sys);

/// Per-component current location, in component declaration order.
using ProductState = std::vector<std::string>;

ProductState initial_state(const ComponentSystem& sys);

struct Participant {
    std::size_t component;
    Edge edge;
};

struct JointTransition {
    std::string label_name;
    std::vector<Participant> participants; // ascending component index
};

/// Joint transitions enabled at `state`, after priority suppression, in
/// deterministic (label name, per-component destination) order.
std::vector<JointTransition> enabled(const ComponentSystem& sys, const ProductState& state);

struct TraceStep {
    std::string label;
    std::vector<std::string> components;   // participating component names
    std::vector<std::string> destinations; // their locations after the step
};
using Trace = std::vector<TraceStep>;

/// States reached by following `trace` from the initial state; empty when a
/// step does not match any enabled transition.
std::optional<ProductState> replay(const ComponentSystem& sys, const Trace& trace);

/// Reachable fragment of the product graph, breadth-first from the initial
/// state; states[0] is the initial state and arcs are in visit order.
struct Exploration {
    std::vector<ProductState> states;
    struct Arc {
        std::size_t from;
        TraceStep step;
        std::size_t to;
    };
    std::vector<Arc> arcs;
    bool complete = true;

    std::optional<std::size_t> index_of(const ProductState& s) const;
    /// Shortest trace from the initial state, following BFS discovery arcs.
    Trace trace_to(std::size_t state_index) const;
};

inline constexpr std::size_t default_state_bound = 1000000;

Exploration reachable(const ComponentSystem& sys,
                      std::optional<std::size_t> bound = std::nullopt);

struct DeadlockReport {
    ProductState state;
    Trace trace;
};

struct IncompatibilityReport {
    ProductState state;
    std::string sender;
    Label label;
    std::string refuser;
    Trace trace;
};

struct AnalysisVerdict {
    std::vector<std::string> component_names;
    std::vector<DeadlockReport> deadlocks;
    std::vector<IncompatibilityReport> incompatibilities;
    std::vector<ProductState> terminal_states; // normal termination, not deadlock
    std::size_t explored = 0;
    bool complete = true;

    bool clean() const { return deadlocks.empty() && incompatibilities.empty(); }
};

/// Reachable states that are not terminal (some component still has an edge)
/// yet enable no joint transition, each with a shortest witness trace.
AnalysisVerdict detect_deadlocks(const ComponentSystem& sys,
                                 std::optional<std::size_t> bound = std::nullopt);

/// Reachable states where a component offers a CallOut whose name the target
/// declares but cannot currently accept. CallOut labels without a target are
/// outside the pairing and ignored.
AnalysisVerdict check_compatibility(const ComponentSystem& sys,
                                    std::optional<std::size_t> bound = std::nullopt);

/// Both checks over a single exploration.
AnalysisVerdict analyze(const ComponentSystem& sys,
                        std::optional<std::size_t> bound = std::nullopt);

/// Returns a wrapper system carrying `rules` on top of the existing ones;
/// the underlying automata are shared unchanged.
ComponentSystem apply_priorities(const ComponentSystem& sys,
                                 const std::vector<PriorityRule>& rules);

} // namespace bht

#endif // BHT_COMPOSITION_HH_
