#ifndef BHT_OSGI_SIM_HH_
#define BHT_OSGI_SIM_HH_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bht/behavioral_type.hh"

namespace bht {

// ---------------------------------------------------------------------------
// system definitions

struct CallAction {
    std::string method;
    std::string object;
    std::string bundle;
};

/// Activates a bundle definition from the catalog.
struct AddBundleAction {
    std::string bundle;
};

struct RemoveBundleAction {
    std::string bundle;
};

/// Instantiates an object definition from the catalog into a bundle.
struct CreateObjectAction {
    std::string object;
    std::string bundle;
};

struct DeleteObjectAction {
    std::string object;
    std::string bundle;
};

using Action = std::variant<CallAction, AddBundleAction, RemoveBundleAction, CreateObjectAction,
                            DeleteObjectAction>;

struct MethodEdge {
    std::string from;
    std::string to;
    std::vector<Action> actions; // processed in order; may be empty
};

/// A method is an automaton whose edges carry the calls and structural
/// operations performed by that step.
struct MethodDef {
    std::string name;
    std::vector<std::string> locations;
    std::string initial;
    std::vector<MethodEdge> edges;
};

/// First method is the constructor; the list is never empty.
struct ObjectDef {
    std::string id;
    std::vector<MethodDef> methods;
};

struct BundleDef {
    std::string id;
    std::vector<ObjectDef> objects;
};

/// Running architecture: active bundles plus a catalog of definitions that
/// add-bundle / create-object actions may pull in. The catalog is static;
/// `bundles` evolves as steps execute.
struct SystemDef {
    std::vector<BundleDef> bundles;
    std::string init_bundle;
    std::map<std::string, BundleDef> bundle_catalog;
    std::map<std::string, ObjectDef> object_catalog;
};

std::vector<Violation> validate(const SystemDef& def);

const BundleDef* find_bundle(const SystemDef& def, const std::string& id);
const ObjectDef* find_object(const BundleDef& bundle, const std::string& id);
const MethodDef* find_method(const ObjectDef& object, const std::string& name);
/// The activator is the first object carrying both a "start" and a "stop"
/// method.
const ObjectDef* find_activator(const BundleDef& bundle);

// ---------------------------------------------------------------------------
// system states

enum class CallStatus { Pending, Returned };

struct CallEntry {
    std::string bundle;
    std::string object;
    std::string method;
    std::uint64_t call_id = 0;
    CallStatus status = CallStatus::Pending;
};

struct ActiveMethodState {
    std::string method;
    std::string location;
    std::uint64_t id = 0;
    std::vector<CallEntry> call_state;
};

struct TraceEvent {
    enum class Kind { Call, Step, Return, AddBundle, RemoveBundle, CreateObject, DeleteObject };
    Kind kind = Kind::Step;
    std::uint64_t seq = 0;
    // actor: the active method performing the event
    std::string bundle;
    std::string object;
    std::string method;
    std::uint64_t call_id = 0;
    // subject: callee for Call/Return, structural target otherwise
    std::string subject_bundle;
    std::string subject_object;
    std::string subject_method;
    std::optional<std::uint64_t> subject_call_id;
    std::string detail; // Step: "from->to"; Return of abandoned calls: "abandoned"
};

const char* trace_event_kind_name(TraceEvent::Kind kind);
std::optional<TraceEvent::Kind> trace_event_kind_from_name(const std::string& name);

struct ObjectState {
    std::string object;
    std::vector<ActiveMethodState> active;
};

struct BundleState {
    std::string bundle;
    std::vector<ObjectState> objects;
};

/// Mirrors the current SystemDef bundle/object structure exactly, including
/// empty entries.
struct SystemState {
    std::vector<BundleState> bundles;
    std::uint64_t next_call_id = 0;
    std::vector<TraceEvent> event_log;
};

// ---------------------------------------------------------------------------
// transitions

struct StepDescriptor {
    enum class Kind { Execute, Return };
    Kind kind = Kind::Execute;
    std::string bundle;
    std::string object;
    std::string method;
    std::uint64_t call_id = 0;
    std::size_t edge_index = 0; // Execute only: index into the method's edges
    std::string to;             // Execute only: destination location
};

std::string step_to_string(const StepDescriptor& step);

/// Starts the system: one active method, the initial bundle activator's
/// "start" at its initial location with call id 0.
SystemState init_system(const SystemDef& def);

/// Execute steps for every active method with empty call state and an
/// outgoing edge; Return steps where no edge leaves the current location.
/// Methods waiting on pending calls contribute nothing.
std::vector<StepDescriptor> enabled_steps(const SystemDef& def, const SystemState& state);

/// Applies one enabled step. Execute moves the method along its edge and
/// processes the edge's actions (calls and structural operations, which may
/// change the definition); Return removes the method and marks the matching
/// entry in its caller's call state, clearing the call state once every
/// entry has returned.
std::pair<SystemDef, SystemState> apply_step(const SystemDef& def, const SystemState& state,
                                             const StepDescriptor& step);

// ---------------------------------------------------------------------------
// drivers

struct SeededRandom {
    std::uint64_t seed = 0;
    std::size_t max_steps = 1000;
};

struct ExhaustiveDepthBounded {
    std::size_t depth = 0;
};

struct ScriptStep {
    StepDescriptor::Kind kind = StepDescriptor::Kind::Execute;
    std::string bundle;
    std::string object;
    std::string method;
    std::optional<std::string> to;            // Execute: required destination
    std::optional<std::uint64_t> call_id;     // disambiguates parallel instances
};

struct Script {
    std::vector<ScriptStep> steps;
};

using RunStrategy = std::variant<SeededRandom, ExhaustiveDepthBounded, Script>;

struct RunResult {
    SystemDef final_def;
    SystemState final_state;
    std::size_t steps_taken = 0;
    bool blocked = false; // no enabled steps at the end
};

struct ExhaustiveSummary {
    std::size_t configurations = 0;    // distinct (def, state) pairs seen
    std::size_t terminal_configs = 0;  // distinct configurations with no steps
    std::size_t maximal_traces = 0;    // step sequences ending before the depth
    std::size_t truncated_traces = 0;  // sequences cut off at the depth bound
};

using RunOutcome = std::variant<RunResult, ExhaustiveSummary>;

RunOutcome run(const SystemDef& def, const RunStrategy& strategy);

// ---------------------------------------------------------------------------
// trace monitoring

struct MonitorVerdict {
    bool conformant = true;
    std::optional<std::uint64_t> violation_seq;
    std::size_t events_checked = 0;
};

/// Projects the log onto method-call events at (bundle, object) in the
/// direction given by bt.aspect ("calls:outgoing" or "calls:incoming"),
/// keeping only names in bt's alphabet, and simulates the completed
/// automaton; the first event entering the error location is the violation.
MonitorVerdict monitor(const std::vector<TraceEvent>& log, const std::string& bundle,
                       const std::string& object, const BehavioralType& bt);

// line-delimited event log carrier (tab-separated, one event per line)
std::string render_event(const TraceEvent& event);
std::string render_event_log(const std::vector<TraceEvent>& log);
std::vector<TraceEvent> parse_event_log(const std::string& text);

} // namespace bht

#endif // BHT_OSGI_SIM_HH_
