#include "bht/osgi_sim.hh"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "bht/errors.hh"

namespace bht {

const char* trace_event_kind_name(TraceEvent::Kind kind) {
    switch (kind) {
        case TraceEvent::Kind::Call: return "call";
        case TraceEvent::Kind::Step: return "step";
        case TraceEvent::Kind::Return: return "return";
        case TraceEvent::Kind::AddBundle: return "add_bundle";
        case TraceEvent::Kind::RemoveBundle: return "remove_bundle";
        case TraceEvent::Kind::CreateObject: return "create_object";
        case TraceEvent::Kind::DeleteObject: return "delete_object";
    }
    return "step";
}

std::optional<TraceEvent::Kind> trace_event_kind_from_name(const std::string& name) {
    using K = TraceEvent::Kind;
    for (K k : {K::Call, K::Step, K::Return, K::AddBundle, K::RemoveBundle, K::CreateObject,
                K::DeleteObject})
        if (name == trace_event_kind_name(k)) return k;
    return std::nullopt;
}

const BundleDef* find_bundle(const SystemDef& def, const std::string& id) {
    for (const BundleDef& b : def.bundles)
        if (b.id == id) return &b;
    return nullptr;
}

const ObjectDef* find_object(const BundleDef& bundle, const std::string& id) {
    for (const ObjectDef& o : bundle.objects)
        if (o.id == id) return &o;
    return nullptr;
}

const MethodDef* find_method(const ObjectDef& object, const std::string& name) {
    for (const MethodDef& m : object.methods)
        if (m.name == name) return &m;
    return nullptr;
}

const ObjectDef* find_activator(const BundleDef& bundle) {
    for (const ObjectDef& o : bundle.objects)
        if (find_method(o, "start") && find_method(o, "stop")) return &o;
    return nullptr;
}

namespace {

void validate_method(const std::string& where, const MethodDef& m, std::vector<Violation>& out) {
    auto err = [&](std::string msg) { out.push_back({Severity::Error, std::move(msg)}); };
    std::set<std::string> locs(m.locations.begin(), m.locations.end());
    if (locs.size() != m.locations.size()) err(where + ": duplicate location in method " + m.name);
    if (!locs.count(m.initial))
        err(where + ": initial location " + m.initial + " of method " + m.name +
            " not in locations");
    for (const MethodEdge& e : m.edges) {
        if (!locs.count(e.from))
            err(where + ": edge source " + e.from + " of method " + m.name + " not in locations");
        if (!locs.count(e.to))
            err(where + ": edge destination " + e.to + " of method " + m.name +
                " not in locations");
    }
}

void validate_object(const std::string& where, const ObjectDef& o, std::vector<Violation>& out) {
    auto err = [&](std::string msg) { out.push_back({Severity::Error, std::move(msg)}); };
    if (o.methods.empty()) {
        err(where + ": object " + o.id + " has no methods (constructor required)");
        return;
    }
    std::set<std::string> names;
    for (const MethodDef& m : o.methods) {
        if (!names.insert(m.name).second)
            err(where + ": duplicate method " + m.name + " in object " + o.id);
        validate_method(where + "/" + o.id, m, out);
    }
}

void validate_bundle(const BundleDef& b, std::vector<Violation>& out) {
    auto err = [&](std::string msg) { out.push_back({Severity::Error, std::move(msg)}); };
    std::set<std::string> ids;
    for (const ObjectDef& o : b.objects) {
        if (!ids.insert(o.id).second) err("bundle " + b.id + ": duplicate object id " + o.id);
        validate_object("bundle " + b.id, o, out);
    }
    if (!find_activator(b))
        err("bundle " + b.id + ": no activator object with start and stop methods");
}

} // namespace

std::vector<Violation> validate(const SystemDef& def) {
    std::vector<Violation> out;
    auto err = [&](std::string msg) { out.push_back({Severity::Error, std::move(msg)}); };

    std::set<std::string> ids;
    for (const BundleDef& b : def.bundles) {
        if (!ids.insert(b.id).second) err("duplicate bundle id " + b.id);
        validate_bundle(b, out);
    }
    if (!find_bundle(def, def.init_bundle))
        err("initial bundle " + def.init_bundle + " not in system");
    for (const auto& [id, b] : def.bundle_catalog) {
        if (id != b.id) err("bundle catalog key " + id + " does not match definition id " + b.id);
        validate_bundle(b, out);
    }
    for (const auto& [id, o] : def.object_catalog) {
        if (id != o.id) err("object catalog key " + id + " does not match definition id " + o.id);
        validate_object("catalog", o, out);
    }
    return out;
}

namespace {

/// Rebuilds the state's bundle/object skeleton to mirror `def`, carrying over
/// active method lists of surviving (bundle, object) pairs.
void mirror_structure(const SystemDef& def, SystemState& state) {
    std::vector<BundleState> next;
    for (const BundleDef& b : def.bundles) {
        BundleState bs;
        bs.bundle = b.id;
        const BundleState* old = nullptr;
        for (const BundleState& cand : state.bundles)
            if (cand.bundle == b.id) {
                old = &cand;
                break;
            }
        for (const ObjectDef& o : b.objects) {
            ObjectState os;
            os.object = o.id;
            if (old)
                for (const ObjectState& cand : old->objects)
                    if (cand.object == o.id) {
                        os.active = cand.active;
                        break;
                    }
            bs.objects.push_back(std::move(os));
        }
        next.push_back(std::move(bs));
    }
    state.bundles = std::move(next);
}

ObjectState* find_object_state(SystemState& state, const std::string& bundle,
                               const std::string& object) {
    for (BundleState& bs : state.bundles)
        if (bs.bundle == bundle)
            for (ObjectState& os : bs.objects)
                if (os.object == object) return &os;
    return nullptr;
}

ActiveMethodState* find_active(SystemState& state, const std::string& bundle,
                               const std::string& object, const std::string& method,
                               std::uint64_t call_id) {
    ObjectState* os = find_object_state(state, bundle, object);
    if (!os) return nullptr;
    for (ActiveMethodState& a : os->active)
        if (a.method == method && a.id == call_id) return &a;
    return nullptr;
}

void push_event(SystemState& state, TraceEvent event) {
    event.seq = state.event_log.size();
    state.event_log.push_back(std::move(event));
}

TraceEvent actor_event(TraceEvent::Kind kind, const std::string& bundle,
                       const std::string& object, const std::string& method,
                       std::uint64_t call_id) {
    TraceEvent e;
    e.kind = kind;
    e.bundle = bundle;
    e.object = object;
    e.method = method;
    e.call_id = call_id;
    return e;
}

/// Marks the entry for `call_id` Returned in whichever caller waits on it,
/// clearing the caller's call state once every entry has returned. Emits a
/// Return event for the callee; `abandoned` tags returns forced by removal.
void settle_return(SystemState& state, const std::string& callee_bundle,
                   const std::string& callee_object, const std::string& callee_method,
                   std::uint64_t call_id, bool abandoned) {
    TraceEvent e = actor_event(TraceEvent::Kind::Return, callee_bundle, callee_object,
                               callee_method, call_id);
    if (abandoned) e.detail = "abandoned";
    for (BundleState& bs : state.bundles) {
        for (ObjectState& os : bs.objects) {
            for (ActiveMethodState& a : os.active) {
                bool touched = false;
                for (CallEntry& entry : a.call_state) {
                    if (entry.call_id == call_id && entry.status == CallStatus::Pending) {
                        entry.status = CallStatus::Returned;
                        touched = true;
                    }
                }
                if (!touched) continue;
                e.subject_bundle = bs.bundle;
                e.subject_object = os.object;
                e.subject_method = a.method;
                e.subject_call_id = a.id;
                const bool all_returned =
                    std::all_of(a.call_state.begin(), a.call_state.end(), [](const CallEntry& c) {
                        return c.status == CallStatus::Returned;
                    });
                if (all_returned) a.call_state.clear();
            }
        }
    }
    push_event(state, std::move(e));
}

/// Call ids of every active method inside the given unit (bundle, or a
/// single object of it), used when the unit disappears.
std::vector<std::tuple<std::string, std::string, std::string, std::uint64_t>> unit_actives(
    const SystemState& state, const std::string& bundle,
    const std::optional<std::string>& object) {
    std::vector<std::tuple<std::string, std::string, std::string, std::uint64_t>> out;
    for (const BundleState& bs : state.bundles) {
        if (bs.bundle != bundle) continue;
        for (const ObjectState& os : bs.objects) {
            if (object && os.object != *object) continue;
            for (const ActiveMethodState& a : os.active)
                out.emplace_back(bs.bundle, os.object, a.method, a.id);
        }
    }
    return out;
}

/// After a unit vanished, force-return every pending entry that points into
/// it so blocked callers can resume.
void abandon_unit(SystemState& state, const std::string& bundle,
                  const std::optional<std::string>& object) {
    for (const auto& [b, o, m, id] : unit_actives(state, bundle, object))
        settle_return(state, b, o, m, id, true);
    // entries referencing the unit whose callee never even started cannot
    // exist: entries are created together with the callee's state
}

} // namespace

SystemState init_system(const SystemDef& def) {
    const auto violations = validate(def);
    for (const Violation& v : violations)
        if (v.severity == Severity::Error) throw Error(errc::invalid_system_def, v.message);

    SystemState state;
    mirror_structure(def, state);
    const BundleDef* init = find_bundle(def, def.init_bundle);
    const ObjectDef* activator = find_activator(*init);
    const MethodDef* start = find_method(*activator, "start");

    ObjectState* os = find_object_state(state, init->id, activator->id);
    os->active.push_back(ActiveMethodState{"start", start->initial, 0, {}});
    state.next_call_id = 1;

    TraceEvent e = actor_event(TraceEvent::Kind::Call, init->id, activator->id, "start", 0);
    e.subject_bundle = init->id;
    e.subject_object = activator->id;
    e.subject_method = "start";
    e.subject_call_id = 0;
    push_event(state, std::move(e));
    return state;
}

std::vector<StepDescriptor> enabled_steps(const SystemDef& def, const SystemState& state) {
    std::vector<StepDescriptor> out;
    for (const BundleState& bs : state.bundles) {
        const BundleDef* bd = find_bundle(def, bs.bundle);
        if (!bd)
            throw Error(errc::inconsistent_state, "state references absent bundle " + bs.bundle);
        for (const ObjectState& os : bs.objects) {
            const ObjectDef* od = find_object(*bd, os.object);
            if (!od)
                throw Error(errc::inconsistent_state,
                            "state references absent object " + os.object);
            for (const ActiveMethodState& a : os.active) {
                if (!a.call_state.empty()) continue; // blocking call semantics
                const MethodDef* md = find_method(*od, a.method);
                if (!md)
                    throw Error(errc::inconsistent_state,
                                "state references absent method " + a.method);
                bool has_edge = false;
                for (std::size_t i = 0; i < md->edges.size(); ++i) {
                    if (md->edges[i].from != a.location) continue;
                    has_edge = true;
                    out.push_back(StepDescriptor{StepDescriptor::Kind::Execute, bs.bundle,
                                                 os.object, a.method, a.id, i,
                                                 md->edges[i].to});
                }
                if (!has_edge)
                    out.push_back(StepDescriptor{StepDescriptor::Kind::Return, bs.bundle,
                                                 os.object, a.method, a.id, 0, ""});
            }
        }
    }
    return out;
}

std::pair<SystemDef, SystemState> apply_step(const SystemDef& def, const SystemState& state,
                                             const StepDescriptor& step) {
    SystemDef ndef = def;
    SystemState nstate = state;

    ActiveMethodState* actor =
        find_active(nstate, step.bundle, step.object, step.method, step.call_id);
    if (!actor)
        throw Error(errc::inconsistent_state, "no active method " + step_to_string(step));
    if (!actor->call_state.empty())
        throw Error(errc::inconsistent_state,
                    "method is blocked on pending calls: " + step_to_string(step));

    const BundleDef* bd = find_bundle(ndef, step.bundle);
    const ObjectDef* od = bd ? find_object(*bd, step.object) : nullptr;
    const MethodDef* md = od ? find_method(*od, step.method) : nullptr;
    if (!md) throw Error(errc::inconsistent_state, "definition lost for " + step_to_string(step));

    if (step.kind == StepDescriptor::Kind::Return) {
        for (const MethodEdge& e : md->edges)
            if (e.from == actor->location)
                throw Error(errc::inconsistent_state,
                            "method still has outgoing edges: " + step_to_string(step));
        ObjectState* os = find_object_state(nstate, step.bundle, step.object);
        os->active.erase(std::remove_if(os->active.begin(), os->active.end(),
                                        [&](const ActiveMethodState& a) {
                                            return a.method == step.method && a.id == step.call_id;
                                        }),
                         os->active.end());
        settle_return(nstate, step.bundle, step.object, step.method, step.call_id, false);
        return {std::move(ndef), std::move(nstate)};
    }

    if (step.edge_index >= md->edges.size())
        throw Error(errc::inconsistent_state, "edge index out of range: " + step_to_string(step));
    const MethodEdge edge = md->edges[step.edge_index]; // copy: ndef may change below
    if (edge.from != actor->location)
        throw Error(errc::inconsistent_state, "edge does not leave the current location: " +
                                                  step_to_string(step));

    actor->location = edge.to;
    {
        TraceEvent e = actor_event(TraceEvent::Kind::Step, step.bundle, step.object, step.method,
                                   step.call_id);
        e.detail = edge.from + "->" + edge.to;
        push_event(nstate, std::move(e));
    }

    // cshandle: process the edge's action list in order
    for (const Action& action : edge.actions) {
        if (const auto* call = std::get_if<CallAction>(&action)) {
            const BundleDef* cb = find_bundle(ndef, call->bundle);
            const ObjectDef* co = cb ? find_object(*cb, call->object) : nullptr;
            const MethodDef* cm = co ? find_method(*co, call->method) : nullptr;
            if (!cm)
                throw Error(errc::missing_callee, "call target " + call->bundle + "/" +
                                                      call->object + "/" + call->method +
                                                      " does not exist");
            const std::uint64_t id = nstate.next_call_id++;
            // the actor may have been removed by a preceding structural action
            if (ActiveMethodState* self =
                    find_active(nstate, step.bundle, step.object, step.method, step.call_id))
                self->call_state.push_back(
                    CallEntry{call->bundle, call->object, call->method, id, CallStatus::Pending});
            find_object_state(nstate, call->bundle, call->object)
                ->active.push_back(ActiveMethodState{call->method, cm->initial, id, {}});
            TraceEvent e = actor_event(TraceEvent::Kind::Call, step.bundle, step.object,
                                       step.method, step.call_id);
            e.subject_bundle = call->bundle;
            e.subject_object = call->object;
            e.subject_method = call->method;
            e.subject_call_id = id;
            push_event(nstate, std::move(e));
        } else if (const auto* add = std::get_if<AddBundleAction>(&action)) {
            if (find_bundle(ndef, add->bundle))
                throw Error(errc::duplicate_bundle, "bundle " + add->bundle + " already present");
            const auto it = ndef.bundle_catalog.find(add->bundle);
            if (it == ndef.bundle_catalog.end())
                throw Error(errc::missing_bundle,
                            "bundle " + add->bundle + " not in the catalog");
            ndef.bundles.push_back(it->second);
            mirror_structure(ndef, nstate);
            TraceEvent e = actor_event(TraceEvent::Kind::AddBundle, step.bundle, step.object,
                                       step.method, step.call_id);
            e.subject_bundle = add->bundle;
            push_event(nstate, std::move(e));
        } else if (const auto* rem = std::get_if<RemoveBundleAction>(&action)) {
            if (!find_bundle(ndef, rem->bundle))
                throw Error(errc::missing_bundle, "bundle " + rem->bundle + " not present");
            TraceEvent e = actor_event(TraceEvent::Kind::RemoveBundle, step.bundle, step.object,
                                       step.method, step.call_id);
            e.subject_bundle = rem->bundle;
            push_event(nstate, std::move(e));
            abandon_unit(nstate, rem->bundle, std::nullopt);
            ndef.bundles.erase(std::remove_if(ndef.bundles.begin(), ndef.bundles.end(),
                                              [&](const BundleDef& b) {
                                                  return b.id == rem->bundle;
                                              }),
                               ndef.bundles.end());
            mirror_structure(ndef, nstate);
        } else if (const auto* create = std::get_if<CreateObjectAction>(&action)) {
            BundleDef* target = nullptr;
            for (BundleDef& b : ndef.bundles)
                if (b.id == create->bundle) target = &b;
            if (!target)
                throw Error(errc::missing_bundle, "bundle " + create->bundle + " not present");
            const auto it = ndef.object_catalog.find(create->object);
            if (it == ndef.object_catalog.end())
                throw Error(errc::missing_object,
                            "object " + create->object + " not in the catalog");
            if (find_object(*target, create->object))
                throw Error(errc::duplicate_object, "object " + create->object +
                                                        " already present in bundle " +
                                                        create->bundle);
            target->objects.push_back(it->second);
            mirror_structure(ndef, nstate);
            TraceEvent e = actor_event(TraceEvent::Kind::CreateObject, step.bundle, step.object,
                                       step.method, step.call_id);
            e.subject_bundle = create->bundle;
            e.subject_object = create->object;
            push_event(nstate, std::move(e));
        } else if (const auto* del = std::get_if<DeleteObjectAction>(&action)) {
            BundleDef* target = nullptr;
            for (BundleDef& b : ndef.bundles)
                if (b.id == del->bundle) target = &b;
            if (!target)
                throw Error(errc::missing_bundle, "bundle " + del->bundle + " not present");
            if (!find_object(*target, del->object))
                throw Error(errc::missing_object, "object " + del->object +
                                                      " not present in bundle " + del->bundle);
            TraceEvent e = actor_event(TraceEvent::Kind::DeleteObject, step.bundle, step.object,
                                       step.method, step.call_id);
            e.subject_bundle = del->bundle;
            e.subject_object = del->object;
            push_event(nstate, std::move(e));
            abandon_unit(nstate, del->bundle, del->object);
            target->objects.erase(std::remove_if(target->objects.begin(), target->objects.end(),
                                                 [&](const ObjectDef& o) {
                                                     return o.id == del->object;
                                                 }),
                                  target->objects.end());
            mirror_structure(ndef, nstate);
        }
    }
    return {std::move(ndef), std::move(nstate)};
}

std::string step_to_string(const StepDescriptor& step) {
    std::ostringstream out;
    out << (step.kind == StepDescriptor::Kind::Execute ? "execute " : "return ");
    out << step.bundle << "/" << step.object << "/" << step.method << "#" << step.call_id;
    if (step.kind == StepDescriptor::Kind::Execute) out << " ->" << step.to;
    return out.str();
}

namespace {

bool any_active(const SystemState& state) {
    for (const BundleState& bs : state.bundles)
        for (const ObjectState& os : bs.objects)
            if (!os.active.empty()) return true;
    return false;
}

/// Canonical key of a configuration, event log excluded.
std::string config_key(const SystemDef& def, const SystemState& state) {
    std::ostringstream out;
    for (const BundleDef& b : def.bundles) {
        out << "b:" << b.id << "{";
        for (const ObjectDef& o : b.objects) out << o.id << ",";
        out << "}";
    }
    out << "|" << state.next_call_id << "|";
    for (const BundleState& bs : state.bundles) {
        for (const ObjectState& os : bs.objects) {
            out << bs.bundle << "/" << os.object << "[";
            for (const ActiveMethodState& a : os.active) {
                out << a.method << "@" << a.location << "#" << a.id << "(";
                for (const CallEntry& c : a.call_state)
                    out << c.call_id << (c.status == CallStatus::Pending ? "p" : "r") << ";";
                out << ")";
            }
            out << "]";
        }
    }
    return out.str();
}

void exhaust(const SystemDef& def, const SystemState& state, std::size_t depth,
             ExhaustiveSummary& summary, std::set<std::string>& configs,
             std::set<std::string>& terminals) {
    configs.insert(config_key(def, state));
    const auto steps = enabled_steps(def, state);
    if (steps.empty()) {
        terminals.insert(config_key(def, state));
        ++summary.maximal_traces;
        return;
    }
    if (depth == 0) {
        ++summary.truncated_traces;
        return;
    }
    for (const StepDescriptor& step : steps) {
        auto [ndef, nstate] = apply_step(def, state, step);
        exhaust(ndef, nstate, depth - 1, summary, configs, terminals);
    }
}

} // namespace

RunOutcome run(const SystemDef& def, const RunStrategy& strategy) {
    if (const auto* seeded = std::get_if<SeededRandom>(&strategy)) {
        std::mt19937_64 rng(seeded->seed);
        SystemDef cur = def;
        SystemState state = init_system(cur);
        RunResult result;
        for (std::size_t i = 0; i < seeded->max_steps; ++i) {
            const auto steps = enabled_steps(cur, state);
            if (steps.empty()) {
                result.blocked = any_active(state);
                break;
            }
            const StepDescriptor& pick = steps[rng() % steps.size()];
            auto [ndef, nstate] = apply_step(cur, state, pick);
            cur = std::move(ndef);
            state = std::move(nstate);
            ++result.steps_taken;
        }
        result.final_def = std::move(cur);
        result.final_state = std::move(state);
        return result;
    }
    if (const auto* exhaustive = std::get_if<ExhaustiveDepthBounded>(&strategy)) {
        ExhaustiveSummary summary;
        std::set<std::string> configs, terminals;
        exhaust(def, init_system(def), exhaustive->depth, summary, configs, terminals);
        summary.configurations = configs.size();
        summary.terminal_configs = terminals.size();
        return summary;
    }
    const Script& script = std::get<Script>(strategy);
    SystemDef cur = def;
    SystemState state = init_system(cur);
    RunResult result;
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const ScriptStep& s = script.steps[i];
        const auto steps = enabled_steps(cur, state);
        const StepDescriptor* match = nullptr;
        for (const StepDescriptor& cand : steps) {
            if (cand.kind != s.kind || cand.bundle != s.bundle || cand.object != s.object ||
                cand.method != s.method)
                continue;
            if (s.to && cand.to != *s.to) continue;
            if (s.call_id && cand.call_id != *s.call_id) continue;
            match = &cand;
            break;
        }
        if (!match)
            throw Error(errc::script_step_disabled,
                        "script step " + std::to_string(i) + " (" + s.bundle + "/" + s.object +
                            "/" + s.method + ") matches no enabled step");
        auto [ndef, nstate] = apply_step(cur, state, *match);
        cur = std::move(ndef);
        state = std::move(nstate);
        ++result.steps_taken;
    }
    result.blocked = enabled_steps(cur, state).empty() && any_active(state);
    result.final_def = std::move(cur);
    result.final_state = std::move(state);
    return result;
}

MonitorVerdict monitor(const std::vector<TraceEvent>& log, const std::string& bundle,
                       const std::string& object, const BehavioralType& bt) {
    bool outgoing;
    if (bt.aspect == "calls:outgoing")
        outgoing = true;
    else if (bt.aspect == "calls:incoming")
        outgoing = false;
    else
        throw Error(errc::unsupported_aspect,
                    "aspect \"" + bt.aspect + "\" does not identify a call direction");

    std::set<std::string> names;
    for (const Label& l : bt.alphabet) names.insert(l.name);

    const BehavioralType cbt = complete(bt, bt.alphabet);
    std::set<std::string> current{cbt.initial};

    MonitorVerdict verdict;
    for (const TraceEvent& e : log) {
        if (e.kind != TraceEvent::Kind::Call) continue;
        // framework bootstrap call has actor == subject; it is nobody's call
        if (e.bundle == e.subject_bundle && e.object == e.subject_object &&
            e.method == e.subject_method && e.subject_call_id &&
            *e.subject_call_id == e.call_id)
            continue;
        const bool at_subject = outgoing
                                    ? (e.bundle == bundle && e.object == object)
                                    : (e.subject_bundle == bundle && e.subject_object == object);
        if (!at_subject) continue;
        const std::string symbol = e.subject_method; // the called method's name
        if (!names.count(symbol)) continue;

        ++verdict.events_checked;
        std::set<std::string> next;
        for (const std::string& loc : current)
            for (const Edge& edge : cbt.edges)
                if (edge.from == loc && edge.label.name == symbol) next.insert(edge.to);
        current = std::move(next);
        const bool all_error = std::all_of(current.begin(), current.end(), [&](const std::string& l) {
            return cbt.error_location && l == *cbt.error_location;
        });
        if (all_error) {
            verdict.conformant = false;
            verdict.violation_seq = e.seq;
            return verdict;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// line-delimited event log carrier

namespace {

std::string actor_path(const TraceEvent& e) {
    return e.bundle + "/" + e.object + "/" + e.method + "#" + std::to_string(e.call_id);
}

std::string subject_path(const TraceEvent& e) {
    switch (e.kind) {
        case TraceEvent::Kind::Call:
        case TraceEvent::Kind::Return: {
            if (e.subject_bundle.empty()) return "-";
            std::string out = e.subject_bundle + "/" + e.subject_object + "/" + e.subject_method;
            if (e.subject_call_id) out += "#" + std::to_string(*e.subject_call_id);
            return out;
        }
        case TraceEvent::Kind::AddBundle:
        case TraceEvent::Kind::RemoveBundle:
            return e.subject_bundle;
        case TraceEvent::Kind::CreateObject:
        case TraceEvent::Kind::DeleteObject:
            return e.subject_bundle + "/" + e.subject_object;
        case TraceEvent::Kind::Step:
            return "-";
    }
    return "-";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string render_event(const TraceEvent& e) {
    std::ostringstream out;
    out << e.seq << "\t" << trace_event_kind_name(e.kind) << "\t" << actor_path(e) << "\t"
        << subject_path(e) << "\t" << (e.detail.empty() ? "-" : e.detail);
    return out.str();
}

std::string render_event_log(const std::vector<TraceEvent>& log) {
    std::string out;
    for (const TraceEvent& e : log) {
        out += render_event(e);
        out += "\n";
    }
    return out;
}

std::vector<TraceEvent> parse_event_log(const std::string& text) {
    std::vector<TraceEvent> out;
    int lineno = 0;
    std::istringstream in(text);
    std::string line;
    auto fail = [&](const std::string& msg) -> Error {
        return Error(errc::parse_error, msg, lineno, 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() != 5) throw fail("expected 5 tab-separated columns");
        TraceEvent e;
        try {
            e.seq = std::stoull(cols[0]);
        } catch (const std::exception&) {
            throw fail("bad sequence number \"" + cols[0] + "\"");
        }
        const auto kind = trace_event_kind_from_name(cols[1]);
        if (!kind) throw fail("unknown event kind \"" + cols[1] + "\"");
        e.kind = *kind;

        const auto hash = cols[2].rfind('#');
        const auto actor = split(hash == std::string::npos ? cols[2] : cols[2].substr(0, hash), '/');
        if (actor.size() != 3 || hash == std::string::npos)
            throw fail("bad actor path \"" + cols[2] + "\"");
        e.bundle = actor[0];
        e.object = actor[1];
        e.method = actor[2];
        try {
            e.call_id = std::stoull(cols[2].substr(hash + 1));
        } catch (const std::exception&) {
            throw fail("bad actor call id in \"" + cols[2] + "\"");
        }

        if (cols[3] != "-") {
            std::string subj = cols[3];
            const auto shash = subj.rfind('#');
            std::optional<std::uint64_t> sid;
            if (shash != std::string::npos) {
                try {
                    sid = std::stoull(subj.substr(shash + 1));
                } catch (const std::exception&) {
                    throw fail("bad subject call id in \"" + cols[3] + "\"");
                }
                subj = subj.substr(0, shash);
            }
            const auto parts = split(subj, '/');
            e.subject_bundle = parts.size() > 0 ? parts[0] : "";
            e.subject_object = parts.size() > 1 ? parts[1] : "";
            e.subject_method = parts.size() > 2 ? parts[2] : "";
            e.subject_call_id = sid;
        }
        if (cols[4] != "-") e.detail = cols[4];
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace bht
