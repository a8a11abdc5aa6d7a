#include "bht/model_io.hh"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "bht/errors.hh"
#include "json_reader.hh"

namespace bht {

using nlohmann::ordered_json;

const char* payload_kind_name(PayloadKind kind) {
    switch (kind) {
        case PayloadKind::BehavioralType: return "behavioral_type";
        case PayloadKind::ComponentSystem: return "component_system";
        case PayloadKind::SystemDef: return "system_def";
        case PayloadKind::Script: return "script";
        case PayloadKind::Verdict: return "verdict";
        case PayloadKind::SynthesisResult: return "synthesis_result";
    }
    return "behavioral_type";
}

ModelDocument document(BehavioralType payload) {
    return ModelDocument{format_version, PayloadKind::BehavioralType, std::move(payload)};
}
ModelDocument document(ComponentSystem payload) {
    return ModelDocument{format_version, PayloadKind::ComponentSystem, std::move(payload)};
}
ModelDocument document(SystemDef payload) {
    return ModelDocument{format_version, PayloadKind::SystemDef, std::move(payload)};
}
ModelDocument document(Script payload) {
    return ModelDocument{format_version, PayloadKind::Script, std::move(payload)};
}
ModelDocument document(AnalysisVerdict payload) {
    return ModelDocument{format_version, PayloadKind::Verdict, std::move(payload)};
}
ModelDocument document(SynthesisResult payload) {
    return ModelDocument{format_version, PayloadKind::SynthesisResult, std::move(payload)};
}

// ---------------------------------------------------------------------------
// schema cursor

namespace {

/// Read cursor over a parsed document carrying the JSON-pointer path, so
/// schema errors report the exact line/column of the offending element.
class Doc {
public:
    Doc(const ordered_json& node, const detail::JsonPositions& positions, std::string path)
        : node_(node), positions_(positions), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        const auto [line, col] = positions_.of(path_);
        throw Error(errc::schema_error, msg + " at " + (path_.empty() ? "document root" : path_),
                    line, col);
    }

    const ordered_json& raw() const { return node_; }

    Doc at(const std::string& key) const {
        if (!node_.is_object() || !node_.contains(key))
            fail("missing required key \"" + key + "\"");
        return Doc(node_.at(key), positions_, path_ + "/" + key);
    }

    bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }

    void allow_only(std::initializer_list<const char*> keys) const {
        if (!node_.is_object()) fail("expected an object");
        for (const auto& [key, value] : node_.items()) {
            const bool known = std::any_of(keys.begin(), keys.end(),
                                           [&](const char* k) { return key == k; });
            if (!known) {
                Doc bad(value, positions_, path_ + "/" + key);
                bad.fail("unknown key \"" + key + "\"");
            }
        }
    }

    std::string str() const {
        if (!node_.is_string()) fail("expected a string");
        return node_.get<std::string>();
    }

    std::int64_t integer() const {
        if (!node_.is_number_integer()) fail("expected an integer");
        return node_.get<std::int64_t>();
    }

    bool boolean() const {
        if (!node_.is_boolean()) fail("expected a boolean");
        return node_.get<bool>();
    }

    std::size_t size() const {
        if (!node_.is_array()) fail("expected an array");
        return node_.size();
    }

    Doc item(std::size_t i) const {
        return Doc(node_.at(i), positions_, path_ + "/" + std::to_string(i));
    }

    template <typename F>
    void each(F&& f) const {
        for (std::size_t i = 0; i < size(); ++i) f(item(i));
    }

private:
    const ordered_json& node_;
    const detail::JsonPositions& positions_;
    std::string path_;
};

// ---------------------------------------------------------------------------
// behavioral types

Label read_alphabet_label(const Doc& d) {
    d.allow_only({"name", "kind", "target"});
    Label l;
    l.name = d.at("name").str();
    const std::string kind = d.at("kind").str();
    const auto k = label_kind_from_name(kind);
    if (!k) d.at("kind").fail("unknown label kind \"" + kind + "\"");
    l.kind = *k;
    if (d.has("target")) l.target = d.at("target").str();
    return l;
}

BehavioralType read_behavioral_type(const Doc& d, bool nested) {
    if (nested)
        d.allow_only({"aspect", "alphabet", "locations", "initial", "edges", "error_location"});
    else
        d.allow_only({"format_version", "kind", "aspect", "alphabet", "locations", "initial",
                      "edges", "error_location"});
    BehavioralType bt;
    bt.aspect = d.at("aspect").str();

    std::set<std::string> names;
    d.at("alphabet").each([&](const Doc& entry) {
        const Label l = read_alphabet_label(entry);
        if (!names.insert(l.name).second)
            entry.fail("duplicate label name \"" + l.name +
                       "\" in alphabet (edges reference labels by name)");
        bt.alphabet.push_back(l);
    });
    d.at("locations").each([&](const Doc& entry) { bt.locations.push_back(entry.str()); });
    bt.initial = d.at("initial").str();
    d.at("edges").each([&](const Doc& entry) {
        entry.allow_only({"from", "label", "to"});
        Edge e;
        e.from = entry.at("from").str();
        e.to = entry.at("to").str();
        const std::string name = entry.at("label").str();
        const auto found = std::find_if(bt.alphabet.begin(), bt.alphabet.end(),
                                        [&](const Label& l) { return l.name == name; });
        if (found == bt.alphabet.end())
            entry.at("label").fail("edge label \"" + name + "\" not declared in the alphabet");
        e.label = *found;
        bt.edges.push_back(std::move(e));
    });
    if (d.has("error_location")) bt.error_location = d.at("error_location").str();

    for (const Violation& v : validate(bt))
        if (v.severity == Severity::Error) d.fail(v.message);
    return bt;
}

void require_unique_names(const BehavioralType& bt, const std::string& context) {
    std::set<std::string> names;
    for (const Label& l : bt.alphabet)
        if (!names.insert(l.name).second)
            throw Error(errc::schema_error, context + ": alphabet of a serialized type needs " +
                                                "unique label names, \"" + l.name +
                                                "\" appears twice");
}

ordered_json write_label(const Label& l) {
    ordered_json out;
    out["name"] = l.name;
    out["kind"] = label_kind_name(l.kind);
    if (l.target) out["target"] = *l.target;
    return out;
}

void write_behavioral_type_fields(ordered_json& out, const BehavioralType& bt) {
    require_unique_names(bt, "save");
    out["aspect"] = bt.aspect;
    auto alphabet = label_set(bt.alphabet);
    ordered_json alpha = ordered_json::array();
    for (const Label& l : alphabet) alpha.push_back(write_label(l));
    out["alphabet"] = std::move(alpha);

    auto locations = bt.locations;
    std::sort(locations.begin(), locations.end(), natural_less);
    locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
    out["locations"] = locations;
    out["initial"] = bt.initial;

    auto edges = bt.edges;
    std::sort(edges.begin(), edges.end(), edge_less);
    edges.erase(std::unique(edges.begin(), edges.end(), same_edge), edges.end());
    ordered_json earr = ordered_json::array();
    for (const Edge& e : edges) {
        ordered_json ej;
        ej["from"] = e.from;
        ej["label"] = e.label.name;
        ej["to"] = e.to;
        earr.push_back(std::move(ej));
    }
    out["edges"] = std::move(earr);
    if (bt.error_location) out["error_location"] = *bt.error_location;
}

// ---------------------------------------------------------------------------
// component systems

Label resolve_label_name(const BehavioralType& bt, const Doc& where, const std::string& name) {
    const auto found = std::find_if(bt.alphabet.begin(), bt.alphabet.end(),
                                    [&](const Label& l) { return l.name == name; });
    if (found == bt.alphabet.end())
        where.fail("label \"" + name + "\" not in the component's alphabet");
    return Label{found->name, found->kind, std::nullopt};
}

ComponentSystem read_component_system(const Doc& d) {
    d.allow_only({"format_version", "kind", "components", "priorities"});
    ComponentSystem sys;
    std::set<std::string> names;
    d.at("components").each([&](const Doc& comp) {
        comp.allow_only({"name", "type"});
        const std::string name = comp.at("name").str();
        if (!names.insert(name).second)
            comp.at("name").fail("duplicate component name \"" + name + "\"");
        sys.components.emplace_back(name, read_behavioral_type(comp.at("type"), true));
    });
    if (d.has("priorities")) {
        d.at("priorities").each([&](const Doc& rule) {
            rule.allow_only({"component", "lower", "higher"});
            PriorityRule r;
            r.component = rule.at("component").str();
            const auto idx = component_index(sys, r.component);
            if (!idx) rule.at("component").fail("unknown component \"" + r.component + "\"");
            const BehavioralType& bt = sys.components[*idx].second;
            r.lower = resolve_label_name(bt, rule.at("lower"), rule.at("lower").str());
            r.higher = resolve_label_name(bt, rule.at("higher"), rule.at("higher").str());
            if (same_label(r.lower, r.higher))
                rule.fail("lower and higher are the same label \"" + r.lower.name + "\"");
            sys.priorities.push_back(std::move(r));
        });
    }
    return sys;
}

ordered_json write_component_system(const ComponentSystem& sys) {
    ordered_json out;
    ordered_json comps = ordered_json::array();
    for (const auto& [name, bt] : sys.components) {
        ordered_json c;
        c["name"] = name;
        ordered_json type;
        write_behavioral_type_fields(type, bt);
        c["type"] = std::move(type);
        comps.push_back(std::move(c));
    }
    out["components"] = std::move(comps);
    if (!sys.priorities.empty()) {
        ordered_json rules = ordered_json::array();
        for (const PriorityRule& r : sys.priorities) {
            ordered_json rj;
            rj["component"] = r.component;
            rj["lower"] = r.lower.name;
            rj["higher"] = r.higher.name;
            rules.push_back(std::move(rj));
        }
        out["priorities"] = std::move(rules);
    }
    return out;
}

// ---------------------------------------------------------------------------
// system definitions

Action read_action(const Doc& d) {
    const std::string op = d.at("op").str();
    if (op == "call") {
        d.allow_only({"op", "method", "object", "bundle"});
        return CallAction{d.at("method").str(), d.at("object").str(), d.at("bundle").str()};
    }
    if (op == "add_bundle") {
        d.allow_only({"op", "bundle"});
        return AddBundleAction{d.at("bundle").str()};
    }
    if (op == "remove_bundle") {
        d.allow_only({"op", "bundle"});
        return RemoveBundleAction{d.at("bundle").str()};
    }
    if (op == "create_object") {
        d.allow_only({"op", "object", "bundle"});
        return CreateObjectAction{d.at("object").str(), d.at("bundle").str()};
    }
    if (op == "delete_object") {
        d.allow_only({"op", "object", "bundle"});
        return DeleteObjectAction{d.at("object").str(), d.at("bundle").str()};
    }
    d.at("op").fail("unknown action op \"" + op + "\"");
}

MethodDef read_method(const Doc& d) {
    d.allow_only({"name", "locations", "initial", "edges"});
    MethodDef m;
    m.name = d.at("name").str();
    d.at("locations").each([&](const Doc& l) { m.locations.push_back(l.str()); });
    m.initial = d.at("initial").str();
    d.at("edges").each([&](const Doc& e) {
        e.allow_only({"from", "to", "actions"});
        MethodEdge edge;
        edge.from = e.at("from").str();
        edge.to = e.at("to").str();
        if (e.has("actions"))
            e.at("actions").each([&](const Doc& a) { edge.actions.push_back(read_action(a)); });
        m.edges.push_back(std::move(edge));
    });
    return m;
}

ObjectDef read_object(const Doc& d) {
    d.allow_only({"id", "methods"});
    ObjectDef o;
    o.id = d.at("id").str();
    d.at("methods").each([&](const Doc& m) { o.methods.push_back(read_method(m)); });
    return o;
}

BundleDef read_bundle(const Doc& d) {
    d.allow_only({"id", "objects"});
    BundleDef b;
    b.id = d.at("id").str();
    d.at("objects").each([&](const Doc& o) { b.objects.push_back(read_object(o)); });
    return b;
}

SystemDef read_system_def(const Doc& d) {
    d.allow_only({"format_version", "kind", "init_bundle", "bundles", "catalog"});
    SystemDef def;
    def.init_bundle = d.at("init_bundle").str();
    d.at("bundles").each([&](const Doc& b) { def.bundles.push_back(read_bundle(b)); });
    if (d.has("catalog")) {
        const Doc cat = d.at("catalog");
        cat.allow_only({"bundles", "objects"});
        if (cat.has("bundles"))
            cat.at("bundles").each([&](const Doc& b) {
                BundleDef bd = read_bundle(b);
                if (def.bundle_catalog.count(bd.id))
                    b.fail("duplicate bundle \"" + bd.id + "\" in catalog");
                def.bundle_catalog.emplace(bd.id, std::move(bd));
            });
        if (cat.has("objects"))
            cat.at("objects").each([&](const Doc& o) {
                ObjectDef od = read_object(o);
                if (def.object_catalog.count(od.id))
                    o.fail("duplicate object \"" + od.id + "\" in catalog");
                def.object_catalog.emplace(od.id, std::move(od));
            });
    }
    for (const Violation& v : validate(def))
        if (v.severity == Severity::Error) d.fail(v.message);
    return def;
}

ordered_json write_action(const Action& a) {
    ordered_json out;
    if (const auto* call = std::get_if<CallAction>(&a)) {
        out["op"] = "call";
        out["method"] = call->method;
        out["object"] = call->object;
        out["bundle"] = call->bundle;
    } else if (const auto* add = std::get_if<AddBundleAction>(&a)) {
        out["op"] = "add_bundle";
        out["bundle"] = add->bundle;
    } else if (const auto* rem = std::get_if<RemoveBundleAction>(&a)) {
        out["op"] = "remove_bundle";
        out["bundle"] = rem->bundle;
    } else if (const auto* create = std::get_if<CreateObjectAction>(&a)) {
        out["op"] = "create_object";
        out["object"] = create->object;
        out["bundle"] = create->bundle;
    } else if (const auto* del = std::get_if<DeleteObjectAction>(&a)) {
        out["op"] = "delete_object";
        out["object"] = del->object;
        out["bundle"] = del->bundle;
    }
    return out;
}

ordered_json write_method(const MethodDef& m) {
    ordered_json out;
    out["name"] = m.name;
    out["locations"] = m.locations;
    out["initial"] = m.initial;
    ordered_json edges = ordered_json::array();
    for (const MethodEdge& e : m.edges) {
        ordered_json ej;
        ej["from"] = e.from;
        ej["to"] = e.to;
        if (!e.actions.empty()) {
            ordered_json actions = ordered_json::array();
            for (const Action& a : e.actions) actions.push_back(write_action(a));
            ej["actions"] = std::move(actions);
        }
        edges.push_back(std::move(ej));
    }
    out["edges"] = std::move(edges);
    return out;
}

ordered_json write_object(const ObjectDef& o) {
    ordered_json out;
    out["id"] = o.id;
    ordered_json methods = ordered_json::array();
    for (const MethodDef& m : o.methods) methods.push_back(write_method(m));
    out["methods"] = std::move(methods);
    return out;
}

ordered_json write_bundle(const BundleDef& b) {
    ordered_json out;
    out["id"] = b.id;
    ordered_json objects = ordered_json::array();
    for (const ObjectDef& o : b.objects) objects.push_back(write_object(o));
    out["objects"] = std::move(objects);
    return out;
}

ordered_json write_system_def(const SystemDef& def) {
    ordered_json out;
    out["init_bundle"] = def.init_bundle;
    ordered_json bundles = ordered_json::array();
    for (const BundleDef& b : def.bundles) bundles.push_back(write_bundle(b));
    out["bundles"] = std::move(bundles);
    if (!def.bundle_catalog.empty() || !def.object_catalog.empty()) {
        ordered_json cat;
        if (!def.bundle_catalog.empty()) {
            ordered_json arr = ordered_json::array();
            for (const auto& [id, b] : def.bundle_catalog) arr.push_back(write_bundle(b));
            cat["bundles"] = std::move(arr);
        }
        if (!def.object_catalog.empty()) {
            ordered_json arr = ordered_json::array();
            for (const auto& [id, o] : def.object_catalog) arr.push_back(write_object(o));
            cat["objects"] = std::move(arr);
        }
        out["catalog"] = std::move(cat);
    }
    return out;
}

// ---------------------------------------------------------------------------
// scripts

Script read_script(const Doc& d) {
    d.allow_only({"format_version", "kind", "steps"});
    Script script;
    d.at("steps").each([&](const Doc& s) {
        s.allow_only({"do", "bundle", "object", "method", "to", "call_id"});
        ScriptStep step;
        const std::string what = s.at("do").str();
        if (what == "execute")
            step.kind = StepDescriptor::Kind::Execute;
        else if (what == "return")
            step.kind = StepDescriptor::Kind::Return;
        else
            s.at("do").fail("step \"do\" must be execute or return");
        step.bundle = s.at("bundle").str();
        step.object = s.at("object").str();
        step.method = s.at("method").str();
        if (s.has("to")) step.to = s.at("to").str();
        if (s.has("call_id")) step.call_id = static_cast<std::uint64_t>(s.at("call_id").integer());
        script.steps.push_back(std::move(step));
    });
    return script;
}

ordered_json write_script(const Script& script) {
    ordered_json out;
    ordered_json steps = ordered_json::array();
    for (const ScriptStep& s : script.steps) {
        ordered_json sj;
        sj["do"] = s.kind == StepDescriptor::Kind::Execute ? "execute" : "return";
        sj["bundle"] = s.bundle;
        sj["object"] = s.object;
        sj["method"] = s.method;
        if (s.to) sj["to"] = *s.to;
        if (s.call_id) sj["call_id"] = static_cast<std::int64_t>(*s.call_id);
        steps.push_back(std::move(sj));
    }
    out["steps"] = std::move(steps);
    return out;
}

// ---------------------------------------------------------------------------
// verdicts and synthesis results

ordered_json write_state(const std::vector<std::string>& names, const ProductState& state) {
    ordered_json out;
    for (std::size_t i = 0; i < state.size(); ++i)
        out[i < names.size() ? names[i] : std::to_string(i)] = state[i];
    return out;
}

ProductState read_state(const Doc& d, const std::vector<std::string>& names) {
    ProductState state;
    for (const std::string& n : names) state.push_back(d.at(n).str());
    return state;
}

ordered_json write_trace(const Trace& trace) {
    ordered_json out = ordered_json::array();
    for (const TraceStep& s : trace) {
        ordered_json sj;
        sj["label"] = s.label;
        sj["components"] = s.components;
        sj["destinations"] = s.destinations;
        out.push_back(std::move(sj));
    }
    return out;
}

Trace read_trace(const Doc& d) {
    Trace trace;
    d.each([&](const Doc& s) {
        s.allow_only({"label", "components", "destinations"});
        TraceStep step;
        step.label = s.at("label").str();
        s.at("components").each([&](const Doc& c) { step.components.push_back(c.str()); });
        s.at("destinations").each([&](const Doc& c) { step.destinations.push_back(c.str()); });
        trace.push_back(std::move(step));
    });
    return trace;
}

ordered_json write_verdict(const AnalysisVerdict& v) {
    ordered_json out;
    out["components"] = v.component_names;
    out["explored"] = static_cast<std::int64_t>(v.explored);
    out["complete"] = v.complete;
    ordered_json deadlocks = ordered_json::array();
    for (const DeadlockReport& d : v.deadlocks) {
        ordered_json dj;
        dj["state"] = write_state(v.component_names, d.state);
        dj["trace"] = write_trace(d.trace);
        deadlocks.push_back(std::move(dj));
    }
    out["deadlocks"] = std::move(deadlocks);
    ordered_json witnesses = ordered_json::array();
    for (const IncompatibilityReport& w : v.incompatibilities) {
        ordered_json wj;
        wj["state"] = write_state(v.component_names, w.state);
        wj["sender"] = w.sender;
        wj["label"] = write_label(w.label);
        wj["refuser"] = w.refuser;
        wj["trace"] = write_trace(w.trace);
        witnesses.push_back(std::move(wj));
    }
    out["incompatibilities"] = std::move(witnesses);
    ordered_json terminals = ordered_json::array();
    for (const ProductState& s : v.terminal_states)
        terminals.push_back(write_state(v.component_names, s));
    out["terminal_states"] = std::move(terminals);
    return out;
}

AnalysisVerdict read_verdict(const Doc& d, bool nested) {
    if (nested)
        d.allow_only({"components", "explored", "complete", "deadlocks", "incompatibilities",
                      "terminal_states"});
    else
        d.allow_only({"format_version", "kind", "components", "explored", "complete", "deadlocks",
                      "incompatibilities", "terminal_states"});
    AnalysisVerdict v;
    d.at("components").each([&](const Doc& c) { v.component_names.push_back(c.str()); });
    v.explored = static_cast<std::size_t>(d.at("explored").integer());
    v.complete = d.at("complete").boolean();
    d.at("deadlocks").each([&](const Doc& dj) {
        dj.allow_only({"state", "trace"});
        v.deadlocks.push_back(DeadlockReport{read_state(dj.at("state"), v.component_names),
                                             read_trace(dj.at("trace"))});
    });
    d.at("incompatibilities").each([&](const Doc& wj) {
        wj.allow_only({"state", "sender", "label", "refuser", "trace"});
        IncompatibilityReport w;
        w.state = read_state(wj.at("state"), v.component_names);
        w.sender = wj.at("sender").str();
        w.label = read_alphabet_label(wj.at("label"));
        w.refuser = wj.at("refuser").str();
        w.trace = read_trace(wj.at("trace"));
        v.incompatibilities.push_back(std::move(w));
    });
    d.at("terminal_states").each(
        [&](const Doc& s) { v.terminal_states.push_back(read_state(s, v.component_names)); });
    return v;
}

ordered_json write_synthesis_result(const SynthesisResult& r) {
    ordered_json out;
    out["status"] = synthesis_status_name(r.status);
    ordered_json rules = ordered_json::array();
    for (const PriorityRule& rule : r.rules) {
        ordered_json rj;
        rj["component"] = rule.component;
        rj["lower"] = write_label(rule.lower);
        rj["higher"] = write_label(rule.higher);
        rules.push_back(std::move(rj));
    }
    out["rules"] = std::move(rules);
    out["residual"] = write_verdict(r.residual);
    out["original"] = write_verdict(r.original);
    ordered_json elim = ordered_json::array();
    for (const auto& states : r.eliminated_per_rule) {
        ordered_json arr = ordered_json::array();
        for (const ProductState& s : states)
            arr.push_back(write_state(r.original.component_names, s));
        elim.push_back(std::move(arr));
    }
    out["eliminated_per_rule"] = std::move(elim);
    return out;
}

SynthesisResult read_synthesis_result(const Doc& d) {
    d.allow_only({"format_version", "kind", "status", "rules", "residual", "original",
                  "eliminated_per_rule"});
    SynthesisResult r;
    const std::string status = d.at("status").str();
    if (status == "solved")
        r.status = SynthesisStatus::Solved;
    else if (status == "unsolvable")
        r.status = SynthesisStatus::Unsolvable;
    else if (status == "bound_exceeded")
        r.status = SynthesisStatus::BoundExceeded;
    else
        d.at("status").fail("unknown synthesis status \"" + status + "\"");
    d.at("rules").each([&](const Doc& rj) {
        rj.allow_only({"component", "lower", "higher"});
        r.rules.push_back(PriorityRule{rj.at("component").str(),
                                       read_alphabet_label(rj.at("lower")),
                                       read_alphabet_label(rj.at("higher"))});
    });
    r.residual = read_verdict(d.at("residual"), true);
    r.original = read_verdict(d.at("original"), true);
    d.at("eliminated_per_rule").each([&](const Doc& arr) {
        std::vector<ProductState> states;
        arr.each([&](const Doc& s) {
            states.push_back(read_state(s, r.original.component_names));
        });
        r.eliminated_per_rule.push_back(std::move(states));
    });
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// envelope

ModelDocument load(const std::string& bytes) {
    detail::JsonPositions positions;
    const ordered_json root = detail::parse_json(bytes, positions);
    const Doc doc(root, positions, "");
    if (!root.is_object()) doc.fail("document root must be an object");

    const std::int64_t version = doc.at("format_version").integer();
    if (version != format_version) {
        const auto [line, col] = positions.of("/format_version");
        throw Error(errc::unsupported_version,
                    "format_version " + std::to_string(version) + " is not supported", line, col);
    }
    const std::string kind = doc.at("kind").str();

    ModelDocument out;
    out.version = static_cast<int>(version);
    if (kind == "behavioral_type") {
        out.kind = PayloadKind::BehavioralType;
        out.payload = read_behavioral_type(doc, false);
    } else if (kind == "component_system") {
        out.kind = PayloadKind::ComponentSystem;
        out.payload = read_component_system(doc);
    } else if (kind == "system_def") {
        out.kind = PayloadKind::SystemDef;
        out.payload = read_system_def(doc);
    } else if (kind == "script") {
        out.kind = PayloadKind::Script;
        out.payload = read_script(doc);
    } else if (kind == "verdict") {
        out.kind = PayloadKind::Verdict;
        out.payload = read_verdict(doc, false);
    } else if (kind == "synthesis_result") {
        out.kind = PayloadKind::SynthesisResult;
        out.payload = read_synthesis_result(doc);
    } else {
        doc.at("kind").fail("unknown document kind \"" + kind + "\"");
    }
    return out;
}

std::string save(const ModelDocument& doc) {
    ordered_json body;
    switch (doc.kind) {
        case PayloadKind::BehavioralType:
            write_behavioral_type_fields(body, std::get<BehavioralType>(doc.payload));
            break;
        case PayloadKind::ComponentSystem:
            body = write_component_system(std::get<ComponentSystem>(doc.payload));
            break;
        case PayloadKind::SystemDef:
            body = write_system_def(std::get<SystemDef>(doc.payload));
            break;
        case PayloadKind::Script:
            body = write_script(std::get<Script>(doc.payload));
            break;
        case PayloadKind::Verdict:
            body = write_verdict(std::get<AnalysisVerdict>(doc.payload));
            break;
        case PayloadKind::SynthesisResult:
            body = write_synthesis_result(std::get<SynthesisResult>(doc.payload));
            break;
    }
    ordered_json out;
    out["format_version"] = doc.version;
    out["kind"] = payload_kind_name(doc.kind);
    for (auto& [key, value] : body.items()) out[key] = std::move(value);
    return out.dump(2) + "\n";
}

ModelDocument load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::parse_error, "cannot open " + path, 1, 1);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return load(buffer.str());
    } catch (const Error& e) {
        if (e.line() && e.column())
            throw Error(e.code(), path + ": " + e.what(), *e.line(), *e.column());
        throw Error(e.code(), path + ": " + e.what());
    }
}

void save_file(const ModelDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::parse_error, "cannot open " + path + " for writing", 1, 1);
    out << save(doc);
}

namespace {

[[noreturn]] void wrong_kind(const ModelDocument& doc, const std::string& context,
                             const char* wanted) {
    throw Error(errc::schema_error, context + ": expected a " + wanted + " document, found " +
                                        payload_kind_name(doc.kind));
}

} // namespace

const BehavioralType& as_behavioral_type(const ModelDocument& doc, const std::string& context) {
    if (doc.kind != PayloadKind::BehavioralType) wrong_kind(doc, context, "behavioral_type");
    return std::get<BehavioralType>(doc.payload);
}

const ComponentSystem& as_component_system(const ModelDocument& doc, const std::string& context) {
    if (doc.kind != PayloadKind::ComponentSystem) wrong_kind(doc, context, "component_system");
    return std::get<ComponentSystem>(doc.payload);
}

const SystemDef& as_system_def(const ModelDocument& doc, const std::string& context) {
    if (doc.kind != PayloadKind::SystemDef) wrong_kind(doc, context, "system_def");
    return std::get<SystemDef>(doc.payload);
}

const Script& as_script(const ModelDocument& doc, const std::string& context) {
    if (doc.kind != PayloadKind::Script) wrong_kind(doc, context, "script");
    return std::get<Script>(doc.payload);
}

} // namespace bht
