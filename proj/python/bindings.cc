#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bht/errors.hh"
#include "bht/fixtures.hh"
#include "bht/model_io.hh"
#include "bht/priority_synth.hh"
#include "bht/registry.hh"

namespace py = pybind11;
using namespace bht;

namespace {

py::object payload_of(const ModelDocument& doc) {
    switch (doc.kind) {
        case PayloadKind::BehavioralType: return py::cast(std::get<BehavioralType>(doc.payload));
        case PayloadKind::ComponentSystem:
            return py::cast(std::get<ComponentSystem>(doc.payload));
        case PayloadKind::SystemDef: return py::cast(std::get<SystemDef>(doc.payload));
        case PayloadKind::Script: return py::cast(std::get<Script>(doc.payload));
        case PayloadKind::Verdict: return py::cast(std::get<AnalysisVerdict>(doc.payload));
        case PayloadKind::SynthesisResult:
            return py::cast(std::get<SynthesisResult>(doc.payload));
    }
    return py::none();
}

} // namespace

PYBIND11_MODULE(_bht, m) {
    m.doc() = "behavioral type engine for dynamically reconfigurable components";

    py::register_exception<Error>(m, "EngineError");

    py::enum_<LabelKind>(m, "LabelKind")
        .value("CallOut", LabelKind::CallOut)
        .value("CallIn", LabelKind::CallIn)
        .value("CreateObject", LabelKind::CreateObject)
        .value("DeleteObject", LabelKind::DeleteObject)
        .value("AddBundle", LabelKind::AddBundle)
        .value("RemoveBundle", LabelKind::RemoveBundle)
        .value("Internal", LabelKind::Internal)
        .value("Tau", LabelKind::Tau);

    py::class_<Label>(m, "Label")
        .def(py::init([](const std::string& name, LabelKind kind,
                         const std::optional<std::string>& target) {
                 return Label{name, kind, target};
             }),
             py::arg("name"), py::arg("kind") = LabelKind::Internal,
             py::arg("target") = std::nullopt)
        .def_readwrite("name", &Label::name)
        .def_readwrite("kind", &Label::kind)
        .def_readwrite("target", &Label::target)
        .def("__repr__", [](const Label& l) { return "<Label " + label_to_string(l) + ">"; });

    py::class_<Edge>(m, "Edge")
        .def(py::init([](const std::string& from, const Label& label, const std::string& to) {
                 return Edge{from, label, to};
             }),
             py::arg("src"), py::arg("label"), py::arg("dst"))
        .def_readwrite("src", &Edge::from)
        .def_readwrite("label", &Edge::label)
        .def_readwrite("dst", &Edge::to);

    py::class_<BehavioralType>(m, "BehavioralType")
        .def(py::init<>())
        .def_readwrite("aspect", &BehavioralType::aspect)
        .def_readwrite("alphabet", &BehavioralType::alphabet)
        .def_readwrite("locations", &BehavioralType::locations)
        .def_readwrite("initial", &BehavioralType::initial)
        .def_readwrite("edges", &BehavioralType::edges)
        .def_readwrite("error_location", &BehavioralType::error_location)
        .def("__repr__", [](const BehavioralType& bt) {
            return "<BehavioralType aspect=" + bt.aspect + " locations=" +
                   std::to_string(bt.locations.size()) + " edges=" +
                   std::to_string(bt.edges.size()) + ">";
        });

    py::class_<Violation>(m, "Violation")
        .def_property_readonly("is_error",
                               [](const Violation& v) { return v.severity == Severity::Error; })
        .def_readonly("message", &Violation::message)
        .def("__repr__", [](const Violation& v) { return "<Violation " + v.message + ">"; });

    py::class_<Difference>(m, "Difference")
        .def_readonly("location_a", &Difference::location_a)
        .def_readonly("location_b", &Difference::location_b)
        .def_readonly("label", &Difference::label)
        .def_readonly("reason", &Difference::reason);

    py::class_<EqualityResult>(m, "EqualityResult")
        .def_readonly("equal", &EqualityResult::equal)
        .def_readonly("mapping", &EqualityResult::mapping)
        .def_readonly("first_difference", &EqualityResult::first_difference)
        .def("__bool__", [](const EqualityResult& r) { return r.equal; });

    py::enum_<ProjectionMode>(m, "ProjectionMode")
        .value("Delete", ProjectionMode::Delete)
        .value("Tau", ProjectionMode::Tau);

    m.def("validate", [](const BehavioralType& bt) { return validate(bt); });
    m.def("is_valid", &is_valid);
    m.def("project", &project, py::arg("bt"), py::arg("keep"), py::arg("mode"));
    m.def("complete",
          [](const BehavioralType& bt, const std::vector<Label>& full) {
              return complete(bt, full);
          },
          py::arg("bt"), py::arg("full_alphabet"));
    m.def("minimize", &minimize);
    m.def("normalize", &normalize);
    m.def("equals", &equals, py::arg("a"), py::arg("b"),
          py::arg("compare_location_names") = false);
    m.def("refines",
          py::overload_cast<const BehavioralType&, const BehavioralType&,
                            const std::vector<Label>&>(&refines),
          py::arg("impl"), py::arg("spec"), py::arg("considered"));
    m.def("refines",
          py::overload_cast<const BehavioralType&, const BehavioralType&>(&refines),
          py::arg("impl"), py::arg("spec"));

    // composition
    py::class_<PriorityRule>(m, "PriorityRule")
        .def(py::init([](const std::string& component, const Label& lower, const Label& higher) {
                 return PriorityRule{component, lower, higher};
             }),
             py::arg("component"), py::arg("lower"), py::arg("higher"))
        .def_readwrite("component", &PriorityRule::component)
        .def_readwrite("lower", &PriorityRule::lower)
        .def_readwrite("higher", &PriorityRule::higher)
        .def("__repr__", [](const PriorityRule& r) {
            return "<PriorityRule " + r.component + ": " + r.lower.name + " < " + r.higher.name +
                   ">";
        });

    py::class_<ComponentSystem>(m, "ComponentSystem")
        .def(py::init<>())
        .def_readwrite("components", &ComponentSystem::components)
        .def_readwrite("priorities", &ComponentSystem::priorities)
        .def("add", [](ComponentSystem& sys, const std::string& name, const BehavioralType& bt) {
            sys.components.emplace_back(name, bt);
        });

    py::class_<TraceStep>(m, "TraceStep")
        .def_readonly("label", &TraceStep::label)
        .def_readonly("components", &TraceStep::components)
        .def_readonly("destinations", &TraceStep::destinations);

    py::class_<DeadlockReport>(m, "DeadlockReport")
        .def_readonly("state", &DeadlockReport::state)
        .def_readonly("trace", &DeadlockReport::trace);

    py::class_<IncompatibilityReport>(m, "IncompatibilityReport")
        .def_readonly("state", &IncompatibilityReport::state)
        .def_readonly("sender", &IncompatibilityReport::sender)
        .def_readonly("label", &IncompatibilityReport::label)
        .def_readonly("refuser", &IncompatibilityReport::refuser)
        .def_readonly("trace", &IncompatibilityReport::trace);

    py::class_<AnalysisVerdict>(m, "AnalysisVerdict")
        .def_readonly("component_names", &AnalysisVerdict::component_names)
        .def_readonly("deadlocks", &AnalysisVerdict::deadlocks)
        .def_readonly("incompatibilities", &AnalysisVerdict::incompatibilities)
        .def_readonly("terminal_states", &AnalysisVerdict::terminal_states)
        .def_readonly("explored", &AnalysisVerdict::explored)
        .def_readonly("complete", &AnalysisVerdict::complete)
        .def("clean", &AnalysisVerdict::clean);

    m.def("detect_deadlocks", &detect_deadlocks, py::arg("system"),
          py::arg("bound") = std::nullopt);
    m.def("check_compatibility", &check_compatibility, py::arg("system"),
          py::arg("bound") = std::nullopt);
    m.def("analyze", &analyze, py::arg("system"), py::arg("bound") = std::nullopt);
    m.def("apply_priorities", &apply_priorities);

    // synthesis
    py::enum_<SynthesisStatus>(m, "SynthesisStatus")
        .value("Solved", SynthesisStatus::Solved)
        .value("Unsolvable", SynthesisStatus::Unsolvable)
        .value("BoundExceeded", SynthesisStatus::BoundExceeded);

    py::class_<SynthesisResult>(m, "SynthesisResult")
        .def_readonly("status", &SynthesisResult::status)
        .def_readonly("rules", &SynthesisResult::rules)
        .def_readonly("residual", &SynthesisResult::residual)
        .def_readonly("original", &SynthesisResult::original);

    m.def("synthesize", &synthesize, py::arg("system"),
          py::arg("max_rules") = default_max_rules);
    m.def("explain", &explain);

    // registry
    py::class_<ServiceRecord>(m, "ServiceRecord")
        .def_readonly("service_id", &ServiceRecord::service_id)
        .def_readonly("owner", &ServiceRecord::owner)
        .def_readonly("interfaces", &ServiceRecord::interfaces)
        .def("behavior_models", &ServiceRecord::behavior_models);

    py::class_<Registry>(m, "Registry")
        .def(py::init<>())
        .def("register_service",
             [](Registry& reg, const std::string& owner, std::vector<std::string> interfaces,
                const std::vector<BehavioralType>& models) {
                 std::map<std::string, PropertyValue> props;
                 if (!models.empty()) props[behavior_property] = models;
                 return reg.register_service(owner, std::move(interfaces), std::move(props));
             },
             py::arg("owner"), py::arg("interfaces"),
             py::arg("behavior") = std::vector<BehavioralType>{})
        .def("unregister", &Registry::unregister)
        .def("query", &Registry::query, py::arg("interface_name") = std::nullopt,
             py::arg("aspect") = std::nullopt)
        .def("discover_compatible", &Registry::discover_compatible, py::arg("required"),
             py::arg("peer_aspect") = std::nullopt);

    m.def("adapt_protocol", &adapt_protocol, py::arg("own"), py::arg("peer"));
    m.def("complementary_aspect", &complementary_aspect);

    // simulator
    py::class_<SystemDef>(m, "SystemDef").def("__repr__", [](const SystemDef& def) {
        return "<SystemDef bundles=" + std::to_string(def.bundles.size()) + ">";
    });
    py::class_<Script>(m, "Script").def("__repr__", [](const Script& s) {
        return "<Script steps=" + std::to_string(s.steps.size()) + ">";
    });

    py::class_<MonitorVerdict>(m, "MonitorVerdict")
        .def_readonly("conformant", &MonitorVerdict::conformant)
        .def_readonly("violation_seq", &MonitorVerdict::violation_seq)
        .def_readonly("events_checked", &MonitorVerdict::events_checked)
        .def("__bool__", [](const MonitorVerdict& v) { return v.conformant; });

    m.def("run_seeded",
          [](const SystemDef& def, std::uint64_t seed, std::size_t max_steps) {
              const auto result = std::get<RunResult>(run(def, SeededRandom{seed, max_steps}));
              return py::make_tuple(render_event_log(result.final_state.event_log),
                                    result.steps_taken, result.blocked);
          },
          py::arg("system"), py::arg("seed"), py::arg("max_steps") = 1000,
          "returns (event_log, steps_taken, blocked)");
    m.def("run_script",
          [](const SystemDef& def, const Script& script) {
              const auto result = std::get<RunResult>(run(def, script));
              return py::make_tuple(render_event_log(result.final_state.event_log),
                                    result.steps_taken, result.blocked);
          },
          py::arg("system"), py::arg("script"));
    m.def("run_exhaustive",
          [](const SystemDef& def, std::size_t depth) {
              const auto s = std::get<ExhaustiveSummary>(run(def, ExhaustiveDepthBounded{depth}));
              py::dict out;
              out["configurations"] = s.configurations;
              out["terminal_configs"] = s.terminal_configs;
              out["maximal_traces"] = s.maximal_traces;
              out["truncated_traces"] = s.truncated_traces;
              return out;
          },
          py::arg("system"), py::arg("depth"));
    m.def("monitor",
          [](const std::string& event_log, const std::string& bundle, const std::string& object,
             const BehavioralType& bt) {
              return monitor(parse_event_log(event_log), bundle, object, bt);
          },
          py::arg("event_log"), py::arg("bundle"), py::arg("object"), py::arg("type"));

    // documents
    m.def("load", [](const std::string& text) { return payload_of(load(text)); },
          "parse a document and return its payload");
    m.def("load_path", [](const std::string& path) { return payload_of(load_file(path)); });
    m.def("save", [](const BehavioralType& bt) { return save(document(bt)); });
    m.def("save", [](const ComponentSystem& sys) { return save(document(sys)); });
    m.def("save", [](const SystemDef& def) { return save(document(def)); });
    m.def("save", [](const Script& s) { return save(document(s)); });
    m.def("save", [](const AnalysisVerdict& v) { return save(document(v)); });
    m.def("save", [](const SynthesisResult& r) { return save(document(r)); });
    m.def("fixture_dir", &fixture_dir);
    m.def("fixture_path", &fixture_path);

    m.attr("__version__") = "0.1.0";
}
