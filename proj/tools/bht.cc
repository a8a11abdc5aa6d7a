// Command-line front end for the behavioral type engine: development-time
// checks (validate/normalize/minimize/complete/equal/refine), system analyses
// (deadlock/compat/synth), the OSGi-style simulator and the trace monitor.
//
// Exit codes: 0 = clean / property holds, 1 = property violated (deadlock
// found, not equal, monitor violation, ...), 2 = usage or I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "bht/errors.hh"
#include "bht/fixtures.hh"
#include "bht/model_io.hh"
#include "bht/priority_synth.hh"
#include "bht/registry.hh"

namespace {

using namespace bht;

std::string state_str(const std::vector<std::string>& names, const ProductState& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        if (i < names.size()) out += names[i] + "=";
        out += s[i];
    }
    return out + ")";
}

std::string trace_str(const Trace& trace) {
    if (trace.empty()) return "  (initial state)\n";
    std::string out;
    for (const TraceStep& step : trace) {
        out += "  " + step.label + " [";
        for (std::size_t i = 0; i < step.components.size(); ++i) {
            if (i) out += ", ";
            out += step.components[i] + "->" + step.destinations[i];
        }
        out += "]\n";
    }
    return out;
}

void print_verdict(std::ostream& os, const AnalysisVerdict& v, bool with_deadlocks,
                   bool with_compat) {
    os << "explored " << v.explored << " state(s)" << (v.complete ? "" : " (incomplete)")
       << ", " << v.terminal_states.size() << " terminal\n";
    if (with_deadlocks) {
        if (v.deadlocks.empty()) {
            os << "no deadlocks\n";
        } else {
            os << v.deadlocks.size() << " deadlock state(s):\n";
            for (const DeadlockReport& d : v.deadlocks) {
                os << " " << state_str(v.component_names, d.state) << " via\n"
                   << trace_str(d.trace);
            }
        }
    }
    if (with_compat) {
        if (v.incompatibilities.empty()) {
            os << "no incompatibility witnesses\n";
        } else {
            os << v.incompatibilities.size() << " incompatibility witness(es):\n";
            for (const IncompatibilityReport& w : v.incompatibilities) {
                os << " " << state_str(v.component_names, w.state) << ": " << w.sender
                   << " offers " << w.label.name << " refused by " << w.refuser << ", via\n"
                   << trace_str(w.trace);
            }
        }
    }
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(errc::parse_error, "cannot open " + out_path + " for writing", 1, 1);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::parse_error, "cannot open " + path, 1, 1);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<Label> labels_by_names(const std::vector<Label>& pool, const std::string& csv) {
    std::vector<Label> out;
    std::istringstream in(csv);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) continue;
        bool found = false;
        for (const Label& l : pool) {
            if (l.name == name && !contains_label(out, l)) {
                out.push_back(l);
                found = true;
            }
        }
        if (!found)
            throw Error(errc::unknown_label, "label \"" + name + "\" not in either alphabet");
    }
    return out;
}

// --- subcommand bodies (return the process exit code) ----------------------

int cmd_validate(const std::string& file) {
    const auto doc = load_file(file);
    std::vector<Violation> violations;
    if (doc.kind == PayloadKind::BehavioralType) {
        violations = validate(as_behavioral_type(doc, file));
    } else if (doc.kind == PayloadKind::ComponentSystem) {
        for (const auto& [name, bt] : as_component_system(doc, file).components)
            for (Violation v : validate(bt)) {
                v.message = name + ": " + v.message;
                violations.push_back(std::move(v));
            }
    } else if (doc.kind == PayloadKind::SystemDef) {
        violations = validate(as_system_def(doc, file));
    }
    // load() already rejects structurally broken documents; surviving entries
    // are warnings or cross-checks
    bool bad = false;
    for (const Violation& v : violations) {
        std::cout << (v.severity == Severity::Error ? "error: " : "warning: ") << v.message
                  << "\n";
        bad = bad || v.severity == Severity::Error;
    }
    if (violations.empty()) std::cout << "ok\n";
    return bad ? 1 : 0;
}

int transform(const std::string& file, const std::string& out_path,
              BehavioralType (*op)(const BehavioralType&)) {
    const auto doc = load_file(file);
    write_output(save(document(op(as_behavioral_type(doc, file)))), out_path);
    return 0;
}

int cmd_complete(const std::string& file, const std::string& alphabet_file,
                 const std::string& out_path) {
    const auto doc = load_file(file);
    const auto alpha_doc = load_file(alphabet_file);
    const BehavioralType& bt = as_behavioral_type(doc, file);
    const BehavioralType& alpha = as_behavioral_type(alpha_doc, alphabet_file);
    write_output(save(document(complete(bt, label_union(bt.alphabet, alpha.alphabet)))),
                 out_path);
    return 0;
}

int cmd_equal(const std::string& a_file, const std::string& b_file, bool names) {
    const BehavioralType a = as_behavioral_type(load_file(a_file), a_file);
    const BehavioralType b = as_behavioral_type(load_file(b_file), b_file);
    const EqualityResult r = equals(a, b, names);
    if (r.equal) {
        std::cout << "equal\n";
        for (const auto& [la, lb] : r.mapping) std::cout << "  " << la << " <-> " << lb << "\n";
        return 0;
    }
    std::cout << "not equal";
    if (r.first_difference) {
        std::cout << ": " << r.first_difference->reason << " at (" << r.first_difference->location_a
                  << ", " << r.first_difference->location_b << ")";
        if (r.first_difference->label) std::cout << " on label " << r.first_difference->label->name;
    }
    std::cout << "\n";
    return 1;
}

int cmd_refine(const std::string& impl_file, const std::string& spec_file,
               const std::string& labels_csv) {
    const BehavioralType impl = as_behavioral_type(load_file(impl_file), impl_file);
    const BehavioralType spec = as_behavioral_type(load_file(spec_file), spec_file);
    EqualityResult r;
    if (labels_csv.empty()) {
        r = refines(impl, spec);
    } else {
        r = refines(impl, spec, labels_by_names(label_union(impl.alphabet, spec.alphabet),
                                                labels_csv));
    }
    std::cout << (r.equal ? "refines\n" : "does not refine\n");
    if (!r.equal && r.first_difference && r.first_difference->label)
        std::cout << "  first difference on label " << r.first_difference->label->name << "\n";
    return r.equal ? 0 : 1;
}

int cmd_analysis(const std::string& file, bool deadlocks, bool compat, bool json,
                 std::size_t bound) {
    const ComponentSystem sys = as_component_system(load_file(file), file);
    AnalysisVerdict v;
    if (deadlocks && compat)
        v = analyze(sys, bound);
    else if (deadlocks)
        v = detect_deadlocks(sys, bound);
    else
        v = check_compatibility(sys, bound);
    if (json)
        std::cout << save(document(v));
    else
        print_verdict(std::cout, v, deadlocks, compat);
    const bool found = (deadlocks && !v.deadlocks.empty()) ||
                       (compat && !v.incompatibilities.empty());
    return found ? 1 : 0;
}

int cmd_compat_many(const std::vector<std::string>& files, bool json, std::size_t bound,
                    unsigned threads) {
    if (files.size() == 1) return cmd_analysis(files[0], false, true, json, bound);
    std::vector<std::future<AnalysisVerdict>> futures;
    for (const std::string& file : files) {
        auto job = [file, bound] {
            return check_compatibility(as_component_system(load_file(file), file), bound);
        };
        futures.push_back(threads > 1 ? std::async(std::launch::async, job)
                                      : std::async(std::launch::deferred, job));
    }
    int rc = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const AnalysisVerdict v = futures[i].get();
        if (json) {
            std::cout << save(document(v));
        } else {
            std::cout << "== " << files[i] << "\n";
            print_verdict(std::cout, v, false, true);
        }
        if (!v.incompatibilities.empty()) rc = 1;
    }
    return rc;
}

int cmd_synth(const std::string& file, std::size_t max_rules, bool json) {
    const ComponentSystem sys = as_component_system(load_file(file), file);
    const SynthesisResult r = synthesize(sys, max_rules);
    if (json)
        std::cout << save(document(r));
    else
        std::cout << explain(r);
    return r.status == SynthesisStatus::Solved ? 0 : 1;
}

int cmd_simulate(const std::string& file, std::optional<std::uint64_t> seed, std::size_t steps,
                 bool exhaustive, std::size_t depth, const std::string& script_file,
                 const std::string& out_path) {
    const SystemDef def = as_system_def(load_file(file), file);
    if (exhaustive) {
        const auto outcome = run(def, ExhaustiveDepthBounded{depth});
        const auto& summary = std::get<ExhaustiveSummary>(outcome);
        std::cout << "configurations: " << summary.configurations << "\n"
                  << "terminal configurations: " << summary.terminal_configs << "\n"
                  << "maximal traces: " << summary.maximal_traces << "\n"
                  << "truncated traces: " << summary.truncated_traces << "\n";
        return 0;
    }
    RunOutcome outcome;
    if (!script_file.empty()) {
        const Script script = as_script(load_file(script_file), script_file);
        outcome = run(def, script);
    } else {
        outcome = run(def, SeededRandom{seed.value_or(0), steps});
    }
    const auto& result = std::get<RunResult>(outcome);
    write_output(render_event_log(result.final_state.event_log), out_path);
    std::cerr << "steps: " << result.steps_taken << (result.blocked ? ", blocked" : "") << "\n";
    return 0;
}

int cmd_monitor(const std::string& log_file, const std::string& subject,
                const std::string& type_file) {
    const auto slash = subject.find('/');
    if (slash == std::string::npos)
        throw Error(errc::schema_error, "subject must be bundle/object, got \"" + subject + "\"");
    const auto log = parse_event_log(read_text_file(log_file));
    const BehavioralType bt = as_behavioral_type(load_file(type_file), type_file);
    const MonitorVerdict v =
        monitor(log, subject.substr(0, slash), subject.substr(slash + 1), bt);
    if (v.conformant) {
        std::cout << "conformant (" << v.events_checked << " event(s) checked)\n";
        return 0;
    }
    std::cout << "violation at event " << *v.violation_seq << "\n";
    return 1;
}

int cmd_fmt(const std::string& file, bool in_place, const std::string& out_path) {
    const std::string canonical = save(load_file(file));
    write_output(canonical, in_place ? file : out_path);
    return 0;
}

int cmd_demo_booking() {
    std::cout << "# Booking-system walkthrough over the shipped fixtures.\n";
    std::cout << "# 1. Protocol negotiation: a caller supporting two protocol versions\n";
    std::cout << "#    meets a callee that only understands the new one.\n";
    const ComponentSystem fig3 =
        as_component_system(load_fixture("fig3.bsys"), "fig3.bsys");
    const AnalysisVerdict compat = check_compatibility(fig3);
    print_verdict(std::cout, compat, false, true);

    std::cout << "# Priority synthesis steers the caller away from the refused branch:\n";
    const SynthesisResult synth = synthesize(fig3);
    std::cout << explain(synth);

    std::cout << "# The same decision through the registry adaptation helper:\n";
    const BehavioralType caller =
        as_behavioral_type(load_fixture("fig3_caller.btype"), "fig3_caller.btype");
    const BehavioralType callee =
        as_behavioral_type(load_fixture("fig3_callee.btype"), "fig3_callee.btype");
    for (const Label& l : adapt_protocol(caller, callee))
        std::cout << "chosen branch: " << l.name << "\n";

    std::cout << "# 2. Seat reservation: the per-flight load model.\n";
    const BehavioralType seats =
        as_behavioral_type(load_fixture("seat_reservation.btype"), "seat_reservation.btype");
    std::cout << "seat model: " << seats.locations.size() << " locations, "
              << seats.edges.size() << " edges, initial " << seats.initial << "\n";

    std::cout << "# 3. Two people, two flights, one seat each: the classic cross\n";
    std::cout << "#    reservation deadlock. Both flights end up full and every\n";
    std::cout << "#    cancellation needs a participant that is already stuck.\n";
    const ComponentSystem flights = as_component_system(
        load_fixture("booking_two_flights.bsys"), "booking_two_flights.bsys");
    const AnalysisVerdict deadlocks = detect_deadlocks(flights);
    print_verdict(std::cout, deadlocks, true, false);
    std::cout << "# Detection is the point here: knowing both travellers' itineraries\n";
    std::cout << "#    up front, a coordinator can compensate before seats run out.\n";

    std::cout << "# 4. Runtime view: the coordination process spawns one middleware\n";
    std::cout << "#    process per client; the monitor checks its outgoing calls.\n";
    const SystemDef booking = as_system_def(load_fixture("booking.osys"), "booking.osys");
    const auto outcome = run(booking, SeededRandom{7, 120});
    const auto& result = std::get<RunResult>(outcome);
    std::cout << "simulated " << result.steps_taken << " steps, "
              << result.final_state.event_log.size() << " events\n";
    const BehavioralType middleware = as_behavioral_type(
        load_fixture("middleware_outgoing.btype"), "middleware_outgoing.btype");
    const MonitorVerdict ok =
        monitor(result.final_state.event_log, "booking", "mw1", middleware);
    std::cout << "monitor booking/mw1 against middleware_outgoing: "
              << (ok.conformant ? "conformant" : "violation") << " (" << ok.events_checked
              << " events)\n";

    const SystemDef rogue = as_system_def(load_fixture("monitor_violation.osys"),
                                          "monitor_violation.osys");
    const Script script = as_script(load_fixture("monitor_violation.bscript"),
                                    "monitor_violation.bscript");
    const auto rogue_result = std::get<RunResult>(run(rogue, script));
    const MonitorVerdict bad =
        monitor(rogue_result.final_state.event_log, "shop", "mw", middleware);
    std::cout << "monitor shop/mw against middleware_outgoing: "
              << (bad.conformant ? "conformant" : "violation");
    if (bad.violation_seq) std::cout << " at event " << *bad.violation_seq;
    std::cout << "\n# The rogue middleware pays before touching the database.\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"behavioral type engine for dynamically reconfigurable components"};
    app.require_subcommand(1);

    std::string file, second, out_path, alphabet_file, labels_csv, script_file, subject;
    std::vector<std::string> files;
    bool names = false, json = false, exhaustive = false, in_place = false;
    std::size_t max_rules = default_max_rules, steps = 1000, depth = 6;
    std::size_t bound = default_state_bound;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;

    auto* validate_cmd = app.add_subcommand("validate", "check a document's invariants");
    validate_cmd->add_option("file", file)->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "canonical renaming and ordering");
    normalize_cmd->add_option("file", file)->required();
    normalize_cmd->add_option("-o,--output", out_path);

    auto* minimize_cmd = app.add_subcommand("minimize", "merge equivalent locations");
    minimize_cmd->add_option("file", file)->required();
    minimize_cmd->add_option("-o,--output", out_path);

    auto* complete_cmd = app.add_subcommand("complete", "add the error location");
    complete_cmd->add_option("file", file)->required();
    complete_cmd->add_option("--alphabet", alphabet_file, "type whose alphabet to complete over")
        ->required();
    complete_cmd->add_option("-o,--output", out_path);

    auto* equal_cmd = app.add_subcommand("equal", "structural equality of two types");
    equal_cmd->add_option("a", file)->required();
    equal_cmd->add_option("b", second)->required();
    equal_cmd->add_flag("--names", names, "location names must match too");

    auto* refine_cmd = app.add_subcommand("refine", "refinement over a label set");
    refine_cmd->add_option("impl", file)->required();
    refine_cmd->add_option("spec", second)->required();
    refine_cmd->add_option("--labels", labels_csv, "comma-separated label names to consider");

    auto* deadlock_cmd = app.add_subcommand("deadlock", "search for deadlocked product states");
    deadlock_cmd->add_option("system", file)->required();
    deadlock_cmd->add_flag("--json", json);
    deadlock_cmd->add_option("--bound", bound, "product state limit");

    auto* compat_cmd = app.add_subcommand("compat", "search for refused method calls");
    compat_cmd->add_option("systems", files)->required()->expected(-1);
    compat_cmd->add_flag("--json", json);
    compat_cmd->add_option("--bound", bound, "product state limit");
    compat_cmd->add_option("--threads", threads, "parallel analyses for several systems");

    auto* synth_cmd = app.add_subcommand("synth", "synthesize priority rules");
    synth_cmd->add_option("system", file)->required();
    synth_cmd->add_option("--max-rules", max_rules);
    synth_cmd->add_flag("--json", json);

    auto* sim_cmd = app.add_subcommand("simulate", "run the method-call semantics");
    sim_cmd->add_option("system", file)->required();
    sim_cmd->add_option("--seed", seed, "seeded random schedule");
    sim_cmd->add_option("--steps", steps, "step limit for seeded runs");
    sim_cmd->add_flag("--exhaustive", exhaustive, "enumerate all interleavings");
    sim_cmd->add_option("--depth", depth, "depth for --exhaustive");
    sim_cmd->add_option("--script", script_file, "replay a .bscript file");
    sim_cmd->add_option("-o,--output", out_path, "write the event log here");

    auto* monitor_cmd = app.add_subcommand("monitor", "check an event log against a type");
    monitor_cmd->add_option("log", file)->required();
    monitor_cmd->add_option("subject", subject, "bundle/object to observe")->required();
    monitor_cmd->add_option("type", second)->required();

    auto* fmt_cmd = app.add_subcommand("fmt", "rewrite a document in canonical form");
    fmt_cmd->add_option("file", file)->required();
    fmt_cmd->add_flag("-i,--in-place", in_place);
    fmt_cmd->add_option("-o,--output", out_path);

    auto* demo_cmd = app.add_subcommand("demo", "guided walkthroughs");
    std::string demo_name;
    demo_cmd->add_option("name", demo_name, "available: booking")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(file);
        if (normalize_cmd->parsed()) return transform(file, out_path, normalize);
        if (minimize_cmd->parsed()) return transform(file, out_path, minimize);
        if (complete_cmd->parsed()) return cmd_complete(file, alphabet_file, out_path);
        if (equal_cmd->parsed()) return cmd_equal(file, second, names);
        if (refine_cmd->parsed()) return cmd_refine(file, second, labels_csv);
        if (deadlock_cmd->parsed()) return cmd_analysis(file, true, false, json, bound);
        if (compat_cmd->parsed()) return cmd_compat_many(files, json, bound, threads);
        if (synth_cmd->parsed()) return cmd_synth(file, max_rules, json);
        if (sim_cmd->parsed())
            return cmd_simulate(file, seed, steps, exhaustive, depth, script_file, out_path);
        if (monitor_cmd->parsed()) return cmd_monitor(file, subject, second);
        if (fmt_cmd->parsed()) return cmd_fmt(file, in_place, out_path);
        if (demo_cmd->parsed()) {
            if (demo_name == "booking") return cmd_demo_booking();
            std::cerr << "unknown demo \"" << demo_name << "\" (available: booking)\n";
            return 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
