// The fixture corpus is self-verifying: manifest.json pins the expected
// analysis outcome of every shipped file and this suite replays them.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bht/fixtures.hh"
#include "bht/priority_synth.hh"

using namespace bht;
using nlohmann::json;

namespace {

json read_manifest() {
    std::ifstream in(manifest_path());
    REQUIRE(in);
    json manifest;
    in >> manifest;
    return manifest;
}

} // namespace

TEST_CASE("every fixture loads, validates and matches its manifest entry") {
    const json manifest = read_manifest();
    for (const json& entry : manifest.at("fixtures")) {
        const std::string file = entry.at("file");
        CAPTURE(file);
        const ModelDocument doc = load_fixture(file);
        CHECK(payload_kind_name(doc.kind) == entry.at("kind").get<std::string>());
        const json checks = entry.at("checks");

        if (checks.contains("locations")) {
            const BehavioralType& bt = as_behavioral_type(doc, file);
            CHECK(bt.locations.size() == checks.at("locations").get<std::size_t>());
            CHECK(bt.edges.size() == checks.at("edges").get<std::size_t>());
        }

        if (checks.contains("deadlocks") || checks.contains("incompatibilities")) {
            const ComponentSystem& sys = as_component_system(doc, file);
            const AnalysisVerdict v = analyze(sys);
            if (checks.contains("deadlocks"))
                CHECK(v.deadlocks.size() == checks.at("deadlocks").get<std::size_t>());
            if (checks.contains("incompatibilities"))
                CHECK(v.incompatibilities.size() ==
                      checks.at("incompatibilities").get<std::size_t>());
            if (checks.contains("deadlocks_at_least"))
                CHECK(v.deadlocks.size() >= checks.at("deadlocks_at_least").get<std::size_t>());
            if (checks.contains("all_deadlocks_have")) {
                for (const DeadlockReport& d : v.deadlocks) {
                    for (const auto& [comp, loc] :
                         checks.at("all_deadlocks_have").items()) {
                        const auto idx = component_index(sys, comp);
                        REQUIRE(idx.has_value());
                        CHECK(d.state[*idx] == loc.get<std::string>());
                    }
                }
            }
        }

        if (checks.contains("synth_status")) {
            const ComponentSystem& sys = as_component_system(doc, file);
            const SynthesisResult r = synthesize(sys);
            CHECK(synthesis_status_name(r.status) ==
                  checks.at("synth_status").get<std::string>());
            if (checks.contains("synth_rules")) {
                const json& rules = checks.at("synth_rules");
                REQUIRE(r.rules.size() == rules.size());
                for (std::size_t i = 0; i < r.rules.size(); ++i) {
                    CHECK(r.rules[i].component == rules[i].at("component").get<std::string>());
                    CHECK(r.rules[i].lower.name == rules[i].at("lower").get<std::string>());
                    CHECK(r.rules[i].higher.name == rules[i].at("higher").get<std::string>());
                }
            }
            if (checks.contains("clean_after_synth") && checks.at("clean_after_synth").get<bool>())
                CHECK(r.residual.clean());
        }

        if (checks.contains("seeded_run")) {
            const json& run_spec = checks.at("seeded_run");
            const SystemDef& def = as_system_def(doc, file);
            const auto result = std::get<RunResult>(
                run(def, SeededRandom{run_spec.at("seed").get<std::uint64_t>(),
                                      run_spec.at("steps").get<std::size_t>()}));
            CHECK(result.steps_taken >= run_spec.at("min_steps").get<std::size_t>());
        }

        if (checks.contains("monitor_conformant")) {
            const json& m = checks.at("monitor_conformant");
            const SystemDef& def = as_system_def(doc, file);
            const auto result = std::get<RunResult>(
                run(def, SeededRandom{m.at("seed").get<std::uint64_t>(),
                                      m.at("steps").get<std::size_t>()}));
            const std::string subject = m.at("subject");
            const auto slash = subject.find('/');
            const BehavioralType bt = as_behavioral_type(
                load_fixture(m.at("type").get<std::string>()), "monitor type");
            const MonitorVerdict v = monitor(result.final_state.event_log,
                                             subject.substr(0, slash),
                                             subject.substr(slash + 1), bt);
            CHECK(v.conformant);
        }

        if (checks.contains("exhaustive")) {
            const json& x = checks.at("exhaustive");
            const SystemDef& def = as_system_def(doc, file);
            const auto summary = std::get<ExhaustiveSummary>(
                run(def, ExhaustiveDepthBounded{x.at("depth").get<std::size_t>()}));
            CHECK(summary.maximal_traces == x.at("maximal_traces").get<std::size_t>());
            CHECK(summary.terminal_configs == x.at("terminal_configs").get<std::size_t>());
            CHECK(summary.configurations == x.at("configurations").get<std::size_t>());
        }

        if (checks.contains("monitor")) {
            const json& m = checks.at("monitor");
            const SystemDef def = as_system_def(
                load_fixture(m.at("system").get<std::string>()), "monitored system");
            const Script& script = as_script(doc, file);
            const auto result = std::get<RunResult>(run(def, script));
            const std::string subject = m.at("subject");
            const auto slash = subject.find('/');
            const BehavioralType bt = as_behavioral_type(
                load_fixture(m.at("type").get<std::string>()), "monitor type");
            const MonitorVerdict v = monitor(result.final_state.event_log,
                                             subject.substr(0, slash),
                                             subject.substr(slash + 1), bt);
            CHECK(v.conformant == m.at("conformant").get<bool>());
        }
    }
}

TEST_CASE("fixtures() lists every manifest file") {
    const FixtureSet set = fixtures();
    const json manifest = read_manifest();
    CHECK(set.files.size() == manifest.at("fixtures").size());
    for (const std::string& f : set.files) {
        std::ifstream probe(set.dir + "/" + f);
        CHECK(probe.good());
    }
}

TEST_CASE("fixture files are stored in canonical form") {
    for (const std::string& name : fixtures().files) {
        CAPTURE(name);
        std::ifstream in(fixture_path(name), std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        CHECK(save(load(buffer.str())) == buffer.str());
    }
}

TEST_CASE("normalize is byte-idempotent on the behavioral-type fixtures") {
    for (const std::string& name : fixtures().files) {
        const ModelDocument doc = load_fixture(name);
        if (doc.kind != PayloadKind::BehavioralType) continue;
        const BehavioralType once = normalize(as_behavioral_type(doc, name));
        const BehavioralType twice = normalize(once);
        CHECK(save(document(once)) == save(document(twice)));
    }
}
