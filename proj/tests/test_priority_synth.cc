#include <catch2/catch_amalgamated.hpp>

#include "bht/model_io.hh"
#include "bht/priority_synth.hh"
#include "helpers.hh"

using namespace bht;
using namespace bht::testing;

namespace {

ComponentSystem clean_pair() {
    ComponentSystem sys;
    BehavioralType a, b;
    a.alphabet = b.alphabet = {internal("m")};
    a.locations = {"a0", "a1"};
    a.initial = "a0";
    a.edges = {edge("a0", a.alphabet[0], "a1")};
    b.locations = {"b0", "b1"};
    b.initial = "b0";
    b.edges = {edge("b0", b.alphabet[0], "b1")};
    sys.components.emplace_back("A", a);
    sys.components.emplace_back("B", b);
    return sys;
}

ComponentSystem mutually_blocking() {
    BehavioralType a;
    a.alphabet = {internal("x"), internal("y")};
    a.locations = {"a0", "a1"};
    a.initial = "a0";
    a.edges = {edge("a0", a.alphabet[0], "a1")};
    BehavioralType b;
    b.alphabet = {internal("x"), internal("y")};
    b.locations = {"b0", "b1"};
    b.initial = "b0";
    b.edges = {edge("b0", b.alphabet[1], "b1")};
    ComponentSystem sys;
    sys.components.emplace_back("A", a);
    sys.components.emplace_back("B", b);
    return sys;
}

} // namespace

TEST_CASE("synthesize: clean system solves with no rules") {
    const SynthesisResult r = synthesize(clean_pair());
    CHECK(r.status == SynthesisStatus::Solved);
    CHECK(r.rules.empty());
    CHECK(r.residual.clean());
}

TEST_CASE("synthesize: fig3 yields exactly the oldPrtcl < newPrtcl rule") {
    const SynthesisResult r = synthesize(fig3_system());
    REQUIRE(r.status == SynthesisStatus::Solved);
    REQUIRE(r.rules.size() == 1);
    CHECK(r.rules[0].component == "caller");
    CHECK(r.rules[0].lower.name == "oldPrtcl");
    CHECK(r.rules[0].higher.name == "newPrtcl");
    CHECK(r.residual.clean());
}

TEST_CASE("synthesize: no branching choice means unsolvable") {
    // single mutually-blocking shared label per component, no alternatives:
    // each location offers one label, so the candidate set is empty
    BehavioralType a;
    a.alphabet = {internal("x")};
    a.locations = {"a0", "a1"};
    a.initial = "a0";
    a.edges = {edge("a0", a.alphabet[0], "a1")};
    BehavioralType b;
    b.alphabet = {internal("x")};
    b.locations = {"b0"};
    b.initial = "b0";
    ComponentSystem sys;
    sys.components.emplace_back("A", a);
    sys.components.emplace_back("B", b);

    const SynthesisResult r = synthesize(sys);
    CHECK(r.status == SynthesisStatus::Unsolvable);
    CHECK(r.rules.empty());
    CHECK_FALSE(r.residual.clean());
}

TEST_CASE("synthesize: candidates exhausted is unsolvable, not bound-exceeded") {
    const SynthesisResult r = synthesize(mutually_blocking(), 8);
    CHECK(r.status == SynthesisStatus::Unsolvable);
}

TEST_CASE("synthesize: bound exceeded when candidates remain") {
    // fig3 has two candidate rules; a zero-rule budget cannot try them
    const SynthesisResult r = synthesize(fig3_system(), 0);
    CHECK(r.status == SynthesisStatus::BoundExceeded);
}

TEST_CASE("synthesize: solution is sound under independent re-checking") {
    const ComponentSystem sys = fig3_system();
    const SynthesisResult r = synthesize(sys);
    REQUIRE(r.status == SynthesisStatus::Solved);
    const ComponentSystem restricted = apply_priorities(sys, r.rules);
    CHECK(detect_deadlocks(restricted).deadlocks.empty());
    CHECK(check_compatibility(restricted).incompatibilities.empty());
}

TEST_CASE("synthesize: locally minimal (single-rule removal stays dirty)") {
    const ComponentSystem sys = fig3_system();
    const SynthesisResult r = synthesize(sys);
    REQUIRE(r.status == SynthesisStatus::Solved);
    for (std::size_t i = 0; i < r.rules.size(); ++i) {
        std::vector<PriorityRule> rest;
        for (std::size_t j = 0; j < r.rules.size(); ++j)
            if (j != i) rest.push_back(r.rules[j]);
        CHECK_FALSE(analyze(apply_priorities(sys, rest)).clean());
    }
}

TEST_CASE("synthesize: byte-deterministic") {
    const SynthesisResult a = synthesize(fig3_system());
    const SynthesisResult b = synthesize(fig3_system());
    CHECK(save(document(a)) == save(document(b)));
}

TEST_CASE("synthesize: restriction only shrinks the reachable set") {
    const ComponentSystem sys = fig3_system();
    const SynthesisResult r = synthesize(sys);
    REQUIRE(r.status == SynthesisStatus::Solved);
    const Exploration orig = reachable(sys);
    for (const ProductState& s : reachable(apply_priorities(sys, r.rules)).states)
        CHECK(orig.index_of(s).has_value());
}

TEST_CASE("explain: names the rule and cites the eliminated state") {
    const SynthesisResult r = synthesize(fig3_system());
    const std::string report = explain(r);
    CHECK(report.find("solved") != std::string::npos);
    CHECK(report.find("caller: oldPrtcl < newPrtcl") != std::string::npos);
    CHECK(report.find("eliminates") != std::string::npos);
}

TEST_CASE("explain: unsolvable report mentions exhaustion") {
    const std::string report = explain(synthesize(mutually_blocking()));
    CHECK(report.find("unsolvable") != std::string::npos);
    CHECK(report.find("exhausted") != std::string::npos);
}
