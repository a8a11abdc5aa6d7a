#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bht/behavioral_type.hh"
#include "bht/errors.hh"
#include "bht/model_io.hh"
#include "helpers.hh"
#include "oracles.hh"

using namespace bht;
using namespace bht::testing;

namespace {

BehavioralType single_location() {
    BehavioralType bt;
    bt.aspect = "calls:incoming";
    bt.locations = {"only"};
    bt.initial = "only";
    return bt;
}

bool has_error_violation(const BehavioralType& bt, const std::string& needle) {
    for (const Violation& v : validate(bt))
        if (v.severity == Severity::Error && v.message.find(needle) != std::string::npos)
            return true;
    return false;
}

std::string serialized(const BehavioralType& bt) { return save(document(bt)); }

} // namespace

TEST_CASE("validate: minimal legal automaton") {
    CHECK(validate(single_location()).empty());
}

TEST_CASE("validate: edge referencing undeclared location") {
    BehavioralType bt = single_location();
    bt.alphabet = {internal("m")};
    bt.edges = {edge("only", bt.alphabet[0], "l9")};
    CHECK(has_error_violation(bt, "edge destination l9 not in locations"));
}

TEST_CASE("validate: edge label absent from alphabet") {
    BehavioralType bt = single_location();
    bt.edges = {edge("only", internal("ghost"), "only")};
    CHECK(has_error_violation(bt, "ghost"));
}

TEST_CASE("validate: error location with non-self-loop edge") {
    BehavioralType bt;
    bt.alphabet = {internal("m")};
    bt.locations = {"a", "err"};
    bt.initial = "a";
    bt.error_location = "err";
    bt.edges = {edge("err", bt.alphabet[0], "a")};
    CHECK(has_error_violation(bt, "error location"));
}

TEST_CASE("validate: initial equal to error location is only a warning") {
    BehavioralType bt = single_location();
    bt.error_location = "only";
    const auto violations = validate(bt);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].severity == Severity::Warning);
    CHECK(is_valid(bt));
}

TEST_CASE("project: fig3 caller keeps only newPrtcl") {
    const BehavioralType caller = fig3_caller();
    const BehavioralType got = project(caller, {out("newPrtcl")}, ProjectionMode::Delete);
    REQUIRE(got.edges.size() == 1);
    CHECK(got.edges[0].label.name == "newPrtcl");
    // l2 became unreachable and is pruned
    CHECK(got.locations == std::vector<std::string>{"l0", "l1"});
    CHECK(got.alphabet.size() == 1);
}

TEST_CASE("project: full alphabet is the identity up to pruning") {
    BehavioralType bt = fig3_caller();
    bt.locations.push_back("island"); // already unreachable
    const BehavioralType got = project(bt, bt.alphabet, ProjectionMode::Delete);
    CHECK(got.edges.size() == bt.edges.size());
    CHECK(got.locations == std::vector<std::string>{"l0", "l1", "l2"});
    const EqualityResult eq = equals(got, fig3_caller(), false);
    CHECK(eq.equal);
}

TEST_CASE("project: empty keep with tau relabels every edge") {
    const BehavioralType got = project(fig3_caller(), {}, ProjectionMode::Tau);
    REQUIRE(got.edges.size() == 2);
    for (const Edge& e : got.edges) {
        CHECK(e.label.kind == LabelKind::Tau);
        CHECK(e.label.name == "tau");
    }
    CHECK(contains_label(got.alphabet, Label::tau()));
}

TEST_CASE("project: keep must be a subset") {
    CHECK_THROWS_MATCHES(project(fig3_callee(), {out("stranger")}, ProjectionMode::Delete),
                         Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::keep_not_subset;
                         }));
}

TEST_CASE("complete: fig3 callee gains the oldPrtcl error edge") {
    const BehavioralType callee = fig3_callee();
    const BehavioralType got = complete(callee, callee.alphabet);
    REQUIRE(got.error_location.has_value());
    bool found = false;
    for (const Edge& e : got.edges)
        if (e.from == "l0" && e.label.name == "oldPrtcl" && e.to == *got.error_location)
            found = true;
    CHECK(found);
    // total: every location has one edge per label
    for (const std::string& loc : got.locations)
        for (const Label& l : got.alphabet) {
            int count = 0;
            for (const Edge& e : got.edges)
                if (e.from == loc && same_label(e.label, l)) ++count;
            CHECK(count == 1);
        }
}

TEST_CASE("complete: already-total automaton only gains the unreachable sink") {
    BehavioralType bt;
    bt.alphabet = {internal("m")};
    bt.locations = {"a"};
    bt.initial = "a";
    bt.edges = {edge("a", bt.alphabet[0], "a")};
    const BehavioralType got = complete(bt, bt.alphabet);
    CHECK(got.locations.size() == 2);
    CHECK(got.edges.size() == 2);
    REQUIRE(got.error_location.has_value());
    for (const Edge& e : got.edges)
        if (e.from == "a") CHECK(e.to == "a");
}

TEST_CASE("complete: edge-less location over two labels gets two error edges") {
    BehavioralType bt = single_location();
    const std::vector<Label> full = {internal("x"), internal("y")};
    const BehavioralType got = complete(bt, full);
    int to_error = 0;
    for (const Edge& e : got.edges)
        if (e.from == "only") {
            CHECK(e.to == *got.error_location);
            ++to_error;
        }
    CHECK(to_error == 2);
}

TEST_CASE("complete: idempotent over a fixed alphabet") {
    const BehavioralType callee = fig3_callee();
    const BehavioralType once = complete(callee, callee.alphabet);
    const BehavioralType twice = complete(once, callee.alphabet);
    CHECK(serialized(once) == serialized(twice));
}

TEST_CASE("complete: alphabet must contain the automaton's") {
    BehavioralType bt = fig3_caller();
    CHECK_THROWS_MATCHES(complete(bt, {out("newPrtcl")}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::alphabet_too_small;
                         }));
}

TEST_CASE("minimize: bisimilar locations collapse") {
    // two locations with identical outgoing structure
    BehavioralType bt;
    const Label m = internal("m");
    bt.alphabet = {m};
    bt.locations = {"a", "b", "c"};
    bt.initial = "a";
    bt.edges = {edge("a", m, "b"), edge("b", m, "c"), edge("c", m, "c")};
    const BehavioralType got = minimize(bt);
    CHECK(got.locations.size() == 1); // no error location: all states accept everything
}

TEST_CASE("minimize: rejects nondeterministic and incomplete inputs") {
    BehavioralType bt;
    const Label m = internal("m");
    bt.alphabet = {m};
    bt.locations = {"a", "b"};
    bt.initial = "a";
    bt.edges = {edge("a", m, "a"), edge("a", m, "b")};
    CHECK_THROWS_MATCHES(minimize(bt), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::not_deterministic;
                         }));
    bt.edges = {edge("a", m, "a")};
    CHECK_THROWS_MATCHES(minimize(bt), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::not_complete;
                         }));
}

TEST_CASE("minimize: idempotent on already-minimal automata") {
    const BehavioralType callee = complete(fig3_callee(), fig3_callee().alphabet);
    const BehavioralType once = minimize(callee);
    const BehavioralType twice = minimize(once);
    CHECK(once.locations.size() == twice.locations.size());
    CHECK(serialized(once) == serialized(twice));
}

TEST_CASE("minimize: language-preserving on random automata") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 60; ++i) {
        const BehavioralType bt = oracle::random_dfa(rng, 6, 3);
        const BehavioralType small = minimize(bt);
        CHECK(small.locations.size() <= bt.locations.size());
        const auto mismatch = oracle::language_mismatch(bt, small, 2 * bt.locations.size());
        if (mismatch) {
            CAPTURE(serialized(bt), serialized(small), *mismatch);
            FAIL("minimized automaton classifies a word differently");
        }
    }
}

TEST_CASE("normalize: idempotent byte-for-byte") {
    const BehavioralType once = normalize(fig3_caller());
    const BehavioralType twice = normalize(once);
    CHECK(serialized(once) == serialized(twice));
}

TEST_CASE("normalize: scrambled isomorphic automata share a normal form") {
    BehavioralType scrambled = fig3_caller();
    for (std::string* loc : {&scrambled.locations[0], &scrambled.locations[1],
                             &scrambled.locations[2]}) {
        if (*loc == "l0") *loc = "zz";
        else if (*loc == "l1") *loc = "aa";
        else *loc = "mm";
    }
    scrambled.initial = "zz";
    scrambled.edges[0].from = "zz";
    scrambled.edges[0].to = "aa";
    scrambled.edges[1].from = "zz";
    scrambled.edges[1].to = "mm";
    CHECK(serialized(normalize(scrambled)) == serialized(normalize(fig3_caller())));
}

TEST_CASE("normalize: fig3 BFS renaming order") {
    const BehavioralType got = normalize(fig3_caller());
    CHECK(got.initial == "q0");
    // lexicographic label order: newPrtcl before oldPrtcl
    REQUIRE(got.edges.size() == 2);
    CHECK(got.edges[0].label.name == "newPrtcl");
    CHECK(got.edges[0].to == "q1");
    CHECK(got.edges[1].label.name == "oldPrtcl");
    CHECK(got.edges[1].to == "q2");
}

TEST_CASE("normalize: stays idempotent past ten locations") {
    // chain long enough that q10 vs q2 ordering matters
    BehavioralType bt;
    const Label m = internal("m");
    bt.alphabet = {m};
    for (int i = 0; i < 13; ++i) bt.locations.push_back("n" + std::to_string(i));
    bt.initial = "n0";
    for (int i = 0; i + 1 < 13; ++i)
        bt.edges.push_back(edge("n" + std::to_string(i), m, "n" + std::to_string(i + 1)));
    const BehavioralType once = normalize(bt);
    CHECK(serialized(once) == serialized(normalize(once)));
}

TEST_CASE("normalize: preserves the violation set") {
    BehavioralType bt = fig3_caller();
    bt.edges.push_back(edge("l0", internal("ghost"), "l1")); // label not in alphabet
    const auto before = validate(bt);
    const auto after = validate(normalize(bt));
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(before[i].severity == after[i].severity);
}

TEST_CASE("equals: reflexive with identity mapping") {
    const BehavioralType caller = fig3_caller();
    const EqualityResult r = equals(caller, caller, true);
    REQUIRE(r.equal);
    for (const auto& [a, b] : r.mapping) CHECK(a == b);
}

TEST_CASE("equals: fig3 pair differs at the initial location on oldPrtcl") {
    const EqualityResult r = equals(fig3_caller(), fig3_callee(), false);
    REQUIRE_FALSE(r.equal);
    REQUIRE(r.first_difference.has_value());
    CHECK(r.first_difference->location_a == "l0");
    CHECK(r.first_difference->location_b == "l0");
    REQUIRE(r.first_difference->label.has_value());
    CHECK(r.first_difference->label->name == "oldPrtcl");
}

TEST_CASE("equals: renamed copy equal without names, unequal with names") {
    BehavioralType renamed = fig3_caller();
    renamed.locations = {"start", "done_new", "done_old"};
    renamed.initial = "start";
    renamed.edges[0].from = "start";
    renamed.edges[0].to = "done_new";
    renamed.edges[1].from = "start";
    renamed.edges[1].to = "done_old";
    CHECK(equals(fig3_caller(), renamed, false).equal);
    CHECK_FALSE(equals(fig3_caller(), renamed, true).equal);
}

TEST_CASE("equals: equivalence relation on random automata") {
    std::mt19937 rng(7);
    for (int i = 0; i < 25; ++i) {
        const BehavioralType a = oracle::random_dfa(rng, 4, 2);
        const BehavioralType b = oracle::random_dfa(rng, 4, 2);
        const BehavioralType c = oracle::random_dfa(rng, 4, 2);
        CHECK(equals(a, a, false).equal); // reflexive
        CHECK(equals(a, b, false).equal == equals(b, a, false).equal); // symmetric
        if (equals(a, b, false).equal && equals(b, c, false).equal)
            CHECK(equals(a, c, false).equal); // transitive
    }
}

TEST_CASE("refines: identity") {
    const BehavioralType caller = fig3_caller();
    CHECK(refines(caller, caller).equal);
}

TEST_CASE("refines: fig3 over newPrtcl only") {
    const EqualityResult r = refines(fig3_caller(), fig3_callee(), {out("newPrtcl")});
    CHECK(r.equal);
}

TEST_CASE("refines: fig3 over both labels fails") {
    const EqualityResult r = refines(fig3_caller(), fig3_callee());
    CHECK_FALSE(r.equal);
}
