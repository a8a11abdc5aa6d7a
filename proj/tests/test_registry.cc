#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "bht/errors.hh"
#include "bht/fixtures.hh"
#include "bht/registry.hh"
#include "helpers.hh"

using namespace bht;
using namespace bht::testing;

TEST_CASE("register/query: interface-only registration is discoverable") {
    Registry reg;
    const auto id = reg.register_service("bundle1", {"com.example.Booking"}, {});
    const auto hits = reg.query(std::string("com.example.Booking"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].service_id == id);
    CHECK(reg.query(std::string("com.example.Other")).empty());
}

TEST_CASE("register: behavior models round-trip intact") {
    Registry reg;
    const BehavioralType middleware =
        as_behavioral_type(load_fixture("middleware_outgoing.btype"), "middleware");
    std::map<std::string, PropertyValue> props;
    props[behavior_property] = std::vector<BehavioralType>{middleware};
    const auto id = reg.register_service("bundle1", {"com.example.Middleware"}, props);

    const auto hits = reg.query({}, std::string("calls:outgoing"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].service_id == id);
    const auto models = hits[0].behavior_models();
    REQUIRE(models.size() == 1);
    CHECK(equals(models[0], middleware, true).equal);
    CHECK(models[0].aspect == middleware.aspect);
}

TEST_CASE("register: malformed behavior model is rejected") {
    Registry reg;
    BehavioralType broken = fig3_caller();
    broken.edges.push_back(edge("l0", broken.alphabet[0], "ghost"));
    std::map<std::string, PropertyValue> props;
    props[behavior_property] = std::vector<BehavioralType>{broken};
    CHECK_THROWS_MATCHES(reg.register_service("b", {}, props), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::invalid_behavior_model;
                         }));
}

TEST_CASE("unregister: removes exactly the named record") {
    Registry reg;
    const auto before = reg.query();
    const auto a = reg.register_service("b1", {"I"}, {});
    const auto b = reg.register_service("b2", {"I"}, {});
    reg.unregister(a);
    const auto after = reg.query();
    REQUIRE(after.size() == 1);
    CHECK(after[0].service_id == b);
    reg.unregister(b);
    CHECK(reg.query().size() == before.size());
    CHECK_THROWS_MATCHES(reg.unregister(b), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::unknown_service;
                         }));
}

TEST_CASE("query: aspect filter matches the BEHAVIOR models") {
    Registry reg;
    std::map<std::string, PropertyValue> props;
    props[behavior_property] = std::vector<BehavioralType>{fig3_callee()};
    reg.register_service("b1", {"I"}, props);
    CHECK(reg.query({}, std::string("calls:incoming")).size() == 1);
    CHECK(reg.query({}, std::string("calls:outgoing")).empty());
}

TEST_CASE("discover_compatible: fig3 callee is found with one witness") {
    Registry reg;
    std::map<std::string, PropertyValue> props;
    props[behavior_property] = std::vector<BehavioralType>{fig3_callee()};
    reg.register_service("provider", {"I"}, props);

    const auto results = reg.discover_compatible(fig3_caller());
    REQUIRE(results.size() == 1);
    const AnalysisVerdict& v = results[0].second;
    REQUIRE(v.incompatibilities.size() == 1);
    CHECK(v.incompatibilities[0].label.name == "oldPrtcl");
    CHECK(v.incompatibilities[0].sender == "required");
    CHECK(v.incompatibilities[0].refuser == "candidate");
}

TEST_CASE("discover_compatible: an exact mirror ranks first with a clean verdict") {
    Registry reg;
    // the mirror supports both protocols
    BehavioralType mirror = fig3_caller();
    mirror.aspect = "calls:incoming";

    std::map<std::string, PropertyValue> partial, full;
    partial[behavior_property] = std::vector<BehavioralType>{fig3_callee()};
    full[behavior_property] = std::vector<BehavioralType>{mirror};
    reg.register_service("partial", {"I"}, partial);
    reg.register_service("full", {"I"}, full);

    const auto results = reg.discover_compatible(fig3_caller());
    REQUIRE(results.size() == 2);
    CHECK(results[0].first.owner == "full");
    CHECK(results[0].second.clean());
    CHECK_FALSE(results[1].second.clean());
}

TEST_CASE("discover_compatible: empty registry yields nothing") {
    Registry reg;
    CHECK(reg.discover_compatible(fig3_caller()).empty());
}

TEST_CASE("adapt_protocol: fig3 pair chooses newPrtcl") {
    const auto chosen = adapt_protocol(fig3_caller(), fig3_callee());
    REQUIRE(chosen.size() == 1);
    CHECK(chosen[0].name == "newPrtcl");
}

TEST_CASE("adapt_protocol: peer supporting both protocols needs no restriction") {
    BehavioralType peer = fig3_caller();
    peer.aspect = "calls:incoming";
    CHECK(adapt_protocol(fig3_caller(), peer).empty());
}

TEST_CASE("adapt_protocol: peer supporting neither protocol") {
    BehavioralType peer;
    peer.aspect = "calls:incoming";
    peer.alphabet = {out("newPrtcl"), out("oldPrtcl")};
    peer.locations = {"x0"};
    peer.initial = "x0"; // declares both, offers neither
    CHECK_THROWS_MATCHES(adapt_protocol(fig3_caller(), peer), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::no_compatible_choice;
                         }));
}

TEST_CASE("registry: concurrent use keeps records consistent") {
    Registry reg;
    constexpr int threads = 8;
    constexpr int per_thread = 50;
    std::vector<std::thread> workers;
    std::vector<std::vector<std::uint64_t>> ids(threads);
    std::atomic<int> query_failures{0};

    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (int i = 0; i < per_thread; ++i) {
                const auto id = reg.register_service("owner" + std::to_string(t),
                                                     {"I" + std::to_string(i % 5)}, {});
                ids[t].push_back(id);
                if (i % 3 == 0) {
                    reg.unregister(id);
                    ids[t].pop_back();
                }
                // queries interleave with mutations and must never see a torn record
                for (const ServiceRecord& r : reg.query())
                    if (r.owner.empty()) ++query_failures;
            }
        });
    }
    for (std::thread& w : workers) w.join();

    CHECK(query_failures == 0);
    // ids are globally unique
    std::set<std::uint64_t> all;
    for (const auto& v : ids)
        for (const auto id : v) all.insert(id);
    std::size_t surviving = 0;
    for (const auto& v : ids) surviving += v.size();
    CHECK(all.size() == surviving);
    // the registry holds exactly the surviving ids
    const auto records = reg.query();
    REQUIRE(records.size() == surviving);
    for (const ServiceRecord& r : records) CHECK(all.count(r.service_id) == 1);
    // deterministic order
    for (std::size_t i = 1; i < records.size(); ++i)
        CHECK(records[i - 1].service_id < records[i].service_id);
}
