// Test-only oracles, deliberately implemented by direct brute force and kept
// independent of the library's algorithms.

#ifndef BHT_TESTS_ORACLES_HH_
#define BHT_TESTS_ORACLES_HH_

#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "bht/composition.hh"

namespace bht::oracle {

/// Compares word classification (run ends in the error location or not) of
/// two deterministic complete automata for every word up to max_len; returns
/// the first mismatching word.
std::optional<std::vector<std::string>> language_mismatch(const BehavioralType& a,
                                                          const BehavioralType& b,
                                                          std::size_t max_len);

struct NaiveAnalysis {
    std::set<ProductState> states;
    std::set<ProductState> deadlocks;
    std::set<ProductState> terminals;
    // (state, sender, label name, refuser)
    std::set<std::tuple<ProductState, std::string, std::string, std::string>> witnesses;
};

/// Full enumeration of a priority-free system by plain recursion.
NaiveAnalysis naive_analyze(const ComponentSystem& sys);

/// Deterministic, complete automaton over up to max_labels symbols, with an
/// error sink most of the time.
BehavioralType random_dfa(std::mt19937& rng, int max_locations, int max_labels);

/// 2-3 component system, every component valid, CallOut labels targeted at
/// real components. May be nondeterministic.
ComponentSystem random_system(std::mt19937& rng, int max_locations);

} // namespace bht::oracle

#endif // BHT_TESTS_ORACLES_HH_
