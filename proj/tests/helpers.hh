#ifndef BHT_TESTS_HELPERS_HH_
#define BHT_TESTS_HELPERS_HH_

#include <string>
#include <vector>

#include "bht/behavioral_type.hh"
#include "bht/composition.hh"

namespace bht::testing {

inline Label out(const std::string& name, const std::string& target = "") {
    Label l;
    l.name = name;
    l.kind = LabelKind::CallOut;
    if (!target.empty()) l.target = target;
    return l;
}

inline Label in(const std::string& name) { return Label{name, LabelKind::CallIn, std::nullopt}; }

inline Label internal(const std::string& name) {
    return Label{name, LabelKind::Internal, std::nullopt};
}

inline Edge edge(const std::string& from, const Label& label, const std::string& to) {
    return Edge{from, label, to};
}

/// The first component of the paper's protocol-versions example: may call
/// newPrtcl or oldPrtcl in its initial state.
inline BehavioralType fig3_caller() {
    BehavioralType bt;
    bt.aspect = "calls:outgoing";
    bt.alphabet = {out("newPrtcl", "callee"), out("oldPrtcl", "callee")};
    bt.locations = {"l0", "l1", "l2"};
    bt.initial = "l0";
    bt.edges = {edge("l0", bt.alphabet[0], "l1"), edge("l0", bt.alphabet[1], "l2")};
    return bt;
}

/// The second component: expects newPrtcl only, oldPrtcl declared but never
/// accepted.
inline BehavioralType fig3_callee() {
    BehavioralType bt;
    bt.aspect = "calls:incoming";
    bt.alphabet = {out("newPrtcl"), out("oldPrtcl")};
    bt.locations = {"l0", "l1"};
    bt.initial = "l0";
    bt.edges = {edge("l0", bt.alphabet[0], "l1")};
    return bt;
}

inline ComponentSystem fig3_system() {
    ComponentSystem sys;
    sys.components.emplace_back("caller", fig3_caller());
    sys.components.emplace_back("callee", fig3_callee());
    return sys;
}

} // namespace bht::testing

#endif // BHT_TESTS_HELPERS_HH_
