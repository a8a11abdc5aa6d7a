#include "bht/composition.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bht/errors.hh"

namespace bht {

bool priority_rule_less(const PriorityRule& a, const PriorityRule& b) {
    if (a.component != b.component) return a.component < b.component;
    if (!same_label(a.lower, b.lower)) return label_less(a.lower, b.lower);
    if (!same_label(a.higher, b.higher)) return label_less(a.higher, b.higher);
    return false;
}

std::optional<std::size_t> component_index(const ComponentSystem& sys, const std::string& name) {
    for (std::size_t i = 0; i < sys.components.size(); ++i)
        if (sys.components[i].first == name) return i;
    return std::nullopt;
}

std::vector<std::string> shared_label_names(const ComponentSystem& sys) {
    std::map<std::string, int> counts;
    for (const auto& [name, bt] : sys.components) {
        std::set<std::string> here;
        for (const Label& l : bt.alphabet) here.insert(l.name);
        for (const std::string& n : here) ++counts[n];
    }
    std::vector<std::string> out;
    for (const auto& [n, c] : counts)
        if (c >= 2) out.push_back(n);
    return out;
}

ProductState initial_state(const ComponentSystem& sys) {
    ProductState s;
    for (const auto& [name, bt] : sys.components) s.push_back(bt.initial);
    return s;
}

namespace {

bool edge_to_less(const Edge& a, const Edge& b) {
    if (a.label.kind != b.label.kind)
        return static_cast<int>(a.label.kind) < static_cast<int>(b.label.kind);
    return natural_less(a.to, b.to);
}

/// Edges of component `c` leaving `loc` whose label name is `name`, sorted.
std::vector<Edge> edges_with_name(const BehavioralType& bt, const std::string& loc,
                                  const std::string& name) {
    std::vector<Edge> out;
    for (const Edge& e : bt.edges)
        if (e.from == loc && e.label.name == name) out.push_back(e);
    std::sort(out.begin(), out.end(), edge_to_less);
    return out;
}

bool has_edge_with_label(const BehavioralType& bt, const std::string& loc, const Label& l) {
    return std::any_of(bt.edges.begin(), bt.edges.end(), [&](const Edge& e) {
        return e.from == loc && same_label(e.label, l);
    });
}

bool alphabet_has_name(const BehavioralType& bt, const std::string& name) {
    return std::any_of(bt.alphabet.begin(), bt.alphabet.end(),
                       [&](const Label& l) { return l.name == name; });
}

void check_arity(const ComponentSystem& sys, const ProductState& state) {
    if (state.size() != sys.components.size())
        throw Error(errc::state_arity_mismatch,
                    "product state has " + std::to_string(state.size()) + " entries for " +
                        std::to_string(sys.components.size()) + " components");
}

/// All joint transitions at `state` ignoring priorities, deterministic order.
std::vector<JointTransition> enabled_unrestricted(const ComponentSystem& sys,
                                                  const ProductState& state) {
    check_arity(sys, state);
    const std::set<std::string> shared = [&] {
        auto v = shared_label_names(sys);
        return std::set<std::string>(v.begin(), v.end());
    }();

    // candidate names: offered on some edge at some current location
    std::set<std::string> names;
    for (std::size_t c = 0; c < sys.components.size(); ++c)
        for (const Edge& e : sys.components[c].second.edges)
            if (e.from == state[c]) names.insert(e.label.name);

    std::vector<JointTransition> out;
    for (const std::string& n : names) {
        std::vector<std::size_t> group;
        if (shared.count(n)) {
            for (std::size_t c = 0; c < sys.components.size(); ++c)
                if (alphabet_has_name(sys.components[c].second, n)) group.push_back(c);
        } else {
            for (std::size_t c = 0; c < sys.components.size(); ++c)
                if (!edges_with_name(sys.components[c].second, state[c], n).empty()) {
                    group.push_back(c);
                    break;
                }
        }
        std::vector<std::vector<Edge>> options;
        bool blocked = false;
        for (std::size_t c : group) {
            auto e = edges_with_name(sys.components[c].second, state[c], n);
            if (e.empty()) {
                blocked = true; // some declaring component cannot move
                break;
            }
            options.push_back(std::move(e));
        }
        if (blocked || group.empty()) continue;

        // cartesian product over per-component edge choices, rightmost fastest
        std::vector<std::size_t> pick(group.size(), 0);
        for (;;) {
            JointTransition t;
            t.label_name = n;
            for (std::size_t k = 0; k < group.size(); ++k)
                t.participants.push_back(Participant{group[k], options[k][pick[k]]});
            out.push_back(std::move(t));
            std::size_t k = group.size();
            while (k > 0) {
                --k;
                if (++pick[k] < options[k].size()) break;
                pick[k] = 0;
                if (k == 0) goto done_combos;
            }
        }
    done_combos:;
    }
    return out;
}

/// (component, label) pairs suppressed at `state` by the system's priority
/// rules, judged against the unrestricted enabled set.
std::set<std::pair<std::size_t, std::string>> suppressed_labels(
    const ComponentSystem& sys, const ProductState& state,
    const std::vector<JointTransition>& unrestricted) {
    std::set<std::pair<std::size_t, std::string>> out;
    for (const PriorityRule& r : sys.priorities) {
        const auto c = component_index(sys, r.component);
        if (!c) continue;
        const BehavioralType& bt = sys.components[*c].second;
        if (!has_edge_with_label(bt, state[*c], r.lower)) continue;
        const bool higher_fires = std::any_of(
            unrestricted.begin(), unrestricted.end(), [&](const JointTransition& t) {
                return std::any_of(t.participants.begin(), t.participants.end(),
                                   [&](const Participant& p) {
                                       return p.component == *c && same_label(p.edge.label, r.higher);
                                   });
            });
        if (higher_fires)
            out.insert({*c, label_to_string(Label{r.lower.name, r.lower.kind, std::nullopt})});
    }
    return out;
}

std::string suppression_key(const Label& l) {
    return label_to_string(Label{l.name, l.kind, std::nullopt});
}

} // namespace

std::vector<JointTransition> enabled(const ComponentSystem& sys, const ProductState& state) {
    auto all = enabled_unrestricted(sys, state);
    if (sys.priorities.empty()) return all;
    const auto suppressed = suppressed_labels(sys, state, all);
    std::vector<JointTransition> out;
    for (JointTransition& t : all) {
        const bool cut = std::any_of(t.participants.begin(), t.participants.end(),
                                     [&](const Participant& p) {
                                         return suppressed.count(
                                             {p.component, suppression_key(p.edge.label)});
                                     });
        if (!cut) out.push_back(std::move(t));
    }
    return out;
}

std::optional<std::size_t> Exploration::index_of(const ProductState& s) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == s) return i;
    return std::nullopt;
}

Trace Exploration::trace_to(std::size_t state_index) const {
    Trace rev;
    std::size_t cur = state_index;
    while (cur != 0) {
        // discovery arc: first arc reaching cur
        const Arc* found = nullptr;
        for (const Arc& a : arcs) {
            if (a.to == cur) {
                found = &a;
                break;
            }
        }
        if (!found) break; // unreachable index, empty trace
        rev.push_back(found->step);
        cur = found->from;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

Exploration reachable(const ComponentSystem& sys, std::optional<std::size_t> bound) {
    const std::size_t limit = bound.value_or(default_state_bound);
    Exploration ex;
    std::map<ProductState, std::size_t> index;
    ex.states.push_back(initial_state(sys));
    index[ex.states[0]] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const ProductState state = ex.states[cur];
        for (const JointTransition& t : enabled(sys, state)) {
            ProductState next = state;
            TraceStep step;
            step.label = t.label_name;
            for (const Participant& p : t.participants) {
                next[p.component] = p.edge.to;
                step.components.push_back(sys.components[p.component].first);
                step.destinations.push_back(p.edge.to);
            }
            auto it = index.find(next);
            std::size_t to;
            if (it == index.end()) {
                if (ex.states.size() >= limit) {
                    ex.complete = false;
                    continue;
                }
                to = ex.states.size();
                ex.states.push_back(next);
                index.emplace(std::move(next), to);
                queue.push_back(to);
            } else {
                to = it->second;
            }
            ex.arcs.push_back(Exploration::Arc{cur, std::move(step), to});
        }
    }
    return ex;
}

ComponentSystem apply_priorities(const ComponentSystem& sys,
                                 const std::vector<PriorityRule>& rules) {
    ComponentSystem out = sys;
    for (const PriorityRule& r : rules) {
        const auto c = component_index(sys, r.component);
        if (!c)
            throw Error(errc::unknown_component,
                        "priority rule names unknown component " + r.component);
        const BehavioralType& bt = sys.components[*c].second;
        if (!contains_label(bt.alphabet, r.lower))
            throw Error(errc::unknown_label, "label " + label_to_string(r.lower) +
                                                 " not in alphabet of " + r.component);
        if (!contains_label(bt.alphabet, r.higher))
            throw Error(errc::unknown_label, "label " + label_to_string(r.higher) +
                                                 " not in alphabet of " + r.component);
        if (same_label(r.lower, r.higher))
            throw Error(errc::invalid_priority_rule,
                        "lower and higher are the same label " + label_to_string(r.lower));
        out.priorities.push_back(r);
    }
    return out;
}

namespace {

AnalysisVerdict analyze_impl(const ComponentSystem& sys, std::optional<std::size_t> bound,
                             bool want_deadlocks, bool want_compat) {
    if (want_compat) {
        // every targeted CallOut must name a component of the system
        for (const auto& [cname, bt] : sys.components)
            for (const Label& l : bt.alphabet)
                if (l.kind == LabelKind::CallOut && l.target &&
                    !component_index(sys, *l.target))
                    throw Error(errc::unknown_target, "label " + l.name + " of " + cname +
                                                          " targets unknown component " +
                                                          *l.target);
    }

    const Exploration ex = reachable(sys, bound);
    AnalysisVerdict verdict;
    for (const auto& [n, bt] : sys.components) verdict.component_names.push_back(n);
    verdict.explored = ex.states.size();
    verdict.complete = ex.complete;

    // out-degree per state from recorded arcs
    std::vector<std::size_t> degree(ex.states.size(), 0);
    for (const auto& a : ex.arcs) ++degree[a.from];

    for (std::size_t i = 0; i < ex.states.size(); ++i) {
        const ProductState& state = ex.states[i];

        const bool terminal = [&] {
            for (std::size_t c = 0; c < sys.components.size(); ++c)
                for (const Edge& e : sys.components[c].second.edges)
                    if (e.from == state[c]) return false;
            return true;
        }();
        if (terminal) {
            verdict.terminal_states.push_back(state);
        } else if (want_deadlocks && degree[i] == 0) {
            // under a bound, missing arcs may just be cut off, not disabled
            if (ex.complete || enabled(sys, state).empty())
                verdict.deadlocks.push_back(DeadlockReport{state, ex.trace_to(i)});
        }

        if (!want_compat) continue;
        std::set<std::pair<std::size_t, std::string>> suppressed;
        if (!sys.priorities.empty())
            suppressed = suppressed_labels(sys, state, enabled_unrestricted(sys, state));
        std::set<std::string> seen; // dedupe (sender, label, refuser) at this state
        for (std::size_t c = 0; c < sys.components.size(); ++c) {
            const BehavioralType& bt = sys.components[c].second;
            std::vector<Edge> offers;
            for (const Edge& e : bt.edges)
                if (e.from == state[c] && e.label.kind == LabelKind::CallOut && e.label.target)
                    offers.push_back(e);
            std::sort(offers.begin(), offers.end(), edge_less);
            for (const Edge& e : offers) {
                if (suppressed.count({c, suppression_key(e.label)})) continue;
                const auto t = component_index(sys, *e.label.target);
                const BehavioralType& peer = sys.components[*t].second;
                if (!alphabet_has_name(peer, e.label.name)) continue; // outside its contract
                const bool accepts = [&] {
                    for (const Edge& pe : peer.edges) {
                        if (pe.from != state[*t] || pe.label.name != e.label.name) continue;
                        if (!suppressed.count({*t, suppression_key(pe.label)})) return true;
                    }
                    return false;
                }();
                if (accepts) continue;
                const std::string key = sys.components[c].first + "\x1f" +
                                        suppression_key(e.label) + "\x1f" + *e.label.target;
                if (!seen.insert(key).second) continue;
                verdict.incompatibilities.push_back(IncompatibilityReport{
                    state, sys.components[c].first, e.label, *e.label.target, ex.trace_to(i)});
            }
        }
    }
    return verdict;
}

} // namespace

std::optional<ProductState> replay(const ComponentSystem& sys, const Trace& trace) {
    ProductState state = initial_state(sys);
    for (const TraceStep& step : trace) {
        bool advanced = false;
        for (const JointTransition& t : enabled(sys, state)) {
            if (t.label_name != step.label) continue;
            std::vector<std::string> comps, dests;
            for (const Participant& p : t.participants) {
                comps.push_back(sys.components[p.component].first);
                dests.push_back(p.edge.to);
            }
            if (comps != step.components || dests != step.destinations) continue;
            for (const Participant& p : t.participants) state[p.component] = p.edge.to;
            advanced = true;
            break;
        }
        if (!advanced) return std::nullopt;
    }
    return state;
}

AnalysisVerdict detect_deadlocks(const ComponentSystem& sys, std::optional<std::size_t> bound) {
    return analyze_impl(sys, bound, true, false);
}

AnalysisVerdict check_compatibility(const ComponentSystem& sys, std::optional<std::size_t> bound) {
    return analyze_impl(sys, bound, false, true);
}

AnalysisVerdict analyze(const ComponentSystem& sys, std::optional<std::size_t> bound) {
    return analyze_impl(sys, bound, true, true);
}

} // namespace bht
