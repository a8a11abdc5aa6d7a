#include "bht/priority_synth.hh"

#include <algorithm>
#include <set>
#include <sstream>

#include "bht/errors.hh"

namespace bht {

const char* synthesis_status_name(SynthesisStatus s) {
    switch (s) {
        case SynthesisStatus::Solved: return "solved";
        case SynthesisStatus::Unsolvable: return "unsolvable";
        case SynthesisStatus::BoundExceeded: return "bound_exceeded";
    }
    return "unsolvable";
}

namespace {

/// Distinct edge labels of `bt` leaving `loc`, sorted.
std::vector<Label> labels_at(const BehavioralType& bt, const std::string& loc) {
    std::vector<Label> out;
    for (const Edge& e : bt.edges)
        if (e.from == loc && !contains_label(out, e.label)) out.push_back(e.label);
    std::sort(out.begin(), out.end(), LabelLess{});
    return out;
}

void add_candidates_at(const ComponentSystem& sys, std::size_t comp, const std::string& loc,
                       std::vector<PriorityRule>& out) {
    const auto labels = labels_at(sys.components[comp].second, loc);
    if (labels.size() < 2) return;
    for (const Label& lo : labels)
        for (const Label& hi : labels) {
            if (same_label(lo, hi)) continue;
            // strip targets; rules relate alphabet labels, not call metadata
            out.push_back(PriorityRule{sys.components[comp].first,
                                       Label{lo.name, lo.kind, std::nullopt},
                                       Label{hi.name, hi.kind, std::nullopt}});
        }
}

/// Replays `trace` from the initial state, collecting candidate rules at
/// every location where a component about to act had a branching choice, and
/// finally at the reported bad state for the given acting components.
void collect_from_trace(const ComponentSystem& sys, const Trace& trace,
                        const std::vector<std::size_t>& acting_at_end,
                        std::vector<PriorityRule>& out) {
    ProductState state = initial_state(sys);
    for (const TraceStep& step : trace) {
        for (const std::string& cname : step.components) {
            const auto c = component_index(sys, cname);
            if (c) add_candidates_at(sys, *c, state[*c], out);
        }
        // advance: fire the enabled transition matching label + destinations
        for (const JointTransition& t : enabled(sys, state)) {
            if (t.label_name != step.label) continue;
            std::vector<std::string> dests;
            for (const Participant& p : t.participants) dests.push_back(p.edge.to);
            if (dests != step.destinations) continue;
            for (const Participant& p : t.participants) state[p.component] = p.edge.to;
            break;
        }
    }
    for (std::size_t c : acting_at_end) add_candidates_at(sys, c, state[c], out);
}

std::vector<PriorityRule> collect_candidates(const ComponentSystem& sys,
                                             const AnalysisVerdict& verdict) {
    std::vector<PriorityRule> all;
    for (const DeadlockReport& d : verdict.deadlocks) {
        std::vector<std::size_t> blocked;
        for (std::size_t c = 0; c < sys.components.size(); ++c) {
            const BehavioralType& bt = sys.components[c].second;
            const bool has_edge = std::any_of(bt.edges.begin(), bt.edges.end(),
                                              [&](const Edge& e) { return e.from == d.state[c]; });
            if (has_edge) blocked.push_back(c);
        }
        collect_from_trace(sys, d.trace, blocked, all);
    }
    for (const IncompatibilityReport& w : verdict.incompatibilities) {
        std::vector<std::size_t> acting;
        if (const auto c = component_index(sys, w.sender)) acting.push_back(*c);
        collect_from_trace(sys, w.trace, acting, all);
    }
    std::sort(all.begin(), all.end(), priority_rule_less);
    all.erase(std::unique(all.begin(), all.end(),
                          [](const PriorityRule& a, const PriorityRule& b) {
                              return !priority_rule_less(a, b) && !priority_rule_less(b, a);
                          }),
              all.end());
    return all;
}

std::set<ProductState> bad_states(const AnalysisVerdict& v) {
    std::set<ProductState> out;
    for (const auto& d : v.deadlocks) out.insert(d.state);
    for (const auto& w : v.incompatibilities) out.insert(w.state);
    return out;
}

} // namespace

SynthesisResult synthesize(const ComponentSystem& sys, std::size_t max_rules) {
    SynthesisResult result;
    result.original = analyze(sys);
    if (result.original.clean()) {
        result.status = SynthesisStatus::Solved;
        result.residual = result.original;
        return result;
    }

    const std::vector<PriorityRule> candidates = collect_candidates(sys, result.original);
    const std::size_t n = candidates.size();

    // iterative deepening over k-subsets in lexicographic candidate order
    std::vector<std::size_t> combo;
    for (std::size_t k = 1; k <= std::min(max_rules, n); ++k) {
        combo.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) combo[i] = i;
        for (;;) {
            std::vector<PriorityRule> rules;
            for (std::size_t i : combo) rules.push_back(candidates[i]);
            const ComponentSystem restricted = apply_priorities(sys, rules);
            AnalysisVerdict verdict = analyze(restricted);
            if (verdict.clean()) {
                result.status = SynthesisStatus::Solved;
                result.rules = rules;
                result.residual = std::move(verdict);
                // what each rule eliminated: bad states that reappear without it
                for (std::size_t i = 0; i < rules.size(); ++i) {
                    std::vector<PriorityRule> rest;
                    for (std::size_t j = 0; j < rules.size(); ++j)
                        if (j != i) rest.push_back(rules[j]);
                    const auto without = analyze(apply_priorities(sys, rest));
                    std::vector<ProductState> eliminated;
                    for (const ProductState& s : bad_states(without)) eliminated.push_back(s);
                    result.eliminated_per_rule.push_back(std::move(eliminated));
                }
                return result;
            }
            // next k-combination of {0..n-1}
            std::size_t i = k;
            for (;;) {
                if (i == 0) goto next_size;
                --i;
                if (combo[i] != i + n - k) break;
            }
            ++combo[i];
            for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
        }
    next_size:;
    }

    result.status = n > max_rules ? SynthesisStatus::BoundExceeded : SynthesisStatus::Unsolvable;
    result.residual = result.original;
    return result;
}

std::string explain(const SynthesisResult& result) {
    std::ostringstream out;
    auto show_state = [&](const ProductState& s) {
        out << "(";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out << ", ";
            if (i < result.original.component_names.size())
                out << result.original.component_names[i] << "=";
            out << s[i];
        }
        out << ")";
    };

    out << "synthesis: " << synthesis_status_name(result.status) << "\n";
    out << "original verdict: " << result.original.deadlocks.size() << " deadlock(s), "
        << result.original.incompatibilities.size() << " incompatibility witness(es), "
        << result.original.explored << " state(s) explored\n";

    switch (result.status) {
        case SynthesisStatus::Solved:
            if (result.rules.empty()) {
                out << "system is already clean; no priorities needed\n";
                break;
            }
            out << "priorities:\n";
            for (std::size_t i = 0; i < result.rules.size(); ++i) {
                const PriorityRule& r = result.rules[i];
                out << "  " << r.component << ": " << r.lower.name << " < " << r.higher.name
                    << "\n";
                if (i < result.eliminated_per_rule.size() &&
                    !result.eliminated_per_rule[i].empty()) {
                    out << "    eliminates:";
                    for (const ProductState& s : result.eliminated_per_rule[i]) {
                        out << " ";
                        show_state(s);
                    }
                    out << "\n";
                }
            }
            out << "restricted system: clean (" << result.residual.explored
                << " state(s) reachable)\n";
            break;
        case SynthesisStatus::Unsolvable:
            out << "no rule set over the conflict candidates removes every violation; "
                   "candidate lattice exhausted\n";
            break;
        case SynthesisStatus::BoundExceeded:
            out << "rule bound reached with candidates remaining; larger sets not tried\n";
            break;
    }
    return out.str();
}

} // namespace bht
