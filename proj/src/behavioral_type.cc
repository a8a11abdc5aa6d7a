#include "bht/behavioral_type.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bht/errors.hh"

namespace bht {

bool edge_less(const Edge& a, const Edge& b) {
    if (a.from != b.from) return natural_less(a.from, b.from);
    if (a.label.name != b.label.name) return a.label.name < b.label.name;
    if (a.label.kind != b.label.kind)
        return static_cast<int>(a.label.kind) < static_cast<int>(b.label.kind);
    if (a.to != b.to) return natural_less(a.to, b.to);
    return false;
}

bool same_edge(const Edge& a, const Edge& b) {
    return a.from == b.from && a.to == b.to && same_label(a.label, b.label);
}

std::vector<Label> label_set(const std::vector<Label>& a) {
    std::vector<Label> out = a;
    std::sort(out.begin(), out.end(), LabelLess{});
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Label& x, const Label& y) { return same_label(x, y); }),
              out.end());
    return out;
}

std::vector<Label> label_union(const std::vector<Label>& a, const std::vector<Label>& b) {
    std::vector<Label> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return label_set(out);
}

bool contains_label(const std::vector<Label>& set, const Label& l) {
    return std::any_of(set.begin(), set.end(),
                       [&](const Label& x) { return same_label(x, l); });
}

bool label_subset(const std::vector<Label>& sub, const std::vector<Label>& super) {
    return std::all_of(sub.begin(), sub.end(),
                       [&](const Label& l) { return contains_label(super, l); });
}

namespace {

bool has_location(const BehavioralType& bt, const std::string& id) {
    return std::find(bt.locations.begin(), bt.locations.end(), id) != bt.locations.end();
}

/// Locations reachable from `initial` over `edges`, as a sorted set.
std::set<std::string> reachable_locations(const BehavioralType& bt) {
    std::set<std::string> seen;
    if (!has_location(bt, bt.initial)) return seen;
    std::deque<std::string> queue{bt.initial};
    seen.insert(bt.initial);
    while (!queue.empty()) {
        const std::string cur = queue.front();
        queue.pop_front();
        for (const Edge& e : bt.edges) {
            if (e.from == cur && seen.insert(e.to).second) queue.push_back(e.to);
        }
    }
    return seen;
}

/// Drops locations outside `kept` together with their edges; clears the error
/// marker if it got pruned.
void restrict_to(BehavioralType& bt, const std::set<std::string>& kept) {
    bt.locations.erase(std::remove_if(bt.locations.begin(), bt.locations.end(),
                                      [&](const std::string& l) { return !kept.count(l); }),
                       bt.locations.end());
    bt.edges.erase(std::remove_if(bt.edges.begin(), bt.edges.end(),
                                  [&](const Edge& e) {
                                      return !kept.count(e.from) || !kept.count(e.to);
                                  }),
                   bt.edges.end());
    if (bt.error_location && !kept.count(*bt.error_location)) bt.error_location.reset();
}

struct NormalInfo {
    BehavioralType result;
    // old id -> new id, all locations
    std::map<std::string, std::string> renaming;
    std::size_t reachable_count = 0;
};

NormalInfo normalize_info(const BehavioralType& bt) {
    // outgoing adjacency with deterministic edge order
    std::vector<Edge> edges = bt.edges;
    std::sort(edges.begin(), edges.end(), edge_less);
    edges.erase(std::unique(edges.begin(), edges.end(), same_edge), edges.end());

    std::vector<std::string> locations = bt.locations;
    std::sort(locations.begin(), locations.end(), natural_less);
    locations.erase(std::unique(locations.begin(), locations.end()), locations.end());

    NormalInfo info;
    std::vector<std::string> order; // discovery order of old ids
    std::set<std::string> seen;
    if (std::find(locations.begin(), locations.end(), bt.initial) != locations.end()) {
        std::deque<std::string> queue{bt.initial};
        seen.insert(bt.initial);
        while (!queue.empty()) {
            const std::string cur = queue.front();
            queue.pop_front();
            order.push_back(cur);
            for (const Edge& e : edges) { // already in sorted label order per source
                if (e.from != cur) continue;
                if (seen.insert(e.to).second) queue.push_back(e.to);
            }
        }
    }
    info.reachable_count = order.size();
    for (const std::string& l : locations)
        if (!seen.count(l)) order.push_back(l); // unreachable, in natural order

    for (std::size_t i = 0; i < order.size(); ++i)
        info.renaming[order[i]] = "q" + std::to_string(i);

    BehavioralType out;
    out.aspect = bt.aspect;
    out.alphabet = label_set(bt.alphabet);
    for (std::size_t i = 0; i < order.size(); ++i)
        out.locations.push_back("q" + std::to_string(i));
    out.initial = info.renaming.count(bt.initial) ? info.renaming.at(bt.initial) : bt.initial;
    for (const Edge& e : edges)
        out.edges.push_back(Edge{info.renaming.at(e.from), e.label, info.renaming.at(e.to)});
    std::sort(out.edges.begin(), out.edges.end(), edge_less);
    if (bt.error_location && info.renaming.count(*bt.error_location))
        out.error_location = info.renaming.at(*bt.error_location);
    info.result = std::move(out);
    return info;
}

} // namespace

std::vector<Violation> validate(const BehavioralType& bt) {
    std::vector<Violation> out;
    auto err = [&](std::string msg) { out.push_back({Severity::Error, std::move(msg)}); };
    auto warn = [&](std::string msg) { out.push_back({Severity::Warning, std::move(msg)}); };

    for (const Label& l : bt.alphabet) {
        if (l.kind == LabelKind::Tau) {
            if (l.name != "tau") err("tau label must be named \"tau\", got \"" + l.name + "\"");
        } else if (l.name.empty()) {
            err("label with empty name in alphabet");
        } else if (l.name == "tau") {
            warn("label name \"tau\" is reserved for kind tau");
        }
    }
    for (std::size_t i = 0; i < bt.alphabet.size(); ++i)
        for (std::size_t j = i + 1; j < bt.alphabet.size(); ++j)
            if (same_label(bt.alphabet[i], bt.alphabet[j]))
                err("duplicate label " + label_to_string(bt.alphabet[i]) + " in alphabet");

    std::set<std::string> locs(bt.locations.begin(), bt.locations.end());
    if (locs.size() != bt.locations.size()) err("duplicate location id in locations");

    if (!locs.count(bt.initial)) err("initial location " + bt.initial + " not in locations");

    for (const Edge& e : bt.edges) {
        if (!locs.count(e.from)) err("edge source " + e.from + " not in locations");
        if (!locs.count(e.to)) err("edge destination " + e.to + " not in locations");
        if (!contains_label(bt.alphabet, e.label))
            err("edge label " + label_to_string(e.label) + " not in alphabet");
    }
    for (std::size_t i = 0; i < bt.edges.size(); ++i)
        for (std::size_t j = i + 1; j < bt.edges.size(); ++j)
            if (same_edge(bt.edges[i], bt.edges[j]))
                err("duplicate edge (" + bt.edges[i].from + ", " + bt.edges[i].label.name + ", " +
                    bt.edges[i].to + ")");

    if (bt.error_location) {
        if (!locs.count(*bt.error_location)) {
            err("error location " + *bt.error_location + " not in locations");
        } else {
            for (const Edge& e : bt.edges)
                if (e.from == *bt.error_location && e.to != *bt.error_location)
                    err("error location " + *bt.error_location + " has outgoing edge to " + e.to);
        }
        if (bt.initial == *bt.error_location)
            warn("initial location is the error location");
    }
    return out;
}

bool is_valid(const BehavioralType& bt) {
    const auto violations = validate(bt);
    return std::none_of(violations.begin(), violations.end(),
                        [](const Violation& v) { return v.severity == Severity::Error; });
}

BehavioralType project(const BehavioralType& bt, const std::vector<Label>& keep,
                       ProjectionMode mode) {
    if (!label_subset(keep, bt.alphabet))
        throw Error(errc::keep_not_subset, "keep set is not a subset of the alphabet");

    BehavioralType out = bt;
    if (mode == ProjectionMode::Delete) {
        out.edges.erase(std::remove_if(out.edges.begin(), out.edges.end(),
                                       [&](const Edge& e) { return !contains_label(keep, e.label); }),
                        out.edges.end());
        out.alphabet.erase(std::remove_if(out.alphabet.begin(), out.alphabet.end(),
                                          [&](const Label& l) { return !contains_label(keep, l); }),
                           out.alphabet.end());
    } else {
        for (Edge& e : out.edges)
            if (!contains_label(keep, e.label)) e.label = Label::tau();
        if (!contains_label(out.alphabet, Label::tau())) out.alphabet.push_back(Label::tau());
        // relabeling may have created duplicates
        std::sort(out.edges.begin(), out.edges.end(), edge_less);
        out.edges.erase(std::unique(out.edges.begin(), out.edges.end(), same_edge),
                        out.edges.end());
    }
    restrict_to(out, reachable_locations(out));
    return out;
}

BehavioralType complete(const BehavioralType& bt, const std::vector<Label>& full_alphabet) {
    if (!label_subset(bt.alphabet, full_alphabet))
        throw Error(errc::alphabet_too_small,
                    "full alphabet does not contain the automaton's alphabet");

    BehavioralType out = bt;
    out.alphabet = label_set(full_alphabet);

    std::string err_id;
    if (out.error_location) {
        err_id = *out.error_location;
    } else {
        err_id = "__error";
        for (int n = 1; has_location(out, err_id); ++n)
            err_id = "__error_" + std::to_string(n);
        out.locations.push_back(err_id);
        out.error_location = err_id;
    }

    for (const std::string& loc : out.locations) {
        for (const Label& a : out.alphabet) {
            const bool present = std::any_of(bt.edges.begin(), bt.edges.end(), [&](const Edge& e) {
                return e.from == loc && same_label(e.label, a);
            });
            if (!present) out.edges.push_back(Edge{loc, a, err_id});
        }
    }
    return out;
}

BehavioralType normalize(const BehavioralType& bt) { return normalize_info(bt).result; }

BehavioralType minimize(const BehavioralType& bt) {
    const std::vector<Label> alphabet = label_set(bt.alphabet);

    // precondition checks: deterministic and complete over the declared alphabet
    for (const std::string& loc : bt.locations) {
        for (const Label& a : alphabet) {
            int count = 0;
            for (const Edge& e : bt.edges)
                if (e.from == loc && same_label(e.label, a)) ++count;
            if (count > 1)
                throw Error(errc::not_deterministic, "location " + loc + " has " +
                                                         std::to_string(count) + " edges labeled " +
                                                         label_to_string(a));
            if (count == 0)
                throw Error(errc::not_complete,
                            "location " + loc + " has no edge labeled " + label_to_string(a));
        }
    }

    // work on the reachable part only
    BehavioralType work = bt;
    restrict_to(work, reachable_locations(work));

    const std::size_t n = work.locations.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[work.locations[i]] = i;

    // successor table: loc x alphabet position -> loc
    std::vector<std::vector<std::size_t>> succ(n, std::vector<std::size_t>(alphabet.size()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            for (const Edge& e : work.edges) {
                if (e.from == work.locations[i] && same_label(e.label, alphabet[a])) {
                    succ[i][a] = index.at(e.to);
                    break;
                }
            }
        }
    }

    // Moore refinement from the accepting/rejecting split
    std::vector<int> cls(n, 0);
    if (work.error_location)
        cls[index.at(*work.error_location)] = 1;
    for (;;) {
        std::map<std::vector<int>, int> sig_to_class;
        std::vector<int> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> sig{cls[i]};
            for (std::size_t a = 0; a < alphabet.size(); ++a) sig.push_back(cls[succ[i][a]]);
            auto [it, inserted] = sig_to_class.emplace(std::move(sig), static_cast<int>(sig_to_class.size()));
            next[i] = it->second;
        }
        if (next == cls) break;
        cls = std::move(next);
    }

    // quotient automaton on class representatives
    BehavioralType quotient;
    quotient.aspect = bt.aspect;
    quotient.alphabet = alphabet;
    std::map<int, std::string> class_name;
    for (std::size_t i = 0; i < n; ++i)
        if (!class_name.count(cls[i]))
            class_name[cls[i]] = "c" + std::to_string(class_name.size());
    for (const auto& [c, name] : class_name) quotient.locations.push_back(name);
    quotient.initial = class_name.at(cls[index.at(work.initial)]);
    std::set<std::pair<int, std::size_t>> emitted;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            if (emitted.insert({cls[i], a}).second)
                quotient.edges.push_back(Edge{class_name.at(cls[i]), alphabet[a],
                                              class_name.at(cls[succ[i][a]])});
        }
    }
    if (work.error_location)
        quotient.error_location = class_name.at(cls[index.at(*work.error_location)]);

    return normalize(quotient);
}

namespace {

std::optional<Label> first_alphabet_difference(const std::vector<Label>& a,
                                               const std::vector<Label>& b) {
    // both sorted; report the smallest symmetric-difference element
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (same_label(a[i], b[j])) {
            ++i;
            ++j;
        } else if (label_less(a[i], b[j])) {
            return a[i];
        } else {
            return b[j];
        }
    }
    if (i < a.size()) return a[i];
    if (j < b.size()) return b[j];
    return std::nullopt;
}

std::map<std::string, std::string> invert(const std::map<std::string, std::string>& m) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : m) out[v] = k;
    return out;
}

} // namespace

EqualityResult equals(const BehavioralType& a, const BehavioralType& b,
                      bool compare_location_names) {
    const NormalInfo na = normalize_info(a);
    const NormalInfo nb = normalize_info(b);
    const auto back_a = invert(na.renaming);
    const auto back_b = invert(nb.renaming);

    EqualityResult res;
    auto fail = [&](const std::string& qa, const std::string& qb, std::optional<Label> label,
                    std::string reason) {
        res.equal = false;
        Difference d;
        d.location_a = back_a.count(qa) ? back_a.at(qa) : qa;
        d.location_b = back_b.count(qb) ? back_b.at(qb) : qb;
        d.label = std::move(label);
        d.reason = std::move(reason);
        res.first_difference = std::move(d);
        return res;
    };

    if (const auto diff = first_alphabet_difference(na.result.alphabet, nb.result.alphabet))
        return fail(na.result.initial, nb.result.initial, *diff, "alphabets differ");

    // reachable edges are exactly those whose source got a BFS number below
    // the reachable count; their targets are then reachable too
    auto q_index = [](const std::string& q) { return std::stoul(q.substr(1)); };
    std::vector<Edge> ea, eb;
    for (const Edge& e : na.result.edges)
        if (q_index(e.from) < na.reachable_count) ea.push_back(e);
    for (const Edge& e : nb.result.edges)
        if (q_index(e.from) < nb.reachable_count) eb.push_back(e);

    // walk both sorted edge lists; first mismatch is the witness
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (same_edge(ea[i], eb[j])) {
            ++i;
            ++j;
            continue;
        }
        const Edge& w = edge_less(ea[i], eb[j]) ? ea[i] : eb[j];
        return fail(w.from, w.from, w.label, "edge present in only one operand");
    }
    if (i < ea.size()) return fail(ea[i].from, ea[i].from, ea[i].label, "edge present in only one operand");
    if (j < eb.size()) return fail(eb[j].from, eb[j].from, eb[j].label, "edge present in only one operand");

    if (na.reachable_count != nb.reachable_count) {
        // identical edges but different reachable location counts: only possible
        // with edge-less extra locations, i.e. a bare initial location
        return fail(na.result.initial, nb.result.initial, std::nullopt,
                    "reachable location counts differ");
    }

    for (std::size_t k = 0; k < na.reachable_count; ++k) {
        const std::string q = "q" + std::to_string(k);
        res.mapping.emplace_back(back_a.at(q), back_b.at(q));
    }
    if (compare_location_names) {
        for (const auto& [la, lb] : res.mapping) {
            if (la != lb) {
                res.equal = false;
                res.first_difference = Difference{la, lb, std::nullopt, "location names differ"};
                return res;
            }
        }
    }
    res.equal = true;
    return res;
}

EqualityResult refines(const BehavioralType& impl, const BehavioralType& spec,
                       const std::vector<Label>& considered) {
    if (!label_subset(considered, label_union(impl.alphabet, spec.alphabet)))
        throw Error(errc::keep_not_subset,
                    "considered labels are not a subset of the union of both alphabets");
    auto pipeline = [&](const BehavioralType& t) {
        std::vector<Label> kept;
        for (const Label& l : considered)
            if (contains_label(t.alphabet, l)) kept.push_back(l);
        return normalize(minimize(complete(project(t, kept, ProjectionMode::Delete), considered)));
    };
    return equals(pipeline(impl), pipeline(spec), false);
}

EqualityResult refines(const BehavioralType& impl, const BehavioralType& spec) {
    return refines(impl, spec, label_union(impl.alphabet, spec.alphabet));
}

} // namespace bht
