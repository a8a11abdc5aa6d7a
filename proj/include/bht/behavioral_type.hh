#ifndef BHT_BEHAVIORAL_TYPE_HH_
#define BHT_BEHAVIORAL_TYPE_HH_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bht/label.hh"

namespace bht {

struct Edge {
    std::string from;
    Label label;
    std::string to;
};

bool edge_less(const Edge& a, const Edge& b);
bool same_edge(const Edge& a, const Edge& b);

/// A behavioral type: finite automaton over an alphabet of labels plus an
/// aspect descriptor saying which slice of behavior it specifies (e.g.
/// "calls:outgoing"). The alphabet may declare labels no edge uses; those
/// drive completion. All fields have set semantics, order is presentation.
struct BehavioralType {
    std::string aspect;
    std::vector<Label> alphabet;
    std::vector<std::string> locations;
    std::string initial;
    std::vector<Edge> edges;
    std::optional<std::string> error_location;
};

enum class Severity { Error, Warning };

struct Violation {
    Severity severity = Severity::Error;
    std::string message;
};

/// Checks every structural invariant; one entry per violation. Warnings mark
/// degenerate but legal inputs (e.g. initial == error location).
std::vector<Violation> validate(const BehavioralType& bt);

/// True iff validate() reports no Error-severity entries.
bool is_valid(const BehavioralType& bt);

enum class ProjectionMode { Delete, Tau };

/// Restricts bt to the `keep` labels. Delete drops other edges and their
/// alphabet entries; Tau relabels them with the tau label instead. Locations
/// left unreachable are pruned.
BehavioralType project(const BehavioralType& bt, const std::vector<Label>& keep,
                       ProjectionMode mode);

/// Adds an error location and routes every label of full_alphabet that is
/// missing at some location to it, making the automaton total.
BehavioralType complete(const BehavioralType& bt, const std::vector<Label>& full_alphabet);

/// Partition-refinement minimization of a deterministic, complete automaton
/// under the convention that the error location is the unique rejecting sink
/// and every other location accepts. Output is in normal form.
BehavioralType minimize(const BehavioralType& bt);

/// Canonical form: locations renamed q0,q1,... in breadth-first discovery
/// order (edges visited in sorted label order), unreachable locations after
/// that, edges and alphabet sorted. Idempotent byte-for-byte once serialized.
BehavioralType normalize(const BehavioralType& bt);

struct Difference {
    std::string location_a;
    std::string location_b;
    std::optional<Label> label;
    std::string reason;
};

struct EqualityResult {
    bool equal = false;
    /// Pairs (location of a, location of b) over reachable locations;
    /// a bijection when equal.
    std::vector<std::pair<std::string, std::string>> mapping;
    std::optional<Difference> first_difference;
};

/// Structural equality of the reachable parts after normalization. Location
/// names are ids only unless compare_location_names is set, in which case the
/// discovered bijection must also be the identity. Aspect strings are not
/// compared.
EqualityResult equals(const BehavioralType& a, const BehavioralType& b,
                      bool compare_location_names);

/// Refinement: both operands are projected onto `considered`, completed over
/// it, minimized and compared. `considered` defaults to the union of both
/// alphabets.
EqualityResult refines(const BehavioralType& impl, const BehavioralType& spec,
                       const std::vector<Label>& considered);
EqualityResult refines(const BehavioralType& impl, const BehavioralType& spec);

/// Labels of `a` sorted and deduplicated; set-level helpers shared by the
/// pipeline operations.
std::vector<Label> label_set(const std::vector<Label>& a);
std::vector<Label> label_union(const std::vector<Label>& a, const std::vector<Label>& b);
bool label_subset(const std::vector<Label>& sub, const std::vector<Label>& super);
bool contains_label(const std::vector<Label>& set, const Label& l);

} // namespace bht

#endif // BHT_BEHAVIORAL_TYPE_HH_
