#ifndef BHT_LABEL_HH_
#define BHT_LABEL_HH_

#include <optional>
#include <string>

namespace bht {

/// Event categories a label can describe. The declaration order below is the
/// tie-break order used wherever labels are sorted.
enum class LabelKind {
    CallOut,
    CallIn,
    CreateObject,
    DeleteObject,
    AddBundle,
    RemoveBundle,
    Internal,
    Tau,
};

const char* label_kind_name(LabelKind kind);
std::optional<LabelKind> label_kind_from_name(const std::string& name);

/// One alphabet symbol. Identity is (name, kind); `target` is metadata for
/// the compatibility checker (intended receiver of a CallOut) and never
/// participates in comparisons.
struct Label {
    std::string name;
    LabelKind kind = LabelKind::Internal;
    std::optional<std::string> target;

    static Label tau() { return Label{"tau", LabelKind::Tau, std::nullopt}; }
};

inline bool same_label(const Label& a, const Label& b) {
    return a.name == b.name && a.kind == b.kind;
}

/// (name, kind) order; names compare as plain byte strings.
inline bool label_less(const Label& a, const Label& b) {
    if (a.name != b.name) return a.name < b.name;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

struct LabelLess {
    bool operator()(const Label& a, const Label& b) const { return label_less(a, b); }
};

/// Order for location ids: digit runs compare numerically, everything else
/// bytewise, so "q2" < "q10". Keeps canonical renaming idempotent past ten
/// locations.
bool natural_less(const std::string& a, const std::string& b);

std::string label_to_string(const Label& label);

} // namespace bht

#endif // BHT_LABEL_HH_
