#include "bht/label.hh"

#include <array>
#include <cctype>

#include "bht/errors.hh"

namespace bht {

namespace {

struct KindName {
    LabelKind kind;
    const char* name;
};

constexpr std::array<KindName, 8> kind_names{{
    {LabelKind::CallOut, "call_out"},
    {LabelKind::CallIn, "call_in"},
    {LabelKind::CreateObject, "create_object"},
    {LabelKind::DeleteObject, "delete_object"},
    {LabelKind::AddBundle, "add_bundle"},
    {LabelKind::RemoveBundle, "remove_bundle"},
    {LabelKind::Internal, "internal"},
    {LabelKind::Tau, "tau"},
}};

} // namespace

const char* label_kind_name(LabelKind kind) {
    for (const auto& kn : kind_names)
        if (kn.kind == kind) return kn.name;
    return "internal";
}

std::optional<LabelKind> label_kind_from_name(const std::string& name) {
    for (const auto& kn : kind_names)
        if (name == kn.name) return kn.kind;
    return std::nullopt;
}

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const unsigned char ca = a[i], cb = b[j];
        if (std::isdigit(ca) && std::isdigit(cb)) {
            std::size_t ia = i, jb = j;
            while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ++ia;
            while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) ++jb;
            // strip leading zeros, then compare by length and digits
            std::size_t sa = i, sb = j;
            while (sa + 1 < ia && a[sa] == '0') ++sa;
            while (sb + 1 < jb && b[sb] == '0') ++sb;
            const std::size_t la = ia - sa, lb = jb - sb;
            if (la != lb) return la < lb;
            for (std::size_t k = 0; k < la; ++k)
                if (a[sa + k] != b[sb + k]) return a[sa + k] < b[sb + k];
            // equal numeric value: fewer leading zeros first
            if (ia - i != jb - j) return ia - i < jb - j;
            i = ia;
            j = jb;
            continue;
        }
        if (ca != cb) return ca < cb;
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

std::string label_to_string(const Label& label) {
    std::string out = label.name;
    out += "[";
    out += label_kind_name(label.kind);
    if (label.target) {
        out += "->";
        out += *label.target;
    }
    out += "]";
    return out;
}

const char* errc_name(errc code) {
    switch (code) {
        case errc::keep_not_subset: return "KeepNotSubset";
        case errc::alphabet_too_small: return "AlphabetTooSmall";
        case errc::not_deterministic: return "NotDeterministic";
        case errc::not_complete: return "NotComplete";
        case errc::state_arity_mismatch: return "StateArityMismatch";
        case errc::unknown_target: return "UnknownTarget";
        case errc::unknown_component: return "UnknownComponent";
        case errc::unknown_label: return "UnknownLabel";
        case errc::invalid_priority_rule: return "InvalidPriorityRule";
        case errc::invalid_system_def: return "InvalidSystemDef";
        case errc::inconsistent_state: return "InconsistentState";
        case errc::missing_callee: return "MissingCallee";
        case errc::duplicate_bundle: return "DuplicateBundle";
        case errc::duplicate_object: return "DuplicateObject";
        case errc::missing_bundle: return "MissingBundle";
        case errc::missing_object: return "MissingObject";
        case errc::script_step_disabled: return "ScriptStepDisabled";
        case errc::unsupported_aspect: return "UnsupportedAspect";
        case errc::invalid_behavior_model: return "InvalidBehaviorModel";
        case errc::unknown_service: return "UnknownService";
        case errc::no_compatible_choice: return "NoCompatibleChoice";
        case errc::parse_error: return "ParseError";
        case errc::schema_error: return "SchemaError";
        case errc::unsupported_version: return "UnsupportedVersion";
    }
    return "Error";
}

} // namespace bht
