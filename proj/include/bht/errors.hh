#ifndef BHT_ERRORS_HH_
#define BHT_ERRORS_HH_

#include <optional>
#include <stdexcept>
#include <string>

namespace bht {

enum class errc {
    // automata-core
    keep_not_subset,
    alphabet_too_small,
    not_deterministic,
    not_complete,
    // composition
    state_arity_mismatch,
    unknown_target,
    unknown_component,
    unknown_label,
    invalid_priority_rule,
    // osgi-sim
    invalid_system_def,
    inconsistent_state,
    missing_callee,
    duplicate_bundle,
    duplicate_object,
    missing_bundle,
    missing_object,
    script_step_disabled,
    unsupported_aspect,
    // registry
    invalid_behavior_model,
    unknown_service,
    no_compatible_choice,
    // model-io
    parse_error,
    schema_error,
    unsupported_version,
};

const char* errc_name(errc code);

/// Exception carrying a machine-checkable error code and, for document
/// errors, the 1-based line/column of the offending input.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Error(errc code, const std::string& message, int line, int column)
        : std::runtime_error(std::string(errc_name(code)) + ": " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          code_(code), line_(line), column_(column) {}

    errc code() const { return code_; }
    std::optional<int> line() const { return line_; }
    std::optional<int> column() const { return column_; }

private:
    errc code_;
    std::optional<int> line_;
    std::optional<int> column_;
};

} // namespace bht

#endif // BHT_ERRORS_HH_
