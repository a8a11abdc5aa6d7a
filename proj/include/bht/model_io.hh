#ifndef BHT_MODEL_IO_HH_
#define BHT_MODEL_IO_HH_

#include <string>
#include <variant>

#include "bht/behavioral_type.hh"
#include "bht/composition.hh"
#include "bht/osgi_sim.hh"
#include "bht/priority_synth.hh"

namespace bht {

inline constexpr int format_version = 1;

enum class PayloadKind {
    BehavioralType,
    ComponentSystem,
    SystemDef,
    Script,
    Verdict,
    SynthesisResult,
};

const char* payload_kind_name(PayloadKind kind);

/// Envelope for every document the tool reads or writes. File extensions:
/// .btype (behavioral types), .bsys (component systems), .osys (system
/// definitions), .bscript (simulator scripts); verdicts and synthesis results
/// normally travel over stdout.
struct ModelDocument {
    int version = format_version;
    PayloadKind kind = PayloadKind::BehavioralType;
    std::variant<BehavioralType, ComponentSystem, SystemDef, Script, AnalysisVerdict,
                 SynthesisResult>
        payload;
};

ModelDocument document(BehavioralType payload);
ModelDocument document(ComponentSystem payload);
ModelDocument document(SystemDef payload);
ModelDocument document(Script payload);
ModelDocument document(AnalysisVerdict payload);
ModelDocument document(SynthesisResult payload);

/// Parses and validates a document. Errors carry line/column: ParseError for
/// malformed JSON, SchemaError for structural problems, UnsupportedVersion
/// for unknown format versions. Unknown keys are rejected.
ModelDocument load(const std::string& bytes);

/// Canonical rendering: fixed key order, alphabet/edge lists in normalized
/// order, two-space indentation, UTF-8, trailing newline. save∘load∘save is
/// the identity on bytes.
std::string save(const ModelDocument& doc);

ModelDocument load_file(const std::string& path);
void save_file(const ModelDocument& doc, const std::string& path);

/// Unwraps, throwing SchemaError naming `context` when the kind is wrong.
const BehavioralType& as_behavioral_type(const ModelDocument& doc, const std::string& context);
const ComponentSystem& as_component_system(const ModelDocument& doc, const std::string& context);
const SystemDef& as_system_def(const ModelDocument& doc, const std::string& context);
const Script& as_script(const ModelDocument& doc, const std::string& context);

} // namespace bht

#endif // BHT_MODEL_IO_HH_
