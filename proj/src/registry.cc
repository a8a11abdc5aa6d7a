#include "bht/registry.hh"

#include <algorithm>

#include "bht/errors.hh"
#include "bht/priority_synth.hh"

namespace bht {

std::vector<BehavioralType> ServiceRecord::behavior_models() const {
    const auto it = properties.find(behavior_property);
    if (it == properties.end()) return {};
    if (const auto* models = std::get_if<std::vector<BehavioralType>>(&it->second))
        return *models;
    return {};
}

std::string complementary_aspect(const std::string& aspect) {
    if (aspect == "calls:outgoing") return "calls:incoming";
    if (aspect == "calls:incoming") return "calls:outgoing";
    return aspect;
}

std::uint64_t Registry::register_service(const std::string& owner,
                                         std::vector<std::string> interfaces,
                                         std::map<std::string, PropertyValue> properties) {
    const auto it = properties.find(behavior_property);
    if (it != properties.end()) {
        const auto* models = std::get_if<std::vector<BehavioralType>>(&it->second);
        if (!models)
            throw Error(errc::invalid_behavior_model,
                        "BEHAVIOR property must hold a list of behavioral models");
        for (const BehavioralType& m : *models) {
            for (const Violation& v : validate(m))
                if (v.severity == Severity::Error)
                    throw Error(errc::invalid_behavior_model, v.message);
        }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t id = next_id_++;
    ServiceRecord rec;
    rec.service_id = id;
    rec.owner = owner;
    rec.interfaces = std::move(interfaces);
    rec.properties = std::move(properties);
    records_.emplace(id, std::move(rec));
    return id;
}

void Registry::unregister(std::uint64_t service_id) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (records_.erase(service_id) == 0)
        throw Error(errc::unknown_service, "no service with id " + std::to_string(service_id));
}

std::vector<ServiceRecord> Registry::query(const std::optional<std::string>& interface_name,
                                           const std::optional<std::string>& aspect) const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<ServiceRecord> out;
    for (const auto& [id, rec] : records_) {
        if (interface_name &&
            std::find(rec.interfaces.begin(), rec.interfaces.end(), *interface_name) ==
                rec.interfaces.end())
            continue;
        if (aspect) {
            const auto models = rec.behavior_models();
            const bool match = std::any_of(models.begin(), models.end(), [&](const BehavioralType& m) {
                return m.aspect == *aspect;
            });
            if (!match) continue;
        }
        out.push_back(rec);
    }
    return out; // map iteration is already id-ordered
}

ComponentSystem pair_system(const BehavioralType& first, const BehavioralType& second,
                            const std::string& first_name, const std::string& second_name) {
    auto retarget = [](BehavioralType bt, const std::string& peer) {
        for (Label& l : bt.alphabet)
            if (l.kind == LabelKind::CallOut) l.target = peer;
        for (Edge& e : bt.edges)
            if (e.label.kind == LabelKind::CallOut) e.label.target = peer;
        return bt;
    };
    ComponentSystem sys;
    sys.components.emplace_back(first_name, retarget(first, second_name));
    sys.components.emplace_back(second_name, retarget(second, first_name));
    return sys;
}

std::vector<std::pair<ServiceRecord, AnalysisVerdict>> Registry::discover_compatible(
    const BehavioralType& required, const std::optional<std::string>& peer_aspect) const {
    const std::string wanted = peer_aspect.value_or(complementary_aspect(required.aspect));

    std::vector<ServiceRecord> snapshot;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (const auto& [id, rec] : records_) snapshot.push_back(rec);
    }

    std::vector<std::pair<ServiceRecord, AnalysisVerdict>> out;
    for (const ServiceRecord& rec : snapshot) {
        for (const BehavioralType& model : rec.behavior_models()) {
            if (model.aspect != wanted) continue;
            const ComponentSystem sys = pair_system(required, model, "required", "candidate");
            out.emplace_back(rec, analyze(sys));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const auto score = [](const AnalysisVerdict& v) {
            return v.deadlocks.size() + v.incompatibilities.size();
        };
        const bool ca = a.second.clean(), cb = b.second.clean();
        if (ca != cb) return ca;
        if (score(a.second) != score(b.second)) return score(a.second) < score(b.second);
        return a.first.service_id < b.first.service_id;
    });
    return out;
}

std::vector<Label> adapt_protocol(const BehavioralType& own, const BehavioralType& peer) {
    const ComponentSystem sys = pair_system(own, peer, "own", "peer");
    const SynthesisResult result = synthesize(sys);
    if (result.status != SynthesisStatus::Solved)
        throw Error(errc::no_compatible_choice,
                    "no priority restriction makes the protocols compatible (" +
                        std::string(synthesis_status_name(result.status)) + ")");
    if (result.rules.empty()) return {}; // already clean, nothing to choose

    // surviving initial branches of `own` under the restriction
    const ComponentSystem restricted = apply_priorities(sys, result.rules);
    const ProductState init = initial_state(restricted);
    const auto joint = enabled(restricted, init);

    std::vector<Label> chosen;
    const BehavioralType& own_bt = restricted.components[0].second;
    for (const Edge& e : own_bt.edges) {
        if (e.from != own_bt.initial) continue;
        const bool survives = std::any_of(joint.begin(), joint.end(), [&](const JointTransition& t) {
            return std::any_of(t.participants.begin(), t.participants.end(),
                               [&](const Participant& p) {
                                   return p.component == 0 && same_label(p.edge.label, e.label);
                               });
        });
        if (survives && !contains_label(chosen, e.label)) chosen.push_back(e.label);
    }
    std::sort(chosen.begin(), chosen.end(), LabelLess{});
    return chosen;
}

} // namespace bht
