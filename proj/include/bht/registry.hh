#ifndef BHT_REGISTRY_HH_
#define BHT_REGISTRY_HH_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bht/composition.hh"

namespace bht {

/// Property key under which behavioral models are registered.
inline constexpr const char* behavior_property = "BEHAVIOR";

using PropertyValue = std::variant<std::string, std::int64_t, double, std::vector<BehavioralType>>;

struct ServiceRecord {
    std::uint64_t service_id = 0;
    std::string owner; // bundle id
    std::vector<std::string> interfaces;
    std::map<std::string, PropertyValue> properties;

    std::vector<BehavioralType> behavior_models() const;
};

/// "calls:outgoing" pairs with "calls:incoming" and vice versa; any other
/// aspect pairs with itself.
std::string complementary_aspect(const std::string& aspect);

/// In-process service registry: components register objects under interface
/// names with a property dictionary whose "BEHAVIOR" entry carries behavioral
/// models. Safe for concurrent use; every operation is atomic.
class Registry {
public:
    /// Validates any BEHAVIOR models and stores the record; returns the fresh
    /// service id.
    std::uint64_t register_service(const std::string& owner,
                                   std::vector<std::string> interfaces,
                                   std::map<std::string, PropertyValue> properties);

    void unregister(std::uint64_t service_id);

    /// Records whose interface list contains `interface_name` (when given)
    /// and that carry a BEHAVIOR model with the given aspect (when given),
    /// ordered by service id.
    std::vector<ServiceRecord> query(const std::optional<std::string>& interface_name = {},
                                     const std::optional<std::string>& aspect = {}) const;

    /// Pairs `required` with every registered model of the peer aspect
    /// (default: complementary to required's), runs both checkers on the
    /// two-component system and ranks results: clean verdicts first, then by
    /// witness count, then by service id. One entry per candidate model.
    std::vector<std::pair<ServiceRecord, AnalysisVerdict>> discover_compatible(
        const BehavioralType& required,
        const std::optional<std::string>& peer_aspect = {}) const;

private:
    mutable std::mutex mutex_;
    std::map<std::uint64_t, ServiceRecord> records_;
    std::uint64_t next_id_ = 1;
};

/// The runtime adaptation procedure: compose `own` with the peer's expected
/// behavior, synthesize priorities, and return the labels of own's initial
/// branches that survive the restriction (empty when no restriction was
/// needed). Throws NoCompatibleChoice when synthesis finds no clean rule set.
std::vector<Label> adapt_protocol(const BehavioralType& own, const BehavioralType& peer);

/// Two-component system ("required"/"candidate" by default) with CallOut
/// targets of each side rewritten to point at the other, so declared targets
/// from foreign contexts do not leak into the pairing.
ComponentSystem pair_system(const BehavioralType& first, const BehavioralType& second,
                            const std::string& first_name, const std::string& second_name);

} // namespace bht

#endif // BHT_REGISTRY_HH_
