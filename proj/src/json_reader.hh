#ifndef BHT_JSON_READER_HH_
#define BHT_JSON_READER_HH_

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

namespace bht::detail {

/// Line/column (1-based) of every value in a parsed document, keyed by JSON
/// pointer path ("" for the root, "/edges/0/from", ...).
struct JsonPositions {
    std::map<std::string, std::pair<int, int>> at;

    std::pair<int, int> of(const std::string& path) const {
        const auto it = at.find(path);
        return it == at.end() ? std::pair<int, int>{1, 1} : it->second;
    }
};

/// Strict RFC 8259 parse into an order-preserving DOM, recording positions.
/// Rejects duplicate object keys. Throws bht::Error(parse_error) with the
/// offending line/column.
nlohmann::ordered_json parse_json(std::string_view text, JsonPositions& positions);

} // namespace bht::detail

#endif // BHT_JSON_READER_HH_
