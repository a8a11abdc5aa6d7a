#include "bht/fixtures.hh"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bht/errors.hh"
#include "json_reader.hh"

#ifndef BHT_FIXTURE_DIR
#define BHT_FIXTURE_DIR "fixtures"
#endif

namespace bht {

std::string fixture_dir() {
    if (const char* env = std::getenv("BHT_FIXTURES")) return env;
    return BHT_FIXTURE_DIR;
}

std::string fixture_path(const std::string& name) { return fixture_dir() + "/" + name; }

std::string manifest_path() { return fixture_path("manifest.json"); }

FixtureSet fixtures() {
    FixtureSet set;
    set.dir = fixture_dir();

    std::ifstream in(manifest_path(), std::ios::binary);
    if (!in)
        throw Error(errc::parse_error, "cannot open fixture manifest " + manifest_path(), 1, 1);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    detail::JsonPositions positions;
    const auto manifest = detail::parse_json(buffer.str(), positions);
    for (const auto& entry : manifest.at("fixtures"))
        set.files.push_back(entry.at("file").get<std::string>());
    return set;
}

ModelDocument load_fixture(const std::string& name) { return load_file(fixture_path(name)); }

} // namespace bht
