#ifndef BHT_FIXTURES_HH_
#define BHT_FIXTURES_HH_

#include <string>
#include <vector>

#include "bht/model_io.hh"

namespace bht {

/// The example corpus shipped under fixtures/: protocol pair, booking
/// system models, simulator systems and scripts, plus manifest.json pinning
/// the expected analysis outcome of each file.
struct FixtureSet {
    std::string dir;
    std::vector<std::string> files;
};

/// Resolution order: BHT_FIXTURES environment variable, then the build-time
/// location of the repository's fixtures/ directory.
std::string fixture_dir();

std::string fixture_path(const std::string& name);
std::string manifest_path();

FixtureSet fixtures();

ModelDocument load_fixture(const std::string& name);

} // namespace bht

#endif // BHT_FIXTURES_HH_
