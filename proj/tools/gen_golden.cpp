// Regenerates the frozen serialization fixtures under tests/golden/. Run
// after an intentional format change, review the diff, commit the files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fixtures.hpp"
#include "sensekit/serialization.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_golden <output-dir>\n";
        return 2;
    }
    namespace fs = std::filesystem;
    fs::path dir(argv[1]);
    fs::create_directories(dir);

    for (const sensekit::SensorSample& sample : sensekit::testsupport::goldenSamples()) {
        std::string name(sensekit::canonicalName(sample.sensorType));

        std::ofstream csv(dir / (name + ".csv"), std::ios::binary);
        sensekit::writeSamplesCsv(csv, sample.sensorType, {&sample, 1});

        std::ofstream jsonl(dir / (name + ".jsonl"), std::ios::binary);
        sensekit::writeSamplesJsonl(jsonl, {&sample, 1});
    }
    std::cout << "wrote golden files to " << dir.string() << "\n";
    return 0;
}
