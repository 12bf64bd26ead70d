// Reference implementation of the external-model wire protocol.
//
// Speaks the line protocol on stdin/stdout: handshake "PARALLAX-MODEL 1" ->
// "OK <dim>", then EVAL batches answered 0/1 per point, END to exit. The
// model itself is a spherical shell inner <= |p| <= outer centered at the
// origin.
//
// Usage: shell_model_demo <dim> <inner> <outer> [--break-handshake|--partial]
// The two flags deliberately violate the protocol so the client's error
// handling can be exercised.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    if (argc < 4) {
        std::fprintf(stderr, "usage: %s <dim> <inner> <outer> [--break-handshake|--partial]\n", argv[0]);
        return 64;
    }
    const int dim = std::atoi(argv[1]);
    const double inner = std::atof(argv[2]);
    const double outer = std::atof(argv[3]);
    bool break_handshake = false, partial = false;
    for (int i = 4; i < argc; ++i) {
        if (std::strcmp(argv[i], "--break-handshake") == 0) break_handshake = true;
        else if (std::strcmp(argv[i], "--partial") == 0) partial = true;
    }
    if (dim <= 0 || inner < 0 || outer <= inner) {
        std::fprintf(stderr, "bad shell parameters\n");
        return 64;
    }

    std::string line;
    if (!std::getline(std::cin, line)) return 65;
    if (line != "PARALLAX-MODEL 1") {
        std::fprintf(stderr, "unexpected handshake: %s\n", line.c_str());
        return 65;
    }
    if (break_handshake) {
        std::printf("HELLO?\n");
        std::fflush(stdout);
        return 0;
    }
    std::printf("OK %d\n", dim);
    std::fflush(stdout);

    while (std::getline(std::cin, line)) {
        if (line == "END") return 0;
        std::istringstream header(line);
        std::string cmd;
        long count = 0;
        if (!(header >> cmd >> count) || cmd != "EVAL" || count < 0) {
            std::fprintf(stderr, "unexpected request: %s\n", line.c_str());
            return 65;
        }
        std::vector<int> verdicts;
        verdicts.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            if (!std::getline(std::cin, line)) return 65;
            std::istringstream coords(line);
            double c = 0, sq = 0;
            int seen = 0;
            while (coords >> c) {
                sq += c * c;
                ++seen;
            }
            if (seen != dim) {
                std::fprintf(stderr, "expected %d coordinates, got %d\n", dim, seen);
                return 65;
            }
            const double r = std::sqrt(sq);
            verdicts.push_back(inner <= r && r <= outer ? 1 : 0);
        }
        const long emit = partial ? count / 2 : count;
        for (long i = 0; i < emit; ++i) std::printf("%d\n", verdicts[static_cast<std::size_t>(i)]);
        std::fflush(stdout);
        if (partial) return 0;
    }
    return 0;
}
