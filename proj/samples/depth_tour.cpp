// Small API tour: build a configuration, query its depth at a point, and
// locate a median.

#include <iostream>

#include <csdepth/csdepth.hpp>

int main() {
    using namespace csdepth;

    std::vector<std::vector<Point>> classes = {
        {{Rat(4), Rat(1)}, {Rat(-3), Rat(2)}},
        {{Rat(1), Rat(5)}, {Rat(-1), Rat(-4)}},
        {{Rat(-5), Rat(-2)}, {Rat(3), Rat(-3)}},
    };
    const ColourConfiguration cfg(std::move(classes));

    const Point query{Rat(0), Rat(0)};
    const DepthBreakdown breakdown = csd(query, cfg);
    std::cout << "depth of the origin: " << breakdown.colourful << "\n";
    std::cout << "  over all triangles: " << breakdown.total_mono << "\n";

    const SweepResult median = sweep_median(cfg);
    std::cout << "median depth: " << median.depth << " at (" << format_rat(median.witness.x) << ", "
              << format_rat(median.witness.y) << ")\n";

    const std::int64_t check = oracle::csd_bruteforce(median.witness, cfg);
    std::cout << "brute-force depth at the witness: " << check << "\n";
    return 0;
}
