// Benchmark: serial vs OpenMP-parallel exhaustive alignment-feasibility
// search. Both paths must produce identical certificates; the parallel one
// only wins when the candidate count is large and threads are available.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include "mscr/analyzer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mscr;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const IAInstance& inst, bool parallel, uint64_t* feasible) {
    auto t0 = Clock::now();
    SearchCertificate cert = exhaustive_search(inst, parallel);
    auto t1 = Clock::now();
    *feasible = cert.feasible_count;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    uint32_t q = argc > 1 ? static_cast<uint32_t>(std::stoul(argv[1])) : 16;
    uint32_t k = argc > 2 ? static_cast<uint32_t>(std::stoul(argv[2])) : 3;
    uint32_t d = argc > 3 ? static_cast<uint32_t>(std::stoul(argv[3])) : 4;
    int repeats = argc > 4 ? std::stoi(argv[4]) : 3;

    FieldPtr field;
    if ((q & (q - 1)) == 0) {
        uint32_t m = 0;
        while ((1u << m) < q) ++m;
        field = Field::binary(m);
    } else {
        field = Field::prime(q);
    }

    IAInstance inst = IAInstance::random(k, d, 2, field, 42);
    uint64_t candidates = projective_point_count(field->order(), inst.alpha);
    std::cout << "instance: " << inst.describe() << "\ncandidates: " << candidates << "\n";
#ifdef _OPENMP
    std::cout << "omp max threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; both runs are serial\n";
#endif

    for (int r = 0; r < repeats; ++r) {
        uint64_t fs = 0, fp = 0;
        double serial_ms = run_ms(inst, false, &fs);
        double parallel_ms = run_ms(inst, true, &fp);
        if (fs != fp) {
            std::cerr << "MISMATCH: serial found " << fs << " feasible, parallel " << fp
                      << "\n";
            return 1;
        }
        std::cout << "run " << r << ": serial " << serial_ms << " ms, parallel "
                  << parallel_ms << " ms, speedup " << serial_ms / parallel_ms
                  << "x, feasible " << fs << "\n";
    }
    return 0;
}
