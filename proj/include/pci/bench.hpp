#pragma once

#include <string>
#include <vector>

#include "pci/pipeline.hpp"

namespace pci {

// Benchmark sweep: one CSV row per (method, instance), columns
// method,instance,collisions,confusions,mod3,mod30,time_s. `timing` off
// writes 0 in the time column so reruns are byte-identical.
struct BenchSpec {
    std::vector<std::string> instance_paths;
    std::vector<Strategy> methods;
    SolverConfig config;
    int threads = 1;
    bool timing = true;
};

std::string bench_csv_header();
std::string run_bench(const BenchSpec& spec);

}  // namespace pci
