#include "pci/bench.hpp"

#include "pci/util.hpp"

namespace pci {

std::string bench_csv_header() {
    return "method,instance,collisions,confusions,mod3,mod30,time_s";
}

std::string run_bench(const BenchSpec& spec) {
    std::string out = bench_csv_header() + "\n";
    for (const auto& path : spec.instance_paths) {
        const InterferenceGraph g = load_instance(path);
        for (Strategy method : spec.methods) {
            PipelineOptions options;
            options.strategy = method;
            options.threads = spec.threads;
            const PipelineResult res = assign_pci(g, spec.config, options);
            const double t = spec.timing ? res.total_seconds() : 0.0;
            out += strategy_to_string(method) + "," + path + "," +
                   std::to_string(res.report.collisions) + "," +
                   std::to_string(res.report.confusions) + "," +
                   format_double(res.report.mod3_interference) + "," +
                   format_double(res.report.mod30_interference) + "," + format_double(t) + "\n";
        }
    }
    return out;
}

}  // namespace pci
