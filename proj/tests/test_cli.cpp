// Drives the installed binary end to end (path via the PCI_BIN environment
// variable set by ctest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pci/evaluate.hpp"
#include "pci/graph.hpp"

#include <json.hpp>

using namespace pci;
namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* p = std::getenv("PCI_BIN");
    REQUIRE(p != nullptr);
    return p;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "pci_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generate rgg produces a loadable instance") {
    const fs::path out = work_dir() / "a.json";
    CHECK(run("generate rgg --n 40 --radius 0.15 --seed 7 --out " + out.string()) == 0);
    const InterferenceGraph g = load_instance(out.string());
    CHECK(g.n == 40);
}

TEST_CASE("generate count produces distinct files") {
    const fs::path out = work_dir() / "batch.json";
    CHECK(run("generate rgg --n 20 --radius 0.2 --count 3 --seed 7 --out " + out.string()) == 0);
    const fs::path f0 = work_dir() / "batch_000.json";
    const fs::path f1 = work_dir() / "batch_001.json";
    const fs::path f2 = work_dir() / "batch_002.json";
    REQUIRE(fs::exists(f0));
    REQUIRE(fs::exists(f1));
    REQUIRE(fs::exists(f2));
    CHECK(slurp(f0) != slurp(f1));
    CHECK(slurp(f1) != slurp(f2));
}

TEST_CASE("generate randw writes a dense instance") {
    const fs::path out = work_dir() / "w.json";
    CHECK(run("generate randw --n 20 --b 1.0 --seed 3 --out " + out.string()) == 0);
    const InterferenceGraph g = load_instance(out.string());
    CHECK(g.n == 20);
    CHECK(g.e1.empty());
}

TEST_CASE("solve writes plan, report, and trace; report matches re-evaluation") {
    const fs::path inst = work_dir() / "a.json";
    const fs::path plan = work_dir() / "plan.json";
    CHECK(run("solve --in " + inst.string() + " --seed 1 --out " + plan.string()) == 0);

    const InterferenceGraph g = load_instance(inst.string());
    const PciPlan p = load_plan(plan.string());
    const EvalReport re = evaluate_plan(g, p);
    CHECK(re.collisions == 0);
    CHECK(re.confusions == 0);

    const auto report = nlohmann::json::parse(slurp(work_dir() / "plan.report.json"));
    CHECK(report.at("mod3_interference").get<double>() == re.mod3_interference);
    CHECK(report.at("mod30_interference").get<double>() == re.mod30_interference);
    CHECK(report.at("collisions").get<long long>() == re.collisions);
    CHECK(report.at("confusions").get<long long>() == re.confusions);
    CHECK(fs::exists(work_dir() / "plan.trace.csv"));
}

TEST_CASE("solve supports the baseline methods") {
    const fs::path inst = work_dir() / "a.json";
    for (const std::string m : {"gp-ls", "ggc"}) {
        const fs::path plan = work_dir() / ("plan_" + m + ".json");
        CHECK(run("solve --in " + inst.string() + " --method " + m + " --seed 1 --out " +
                  plan.string()) == 0);
        CHECK(fs::exists(plan));
    }
}

TEST_CASE("solve partial preserves unchangeable PCIs bit-exact") {
    const fs::path inst = work_dir() / "a.json";
    const InterferenceGraph g = load_instance(inst.string());

    ChangeableSet cs;
    for (int i = 0; i < g.n; ++i) cs.baseline.pci.push_back((i * 37) % 1008);
    for (int i = 0; i < g.n; i += 3) cs.changeable.push_back(i);
    const fs::path csfile = work_dir() / "changeable.json";
    store_changeable(cs, csfile.string());

    const fs::path plan = work_dir() / "partial_plan.json";
    CHECK(run("solve --in " + inst.string() + " --partial " + csfile.string() + " --seed 2 --out " +
              plan.string()) == 0);
    const PciPlan p = load_plan(plan.string());
    std::vector<bool> is_changeable(g.n, false);
    for (int i : cs.changeable) is_changeable[i] = true;
    for (int i = 0; i < g.n; ++i)
        if (!is_changeable[i]) CHECK(p.pci[i] == cs.baseline.pci[i]);
}

TEST_CASE("bench emits one row per method and instance, reproducibly") {
    const fs::path i0 = work_dir() / "batch_000.json";
    const fs::path i1 = work_dir() / "batch_001.json";
    const fs::path csv1 = work_dir() / "bench1.csv";
    const fs::path csv2 = work_dir() / "bench2.csv";
    const std::string common = "bench --in " + i0.string() + " --in " + i1.string() +
                               " --methods gp-pmd,ggc --seed 5 --no-timing --out ";
    CHECK(run(common + csv1.string()) == 0);
    CHECK(run(common + csv2.string()) == 0);
    const std::string text = slurp(csv1);
    CHECK(text == slurp(csv2));  // byte-identical rerun
    CHECK(text.rfind("method,instance,collisions,confusions,mod3,mod30,time_s", 0) == 0);
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 5);  // header + 2 instances x 2 methods
}

TEST_CASE("partition writes labels and trace") {
    const fs::path w = work_dir() / "w.json";
    const fs::path labels = work_dir() / "labels.json";
    const fs::path inner = work_dir() / "inner.csv";
    CHECK(run("partition --in " + w.string() + " --k 3 --eps1 1e-4 --rho0 1e-8 --seed 1 --out " +
              labels.string() + " --inner-trace " + inner.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(labels));
    CHECK(doc.at("labels").size() == 20);
    const std::string trace = slurp(work_dir() / "labels.trace.csv");
    CHECK(trace.rfind("outer_iter,rho,inner_iters,F,kl_gap,ortho_criterion", 0) == 0);
    const std::string inner_text = slurp(inner);
    CHECK(inner_text.rfind("outer_iter,inner_iter,rho,t,F,kl", 0) == 0);
}

TEST_CASE("partition with k = 1 labels everything zero") {
    const fs::path w = work_dir() / "w.json";
    const fs::path labels = work_dir() / "labels_k1.json";
    CHECK(run("partition --in " + w.string() + " --k 1 --out " + labels.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(labels));
    for (const auto& l : doc.at("labels")) CHECK(l.get<int>() == 0);
}

TEST_CASE("partition pgp variant runs") {
    const fs::path w = work_dir() / "w.json";
    const fs::path labels = work_dir() / "labels_pgp.json";
    CHECK(run("partition --in " + w.string() + " --k 3 --method pgp --seed 1 --out " +
              labels.string()) == 0);
    CHECK(fs::exists(labels));
}

TEST_CASE("usage and io errors exit with code 1") {
    CHECK(run("solve") == 1);                                       // missing --in
    CHECK(run("solve --in /nonexistent.json --out /tmp/x.json") == 1);
    CHECK(run("frobnicate") == 1);                                  // unknown subcommand
    CHECK(run("partition --in /nonexistent.json --k 3") == 1);
}
