// apxscc: QF_NRA solver front end and benchmark harness.

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "apxscc/smtlib.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace apxscc;

namespace {

constexpr int kExitSat = 10, kExitUnsat = 20, kExitUnknown = 0, kExitUsage = 64, kExitParse = 65, kExitInput = 66,
              kExitInternal = 70;

struct SolveFlags {
    std::string variant = "baseline";
    std::optional<unsigned long> max_apx_cells;
    std::optional<std::string> dynamic_c, dynamic_d;
    std::optional<double> timeout_ms;
    unsigned long max_conflicts = SolverLimits{}.max_conflicts;
    unsigned long seed = 0;
    std::string stats_path;
    bool model = false;
};

ApproxConfig make_config(const SolveFlags& f) {
    ApproxConfig c = ApproxConfig::preset(f.variant);
    if (f.max_apx_cells) c.max_apx_cells = *f.max_apx_cells;
    if (f.dynamic_c || f.dynamic_d) {
        ApproxConfig::Dynamic d = c.dynamic.value_or(ApproxConfig::preset("dynamic").dynamic.value());
        if (f.dynamic_c) d.c = parse_rational(*f.dynamic_c);
        if (f.dynamic_d) d.d = parse_rational(*f.dynamic_d);
        if (d.c <= 0) throw std::invalid_argument("--dynamic-c must be positive");
        c.dynamic = d;
    }
    return c;
}

void write_stats(const std::string& path, const std::string& instance, const std::string& variant,
                 const SolveResult& r) {
    nlohmann::ordered_json j;
    j["instance"] = instance;
    j["variant"] = variant;
    j["result"] = to_string(r.status);
    j["reason"] = r.reason;
    j["wall_ms"] = r.stats.wall_ms;
    j["scc_calls"] = r.stats.scc_calls;
    j["apx_cells"] = r.stats.apx_cells;
    j["fallbacks"] = r.stats.fallbacks;
    j["max_resultant_degree"] = r.stats.max_resultant_degree;
    j["mult_proxy"] = r.stats.mult_proxy;
    j["resultants"] = r.stats.resultants;
    j["learned_clauses"] = r.stats.learned_clauses;
    j["conflicts"] = r.stats.conflicts;
    j["decisions"] = r.stats.decisions;
    std::ofstream(path) << j.dump(2) << "\n";
}

int run_solve(const std::string& file, const SolveFlags& flags) {
    ApproxConfig config;
    try {
        config = make_config(flags);
    } catch (const std::exception& e) {
        std::cerr << "apxscc: " << e.what() << "\n";
        return kExitUsage;
    }
    std::ifstream in(file);
    if (!in) {
        std::cerr << "apxscc: cannot read " << file << "\n";
        return kExitInput;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    smtlib::Script script;
    try {
        script = smtlib::parse(buf.str());
    } catch (const smtlib::ParseError& e) {
        std::cerr << file << ":" << e.what() << "\n";
        return kExitParse;
    }
    SolverLimits limits;
    limits.timeout_ms = flags.timeout_ms;
    limits.max_conflicts = flags.max_conflicts;
    SolveResult r;
    try {
        r = solve(script.problem(), config, limits);
    } catch (const std::exception& e) {
        std::cerr << "apxscc: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    std::cout << smtlib::print_result(r, script.vars, flags.model || script.wants_model()) << std::flush;
    if (!flags.stats_path.empty()) write_stats(flags.stats_path, file, config.name(), r);
    switch (r.status) {
        case Status::Sat: return kExitSat;
        case Status::Unsat: return kExitUnsat;
        default: return kExitUnknown;
    }
}

// ---------------------------------------------------------------- bench

struct Job {
    std::string instance;  // path relative to the bench directory
    std::string variant;
    fs::path stats;
    pid_t pid = -1;
    std::chrono::steady_clock::time_point start;
};

struct Row {
    std::string instance, variant, result;
    double wall_ms = 0;
    unsigned long scc_calls = 0, apx_cells = 0, fallbacks = 0, max_resultant_degree = 0, learned_clauses = 0;
};

struct BenchFlags {
    std::string dir;
    std::string variants = "baseline";
    double timeout_ms = 60000;
    unsigned jobs = 1;
    std::string out;
    std::optional<unsigned long> max_apx_cells;
    unsigned long max_conflicts = SolverLimits{}.max_conflicts;
    bool no_timing = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

pid_t spawn(const std::string& exe, const std::vector<std::string>& args) {
    pid_t pid = fork();
    if (pid != 0) return pid;
    int null = open("/dev/null", O_WRONLY);
    dup2(null, STDOUT_FILENO);
    dup2(null, STDERR_FILENO);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(exe.c_str()));
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execv(exe.c_str(), argv.data());
    _exit(127);
}

Row finish(const Job& job, int status, double wall_ms) {
    Row row{job.instance, job.variant, "error"};
    row.wall_ms = wall_ms;
    if (WIFEXITED(status)) {
        int code = WEXITSTATUS(status);
        if (code == kExitSat) row.result = "sat";
        if (code == kExitUnsat) row.result = "unsat";
        if (code == kExitUnknown) row.result = "unknown";
    }
    if (row.result != "error") {
        try {
            std::ifstream in(job.stats);
            auto j = nlohmann::json::parse(in);
            row.scc_calls = j.at("scc_calls");
            row.apx_cells = j.at("apx_cells");
            row.fallbacks = j.at("fallbacks");
            row.max_resultant_degree = j.at("max_resultant_degree");
            row.learned_clauses = j.at("learned_clauses");
        } catch (const std::exception&) {
            row.result = "error";
        }
    }
    std::error_code ec;
    fs::remove(job.stats, ec);
    return row;
}

int run_bench(const BenchFlags& flags) {
    std::vector<std::string> variants = split(flags.variants, ',');
    try {
        for (const auto& v : variants) ApproxConfig::preset(v);
    } catch (const std::exception& e) {
        std::cerr << "apxscc: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!fs::is_directory(flags.dir)) {
        std::cerr << "apxscc: not a directory: " << flags.dir << "\n";
        return kExitInput;
    }
    std::vector<std::string> instances;
    for (const auto& e : fs::recursive_directory_iterator(flags.dir))
        if (e.is_regular_file() && e.path().extension() == ".smt2")
            instances.push_back(fs::relative(e.path(), flags.dir).generic_string());
    std::sort(instances.begin(), instances.end());

    const std::string exe = fs::read_symlink("/proc/self/exe").string();
    const fs::path tmp = fs::temp_directory_path();
    std::vector<Job> pending;
    unsigned long counter = 0;
    for (const auto& inst : instances)
        for (const auto& v : variants) {
            Job j{inst, v};
            j.stats = tmp / ("apxscc-" + std::to_string(getpid()) + "-" + std::to_string(counter++) + ".json");
            pending.push_back(std::move(j));
        }
    std::reverse(pending.begin(), pending.end());

    std::vector<Job> running;
    std::vector<Row> rows;
    const unsigned jobs = std::max(1u, flags.jobs);
    while (!pending.empty() || !running.empty()) {
        while (!pending.empty() && running.size() < jobs) {
            Job j = std::move(pending.back());
            pending.pop_back();
            std::vector<std::string> args = {(fs::path(flags.dir) / j.instance).string(), "--variant", j.variant,
                                             "--stats", j.stats.string(), "--max-conflicts",
                                             std::to_string(flags.max_conflicts)};
            if (flags.max_apx_cells) {
                args.push_back("--max-apx-cells");
                args.push_back(std::to_string(*flags.max_apx_cells));
            }
            j.start = std::chrono::steady_clock::now();
            j.pid = spawn(exe, args);
            running.push_back(std::move(j));
        }
        bool progressed = false;
        for (std::size_t i = 0; i < running.size();) {
            Job& j = running[i];
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - j.start).count();
            int status = 0;
            pid_t done = waitpid(j.pid, &status, WNOHANG);
            if (done == 0 && ms >= flags.timeout_ms) {
                kill(j.pid, SIGKILL);
                waitpid(j.pid, &status, 0);
                Row row = finish(j, status, std::max(ms, flags.timeout_ms));
                row.result = "timeout";
                row.scc_calls = row.apx_cells = row.fallbacks = row.max_resultant_degree = row.learned_clauses = 0;
                rows.push_back(row);
            } else if (done == j.pid) {
                rows.push_back(finish(j, status, ms));
            } else {
                ++i;
                continue;
            }
            running.erase(running.begin() + static_cast<long>(i));
            progressed = true;
        }
        if (!progressed) std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.instance, a.variant) < std::tie(b.instance, b.variant);
    });

    std::ofstream file;
    if (!flags.out.empty()) file.open(flags.out);
    std::ostream& os = flags.out.empty() ? std::cout : file;
    os << "instance,variant,result,wall_ms,scc_calls,apx_cells,fallbacks,max_resultant_degree,learned_clauses\n";
    for (const auto& r : rows) {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", flags.no_timing ? 0.0 : r.wall_ms);
        os << r.instance << "," << r.variant << "," << r.result << "," << wall << "," << r.scc_calls << ","
           << r.apx_cells << "," << r.fallbacks << "," << r.max_resultant_degree << "," << r.learned_clauses << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"apxscc: QF_NRA solver with approximated single cell explanations"};
    app.require_subcommand(0, 1);

    SolveFlags sf;
    std::string file;
    app.add_option("file", file, "SMT-LIB2 instance");
    app.add_option("--variant", sf.variant, "baseline | simple-<j> | dynamic | taylor | pwl-<k> | outside");
    app.add_option("--max-apx-cells", sf.max_apx_cells, "budget of approximated cells");
    app.add_option("--dynamic-c", sf.dynamic_c, "slope of the dynamic criterion (rational)");
    app.add_option("--dynamic-d", sf.dynamic_d, "offset of the dynamic criterion (rational)");
    app.add_option("--timeout-ms", sf.timeout_ms, "in-process time budget");
    app.add_option("--max-conflicts", sf.max_conflicts, "step budget");
    app.add_option("--seed", sf.seed, "accepted for reproducible harness runs; the solver is deterministic");
    app.add_option("--stats", sf.stats_path, "write run statistics as JSON");
    app.add_flag("--model", sf.model, "print the model on sat");

    BenchFlags bf;
    CLI::App* bench = app.add_subcommand("bench", "run every .smt2 below a directory under each variant");
    bench->add_option("dir", bf.dir, "instance directory")->required();
    bench->add_option("--variants", bf.variants, "comma-separated variant names");
    bench->add_option("--timeout-ms", bf.timeout_ms, "per-run wall-clock budget, enforced by killing the run");
    bench->add_option("--jobs", bf.jobs, "parallel runs");
    bench->add_option("--out", bf.out, "CSV output path (default stdout)");
    bench->add_option("--max-apx-cells", bf.max_apx_cells, "budget passed to every run");
    bench->add_option("--max-conflicts", bf.max_conflicts, "step budget passed to every run");
    bench->add_flag("--no-timing", bf.no_timing, "write wall_ms as 0 for byte-identical reruns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (bench->parsed()) return run_bench(bf);
    if (file.empty()) {
        std::cerr << "apxscc: missing instance file\n" << app.help();
        return kExitUsage;
    }
    return run_solve(file, sf);
}
