// qmin: command-line driver for the quantum minimum-finding simulator.
//
//   qmin run         --n 64 --runs 5 --seed 7
//   qmin lemma1      --n 64 --runs 100000
//   qmin success     --n 16,64,256,1024 --runs 10000 [--boost 3]
//   qmin cost        --n 64,1024 --runs 10000
//   qmin equivalence --n 16 --runs 10000
//   qmin bounds      --n 4,1024 --sweep 1000000
//
// Exit status: 0 pass, 1 statistical failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qmin/harness.hpp"

namespace {

using qmin::harness::Experiment;

struct Defaults {
    std::vector<std::size_t> n;
    std::size_t runs;
};

const std::map<Experiment, Defaults> kDefaults = {
    {Experiment::Run, {{64}, 1}},
    {Experiment::Lemma1, {{64}, 100000}},
    {Experiment::Success, {{16, 64, 256, 1024}, 10000}},
    {Experiment::Cost, {{64, 1024}, 10000}},
    {Experiment::Equivalence, {{16}, 10000}},
    {Experiment::Bounds, {{4, 1024, 65536}, 1}},
};

struct Options {
    std::vector<std::size_t> n;
    std::size_t runs = 0;
    std::uint64_t seed = 1;
    std::string backend = "analytic";
    double lambda = 8.0 / 7.0;
    std::string mode = "distinct";
    std::size_t boost = 1;
    std::string boost_mode = "repeat";
    std::optional<double> timeout;
    std::string format = "json";
    std::string out;
    std::string table;
    unsigned workers = 1;
    bool timing = false;
    bool infinite = false;
    std::size_t sweep = 0;
};

void add_common(CLI::App& sub, Options& o) {
    sub.add_option("--n", o.n, "Table size(s), comma separated")->delimiter(',');
    sub.add_option("--runs", o.runs, "Monte Carlo runs per size");
    sub.add_option("--seed", o.seed, "Master seed");
    sub.add_option("--backend", o.backend, "exact | analytic")->check(CLI::IsMember({"exact", "analytic"}));
    sub.add_option("--lambda", o.lambda, "Exponential-search growth factor, 1 < lambda < 4/3");
    sub.add_option("--mode", o.mode, "distinct | dup:<k>");
    sub.add_option("--boost", o.boost, "Repeat the algorithm c times and keep the best");
    sub.add_option("--boost-mode", o.boost_mode, "repeat | timeout (single run with cap c*2*m0)")
        ->check(CLI::IsMember({"repeat", "timeout"}));
    sub.add_option("--timeout", o.timeout, "Override the stage-2 time-step cap");
    sub.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--out", o.out, "Write the report here instead of stdout");
    sub.add_option("--table", o.table, "Input table: one decimal integer per line");
    sub.add_option("--workers", o.workers, "Worker threads (does not change results)");
    sub.add_flag("--timing", o.timing, "Embed wall-clock duration in the JSON report");
}

qmin::harness::ExperimentConfig make_config(Experiment e, const Options& o) {
    qmin::harness::ExperimentConfig c;
    const auto& d = kDefaults.at(e);
    c.experiment = e;
    c.n = o.n.empty() ? d.n : o.n;
    c.runs = o.runs ? o.runs : d.runs;
    c.seed = o.seed;
    c.backend = qmin::parse_backend(o.backend);
    c.lambda = o.lambda;
    c.mode = qmin::harness::parse_mode(o.mode);
    c.boost = o.boost;
    c.boost_mode = o.boost_mode == "timeout" ? qmin::BoostMode::ExtendedTimeout : qmin::BoostMode::Repeat;
    c.timeout = o.timeout;
    c.infinite = o.infinite;
    c.sweep_max = o.sweep;
    c.workers = o.workers;
    if (!o.table.empty()) {
        std::ifstream in(o.table);
        if (!in) throw std::invalid_argument("cannot open table file " + o.table);
        c.table = qmin::read_table(in);
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate and verify quantum minimum finding"};
    app.require_subcommand(1);
    Options opts;

    const std::pair<Experiment, const char*> commands[] = {
        {Experiment::Run, "Run the algorithm and print one record per run"},
        {Experiment::Lemma1, "Estimate how often each rank is ever chosen as threshold"},
        {Experiment::Success, "Estimate the success probability under the default cap"},
        {Experiment::Cost, "Estimate the expected time until the threshold holds the minimum"},
        {Experiment::Equivalence, "Compare the exact statevector and analytic backends"},
        {Experiment::Bounds, "Evaluate the closed-form bounds"},
    };
    std::map<CLI::App*, Experiment> which;
    for (auto [e, help] : commands) {
        auto* sub = app.add_subcommand(std::string(qmin::harness::to_string(e)), help);
        add_common(*sub, opts);
        if (e == Experiment::Run) sub->add_flag("--infinite", opts.infinite, "Run without the cap");
        if (e == Experiment::Bounds) sub->add_option("--sweep", opts.sweep, "Check every inequality for n in [2, N]");
        which[sub] = e;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Experiment experiment = Experiment::Run;
    for (auto& [sub, e] : which)
        if (sub->parsed()) experiment = e;

    qmin::harness::Report report;
    try {
        report = qmin::harness::execute(make_config(experiment, opts), opts.timing);
    } catch (const std::exception& e) {
        std::cerr << "qmin: " << e.what() << '\n';
        return 2;
    }

    const std::string& text = opts.format == "csv" ? report.csv : report.json;
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.out, std::ios::binary);
        if (!out) {
            std::cerr << "qmin: cannot write " << opts.out << '\n';
            return 2;
        }
        out << text;
    }
    return report.passed ? 0 : 1;
}
