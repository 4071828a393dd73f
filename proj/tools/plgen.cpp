// plgen: random process models, noisy event logs, drifts and live streams.
//
// Exit codes: 0 ok, 1 usage or configuration, 2 model validation, 3 runtime failure.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "config.hpp"
#include "plgen/control.hpp"
#include "plgen/error.hpp"
#include "plgen/evolve.hpp"
#include "plgen/grammar.hpp"
#include "plgen/io.hpp"
#include "plgen/scripting.hpp"
#include "plgen/sim.hpp"
#include "plgen/stream.hpp"

namespace fs = std::filesystem;
using namespace plgen;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kRuntime = 3 };

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

struct Options {
    std::string config;
    std::uint64_t seed = 0;
    unsigned jobs = 1;

    // grammar
    double p_loop = 0;
    std::string weights;
    int max_and = 0, max_xor = 0, max_depth = 0;
    double p_data = 0, p_required = 0;

    // generate
    std::uint64_t count = 1;
    std::string out_dir = ".";
    std::string output;
    std::string prefix = "model";

    // simulate
    std::string model;
    std::uint64_t traces = 1000;
    std::string noise;
    double loop_probability = 0.5;
    std::int64_t default_gap = 1;
    std::string case_prefix;
    std::string lifecycle;
    bool allow_io = false;

    // evolve
    double p_replace = 0.1;
    int sub_max_depth = 0;
    std::string sub_weights;

    // stream
    std::string host;
    std::uint16_t port = 0, control_port = 0;
    double multiplier = 1.0;
    unsigned parallel = 1;
    bool max_rate = false;
    std::string format;
    std::uint64_t max_events = 0;
    std::uint64_t status_every = 100;
    std::string static_dir;

    // export
    std::string export_format;
};

// False for flags the subcommand does not define, so shared helpers work for all of them.
bool given(const CLI::App& sub, const char* name) {
    const auto* opt = sub.get_option_no_throw(name);
    return opt && opt->count() > 0;
}

cli::Settings settings_for(const Options& o, const CLI::App& app) {
    cli::Settings s = o.config.empty() ? cli::Settings{} : cli::load_settings(o.config);
    if (given(app, "--seed") || !s.seed) s.seed = o.seed;
    const auto seed = *s.seed;
    s.grammar.seed = seed;
    s.simulation.seed = seed;
    s.evolution.seed = seed;
    return s;
}

void apply_grammar_flags(const Options& o, const CLI::App& sub, GrammarConfig& g) {
    if (given(sub, "--p-loop")) g.p_loop = o.p_loop;
    if (given(sub, "--weights")) g.weights = cli::parse_weights(o.weights);
    if (given(sub, "--max-and")) g.max_and_branches = o.max_and;
    if (given(sub, "--max-xor")) g.max_xor_branches = o.max_xor;
    if (given(sub, "--max-depth")) g.max_depth = o.max_depth;
    if (given(sub, "--p-data")) g.p_dataobject = o.p_data;
    if (given(sub, "--p-required")) g.p_required = o.p_required;
    g.check();
}

void apply_simulation_flags(const Options& o, const CLI::App& sub, SimulationConfig& c) {
    if (given(sub, "--traces")) c.trace_count = o.traces;
    if (given(sub, "--noise")) c.noise = noise_profile(o.noise);
    if (given(sub, "--loop-probability")) c.loop_probability = o.loop_probability;
    if (given(sub, "--default-gap")) c.default_gap_seconds = o.default_gap;
    if (given(sub, "--case-prefix")) c.case_id_prefix = o.case_prefix;
    if (given(sub, "--instantaneous-lifecycle")) c.instantaneous_lifecycle = lifecycle_from_string(o.lifecycle);
    if (o.allow_io) c.scripts.allow_io = true;
    c.check();
}

void add_grammar_options(CLI::App* sub, Options& o) {
    sub->add_option("--p-loop", o.p_loop, "loop probability (pi1)");
    sub->add_option("--weights", o.weights, "weights for activity,sequence,parallel,exclusive,skip");
    sub->add_option("--max-and", o.max_and, "max branches of a parallel block");
    sub->add_option("--max-xor", o.max_xor, "max branches of an exclusive block");
    sub->add_option("--max-depth", o.max_depth, "max derivation depth");
    sub->add_option("--p-data", o.p_data, "data object probability (pi12)");
    sub->add_option("--p-required", o.p_required, "share of data objects that are required");
}

void add_simulation_options(CLI::App* sub, Options& o) {
    sub->add_option("--noise", o.noise, "noise profile")->check(CLI::IsMember({"none", "complete", "control_flow_only", "data_only", "names_only"}));
    sub->add_option("--loop-probability", o.loop_probability, "chance of repeating a loop")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--default-gap", o.default_gap, "seconds between activities without a time hook")->check(CLI::NonNegativeNumber);
    sub->add_option("--case-prefix", o.case_prefix, "case id prefix");
    sub->add_option("--instantaneous-lifecycle", o.lifecycle, "lifecycle of single-event activities")->check(CLI::IsMember({"start", "complete"}));
    sub->add_flag("--allow-script-io", o.allow_io, "let hook scripts read and write files");
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text_file(path, text);
    }
}

int cmd_generate(const Options& o, const CLI::App& app, const CLI::App& sub) {
    auto s = settings_for(o, app);
    apply_grammar_flags(o, sub, s.grammar);
    if (!o.output.empty() && o.count != 1) throw ConfigError("--output", "only valid with --count 1");

    std::vector<ProcessModel> models(o.count);
    std::vector<std::uint64_t> seeds(o.count);
    for (std::uint64_t i = 0; i < o.count; ++i) seeds[i] = o.count == 1 ? *s.seed : derive_seed(*s.seed, 0, i);
    const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(std::min<std::uint64_t>(o.count, 64))));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back([&, j] {
            for (std::uint64_t i = j; i < o.count; i += jobs) {
                GrammarConfig g = s.grammar;
                g.seed = seeds[i];
                models[i] = generate_model(g);
            }
        });
    for (auto& t : pool) t.join();

    if (!o.output.empty()) {
        write_output(o.output, export_native(models.front()));
        return kOk;
    }
    fs::create_directories(o.out_dir);
    std::ofstream manifest(fs::path(o.out_dir) / "manifest.csv");
    manifest << "file,seed,activities\n";
    char name[64];
    for (std::uint64_t i = 0; i < o.count; ++i) {
        std::snprintf(name, sizeof name, "_%04llu.plgen.json", static_cast<unsigned long long>(i + 1));
        const auto file = o.prefix + name;
        write_text_file(fs::path(o.out_dir) / file, export_native(models[i]));
        manifest << file << "," << seeds[i] << "," << models[i].activities().size() << "\n";
    }
    if (!manifest) throw Error("cannot write manifest in " + o.out_dir);
    std::cerr << "wrote " << o.count << " model(s) to " << o.out_dir << "\n";
    return kOk;
}

int cmd_simulate(const Options& o, const CLI::App& app, const CLI::App& sub) {
    auto s = settings_for(o, app);
    apply_simulation_flags(o, sub, s.simulation);
    const auto model = read_model_file(o.model);
    const auto log = simulate_log(model, s.simulation, o.jobs);
    if (o.output.empty() || o.output == "-") write_output("-", export_xes(log));
    else write_xes_file(log, o.output);
    return kOk;
}

int cmd_evolve(const Options& o, const CLI::App& app, const CLI::App& sub) {
    auto s = settings_for(o, app);
    if (given(sub, "--p-replace")) s.evolution.p_replace = o.p_replace;
    apply_grammar_flags(o, sub, s.evolution.subprocess);
    if (given(sub, "--sub-max-depth")) s.evolution.subprocess.max_depth = o.sub_max_depth;
    if (given(sub, "--sub-weights")) s.evolution.subprocess.weights = cli::parse_weights(o.sub_weights);
    const auto model = read_model_file(o.model);
    EvolutionReport report;
    const auto evolved = evolve(model, s.evolution, &report);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "replaced " << report.replaced.size() << " activit" << (report.replaced.size() == 1 ? "y" : "ies") << "\n";
    write_output(o.output, export_native(evolved));
    return kOk;
}

int cmd_export(const Options& o, const CLI::App& app, const CLI::App&) {
    (void)settings_for(o, app);
    const auto model = read_model_file(o.model);
    if (o.export_format == "pnml") write_output(o.output, export_pnml(model));
    else if (o.export_format == "dot") write_output(o.output, export_dot(model));
    else write_output(o.output, export_native(model));
    return kOk;
}

int cmd_validate(const Options& o) {
    const auto model = read_model_file(o.model);
    const auto report = validate(model);
    if (report.empty()) {
        std::cout << o.model << ": valid (" << model.activities().size() << " activities)\n";
        return kOk;
    }
    std::cout << o.model << ": " << report.size() << " violation(s)\n" << describe(report);
    return kInvalid;
}

int cmd_stream(const Options& o, const CLI::App& app, const CLI::App& sub) {
    auto s = settings_for(o, app);
    apply_simulation_flags(o, sub, s.simulation);
    auto& c = s.stream;
    c.simulation = s.simulation;
    if (given(sub, "--host")) c.host = s.control_host = o.host;
    if (given(sub, "--port")) c.port = o.port;
    if (given(sub, "--control-port")) s.control_port = o.control_port;
    if (given(sub, "--multiplier")) c.time_multiplier = o.multiplier;
    if (given(sub, "--parallel")) c.parallel_instances = o.parallel;
    if (o.max_rate) c.max_rate = true;
    if (given(sub, "--format")) c.format = wire_format_from_string(o.format);
    if (given(sub, "--max-events")) c.max_events = o.max_events;
    c.check();

    const auto model = read_model_file(o.model);
    auto session = std::make_shared<StreamSession>(model, c);
    ControlServer control;
    if (!o.static_dir.empty()) control.set_static_dir(o.static_dir);
    control.attach(session);
    session->start();
    control.start(s.control_host, s.control_port);
    std::cout << "event port: " << session->event_port() << "\ncontrol port: " << control.port() << std::endl;

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::uint64_t next_report = o.status_every;
    while (!g_interrupted && session->running()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        if (o.status_every == 0) continue;
        const auto st = session->status();
        if (st.events_emitted >= next_report) {
            std::cout << "events " << st.events_emitted << "  traces " << st.traces_generated << "  buffer " << st.buffer_size << "  clients "
                      << st.connected_clients << "  multiplier " << st.time_multiplier << std::endl;
            while (next_report <= st.events_emitted) next_report += o.status_every;
        }
    }
    control.stop();
    session->stop();
    std::cout << "stopped after " << session->status().events_emitted << " events" << std::endl;
    return kOk;
}

int cmd_pipeline(const Options& o, const CLI::App& app, const CLI::App& sub) {
    auto s = settings_for(o, app);
    apply_grammar_flags(o, sub, s.grammar);
    apply_simulation_flags(o, sub, s.simulation);
    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    auto model = generate_model(s.grammar);
    write_text_file(dir / "model.plgen.json", export_native(model));
    if (s.has_evolution) {
        EvolutionReport report;
        model = evolve(model, s.evolution, &report);
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        write_text_file(dir / "evolved.plgen.json", export_native(model));
    }
    write_text_file(dir / "model.pnml", export_pnml(model));
    write_text_file(dir / "model.dot", export_dot(model));
    write_xes_file(simulate_log(model, s.simulation, o.jobs), dir / "log.xes");
    std::cerr << "pipeline output in " << o.out_dir << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random business process models, noisy event logs, concept drift and live event streams."};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config, "JSON config file; flags override it")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "random seed")->envname("PLGEN_SEED");
    app.add_option("-j,--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("generate", "generate random models");
    add_grammar_options(gen, o);
    gen->add_option("--count", o.count, "number of models")->check(CLI::PositiveNumber);
    gen->add_option("--out-dir", o.out_dir, "directory for models and manifest.csv");
    gen->add_option("--prefix", o.prefix, "model file name prefix");
    gen->add_option("-o,--output", o.output, "single output file (with --count 1), - for stdout");

    auto* sim = app.add_subcommand("simulate", "simulate a model into an XES log");
    sim->add_option("model", o.model, "model file (.plgen.json or .pnml)")->required()->check(CLI::ExistingFile);
    sim->add_option("--traces", o.traces, "number of traces")->check(CLI::PositiveNumber);
    add_simulation_options(sim, o);
    sim->add_option("-o,--output", o.output, "output .xes or .xes.gz (default stdout)");

    auto* evo = app.add_subcommand("evolve", "replace random activities with new subprocesses");
    evo->add_option("model", o.model, "model file")->required()->check(CLI::ExistingFile);
    evo->add_option("--p-replace", o.p_replace, "per-activity replacement probability")->check(CLI::Range(0.0, 1.0));
    evo->add_option("--sub-max-depth", o.sub_max_depth, "max depth of replacement fragments")->check(CLI::PositiveNumber);
    evo->add_option("--sub-weights", o.sub_weights, "grammar weights for replacement fragments");
    evo->add_option("-o,--output", o.output, "output model file (default stdout)");

    auto* str = app.add_subcommand("stream", "stream simulated events over TCP with an HTTP control plane");
    str->add_option("model", o.model, "model file")->required()->check(CLI::ExistingFile);
    str->add_option("--host", o.host, "listen address for both ports");
    str->add_option("--port", o.port, "event port (0 picks one)");
    str->add_option("--control-port", o.control_port, "HTTP control port (0 picks one)");
    str->add_option("--multiplier", o.multiplier, "real seconds per simulated second")->check(CLI::PositiveNumber);
    str->add_option("--parallel", o.parallel, "parallel instances (queues)")->check(CLI::PositiveNumber);
    str->add_flag("--max-rate", o.max_rate, "ignore timing and emit as fast as possible");
    str->add_option("--format", o.format, "wire format")->check(CLI::IsMember({"ndjson", "xes_fragment"}));
    str->add_option("--max-events", o.max_events, "stop after this many events");
    str->add_option("--status-every", o.status_every, "print a status line every N events (0 = never)");
    str->add_option("--static-dir", o.static_dir, "serve a dashboard build from this directory")->check(CLI::ExistingDirectory);
    add_simulation_options(str, o);

    auto* exp = app.add_subcommand("export", "export a model as PNML, DOT or native JSON");
    exp->add_option("model", o.model, "model file")->required()->check(CLI::ExistingFile);
    exp->add_option("--format", o.export_format, "pnml, dot or native")->required()->check(CLI::IsMember({"pnml", "dot", "native"}));
    exp->add_option("-o,--output", o.output, "output file (default stdout)");

    auto* val = app.add_subcommand("validate", "check a model's structural invariants");
    val->add_option("model", o.model, "model file")->required()->check(CLI::ExistingFile);

    auto* pipe = app.add_subcommand("pipeline", "generate, evolve, simulate and export in one go");
    add_grammar_options(pipe, o);
    add_simulation_options(pipe, o);
    pipe->add_option("--traces", o.traces, "number of traces")->check(CLI::PositiveNumber);
    pipe->add_option("--out-dir", o.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_generate(o, app, *gen);
        if (*sim) return cmd_simulate(o, app, *sim);
        if (*evo) return cmd_evolve(o, app, *evo);
        if (*str) return cmd_stream(o, app, *str);
        if (*exp) return cmd_export(o, app, *exp);
        if (*val) return cmd_validate(o);
        if (*pipe) return cmd_pipeline(o, app, *pipe);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidModelError& e) {
        std::cerr << "error: " << e.what();
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}
