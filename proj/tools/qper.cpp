// Command-line experiment runner: heatmaps over all input/weight pairs,
// hybrid training sessions and batches, QASM export, single-pair matching.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qperceptron/densesim.hpp"
#include "qperceptron/encoding.hpp"
#include "qperceptron/heatmap.hpp"
#include "qperceptron/io.hpp"
#include "qperceptron/perceptron.hpp"
#include "qperceptron/trainer.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoConvergence = 3;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::uint64_t shots = 1024;
    int m = 4;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "PRNG seed")->capture_default_str();
    cmd->add_option("--shots", opts.shots, "shots per circuit evaluation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--m", opts.m, "alphabet size (power of two)")->capture_default_str();
}

std::string trace_jsonl(const qp::TrainingTrace& trace) {
    std::string out;
    for (const auto& s : trace.steps) {
        json rec;
        rec["step"] = s.step;
        rec["input"] = qp::code_to_string(s.input);
        rec["weight"] = qp::code_to_string(s.weight_after);
        rec["measured"] = s.measured;
        rec["expected"] = s.expected;
        rec["case"] = qp::to_string(s.case_applied);
        rec["fidelity"] = s.fidelity;
        out += rec.dump() + "\n";
    }
    json summary;
    summary["converged"] = trace.converged;
    summary["total_steps"] = trace.total_steps;
    out += summary.dump() + "\n";
    return out;
}

std::string batch_json(const qp::BatchSummary& s) {
    json out;
    out["sessions"] = s.sessions;
    out["convergence_rate"] = s.convergence_rate;
    out["mean_steps"] = s.mean_steps;
    out["median_steps"] = s.median_steps;
    out["max_steps_observed"] = s.max_steps_observed;
    out["mean_fidelity_curve"] = s.mean_fidelity_curve;
    return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separable-state quantum perceptron simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags take precedence");

    // heatmap
    auto* heatmap = app.add_subcommand("heatmap", "match probabilities over all pattern pairs");
    CommonOpts hm_opts;
    std::size_t hm_qubits = 2;
    bool hm_exact = false;
    std::string hm_out = "heatmap.csv";
    std::string hm_ppm;
    add_common(heatmap, hm_opts);
    heatmap->add_option("--qubits,-n", hm_qubits, "qubits per pattern")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    heatmap->add_flag("--exact", hm_exact, "exact probabilities instead of shot estimates");
    heatmap->add_option("--out", hm_out, "CSV output path")->capture_default_str();
    heatmap->add_option("--ppm", hm_ppm, "optional grayscale PGM (P2) output path");

    // train
    auto* train = app.add_subcommand("train", "one hybrid training session");
    CommonOpts tr_opts;
    std::string tr_target = "1122";
    std::size_t tr_max_steps = 10000;
    std::size_t tr_cycle = 0;
    bool tr_strict = false;
    bool tr_exact = false;
    bool tr_est_fid = false;
    std::string tr_out = "trace.jsonl";
    add_common(train, tr_opts);
    train->add_option("--target", tr_target, "target pattern code")->capture_default_str();
    train->add_option("--max-steps", tr_max_steps, "step budget")->capture_default_str();
    train->add_option("--cycle-length", tr_cycle,
                      "clean steps required for convergence (0 = min(m^n, 64))");
    train->add_flag("--strict", tr_strict, "exit 3 if the session does not converge");
    train->add_flag("--exact", tr_exact, "exact measurement instead of shot sampling");
    train->add_flag("--estimate-fidelity", tr_est_fid, "shot-estimate the fidelity trace");
    train->add_option("--out", tr_out, "JSONL output path")->capture_default_str();

    // batch
    auto* batch = app.add_subcommand("batch", "independent training sessions, aggregated");
    CommonOpts ba_opts;
    std::string ba_target = "1122";
    std::size_t ba_sessions = 200;
    std::size_t ba_max_steps = 10000;
    std::string ba_out = "batch.json";
    add_common(batch, ba_opts);
    batch->add_option("--target", ba_target, "target pattern code")->capture_default_str();
    batch->add_option("--sessions", ba_sessions, "session count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    batch->add_option("--max-steps", ba_max_steps, "step budget per session")
        ->capture_default_str();
    batch->add_option("--out", ba_out, "JSON summary output path")->capture_default_str();

    // qasm
    auto* qasm = app.add_subcommand("qasm", "emit the OPENQASM 2.0 circuit");
    CommonOpts qa_opts;
    std::string qa_input, qa_weight;
    std::string qa_out = "circuit.qasm";
    add_common(qasm, qa_opts);
    qasm->add_option("--input", qa_input, "input pattern code")->required();
    qasm->add_option("--weight", qa_weight, "weight pattern code")->required();
    qasm->add_option("--out", qa_out, "QASM output path")->capture_default_str();

    // match
    auto* match = app.add_subcommand("match", "match probability for one input/weight pair");
    CommonOpts ma_opts;
    std::string ma_input, ma_weight;
    bool ma_estimate = false;
    bool ma_oracle = false;
    add_common(match, ma_opts);
    match->add_option("--input", ma_input, "input pattern code")->required();
    match->add_option("--weight", ma_weight, "weight pattern code")->required();
    match->add_flag("--estimate", ma_estimate, "also print a shot estimate");
    match->add_flag("--oracle", ma_oracle, "cross-check against the dense statevector oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*heatmap) {
            // shot mode only when --shots is given and --exact is not
            std::optional<qp::ShotSpec> spec;
            if (!hm_exact && heatmap->count("--shots") > 0)
                spec = qp::ShotSpec{hm_opts.shots, hm_opts.seed};
            const qp::HeatmapGrid grid = qp::compute_heatmap(hm_qubits, hm_opts.m, spec);
            qp::write_file_atomic(hm_out, qp::heatmap_csv(grid));
            if (!hm_ppm.empty()) qp::write_file_atomic(hm_ppm, qp::heatmap_ppm(grid));
            std::cout << "wrote " << grid.dim << "x" << grid.dim << " grid to " << hm_out << "\n";
        } else if (*train) {
            qp::TrainingConfig cfg;
            cfg.target = qp::parse_code(tr_target, tr_opts.m);
            cfg.shots = tr_opts.shots;
            cfg.seed = tr_opts.seed;
            cfg.max_steps = tr_max_steps;
            cfg.cycle_length = tr_cycle;
            cfg.exact_measure = tr_exact;
            cfg.estimate_fidelity = tr_est_fid;
            const qp::TrainingTrace trace = qp::run_session(cfg);
            qp::write_file_atomic(tr_out, trace_jsonl(trace));
            std::cout << (trace.converged ? "converged" : "did not converge") << " after "
                      << trace.total_steps << " steps\n";
            if (tr_strict && !trace.converged) return kExitNoConvergence;
        } else if (*batch) {
            qp::TrainingConfig cfg;
            cfg.target = qp::parse_code(ba_target, ba_opts.m);
            cfg.shots = ba_opts.shots;
            cfg.seed = ba_opts.seed;
            cfg.max_steps = ba_max_steps;
            const qp::BatchSummary summary = qp::run_batch(cfg, ba_sessions);
            qp::write_file_atomic(ba_out, batch_json(summary));
            std::cout << "sessions=" << summary.sessions
                      << " convergence_rate=" << summary.convergence_rate
                      << " mean_steps=" << summary.mean_steps << "\n";
        } else if (*qasm) {
            const qp::PerceptronCircuit circuit(qp::parse_code(qa_input, qa_opts.m),
                                                qp::parse_code(qa_weight, qa_opts.m));
            qp::write_file_atomic(qa_out, qp::emit_qasm(circuit));
            std::cout << "single-qubit gates: " << 3 * circuit.n << "\n";
            std::cout << "multi-qubit gates: 1\n";
        } else if (*match) {
            const qp::PerceptronCircuit circuit(qp::parse_code(ma_input, ma_opts.m),
                                                qp::parse_code(ma_weight, ma_opts.m));
            const double exact = qp::exact_match_probability(circuit);
            std::cout << "exact: " << exact << "\n";
            if (ma_estimate) {
                const qp::MatchEstimate est =
                    qp::estimate_match(circuit, ma_opts.shots, ma_opts.seed);
                std::cout << "estimated: " << *est.estimated << " (" << *est.shots << " shots)\n";
            }
            if (ma_oracle) {
                const double oracle = qp::dense_run(circuit.input, circuit.weight);
                std::cout << "oracle: " << oracle << "\n";
                if (std::abs(oracle - exact) > 1e-10) {
                    std::cerr << "oracle mismatch exceeds 1e-10\n";
                    return kExitUsage;
                }
            }
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
