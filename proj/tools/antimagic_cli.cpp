// Command-line surface: label, verify, core, stars, brute, gen, constants.
// Exit codes: 0 success/verified, 1 verification failure, 2 input error,
// 3 pipeline/construction failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "antimagic/errors.hpp"
#include "antimagic/io.hpp"
#include "antimagic/labelling.hpp"
#include "antimagic/partition.hpp"
#include "antimagic/pipeline.hpp"
#include "antimagic/rng.hpp"
#include "antimagic/verify.hpp"

using json = nlohmann::ordered_json;
using namespace antimagic;

namespace {

int log_level() {
    const char* env = std::getenv("ANTIMAGIC_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[antimagic] " << msg << "\n";
}

Graph load_input(const std::string& input, const std::string& spec, uint64_t seed) {
    if (!spec.empty()) return generate(spec, seed);
    if (input.empty()) fail_input("no --input file or --spec generator given");
    return load_edge_list(input);
}

json labelling_json(const Graph& g, const PartialLabelling& lab, const PipelineConfig& cfg,
                    bool verified) {
    json out;
    out["n"] = g.n;
    out["m"] = g.m();
    json labels = json::array();
    for (int id = 0; id < g.m(); ++id)
        labels.push_back({g.edges[id].u, g.edges[id].v, lab.label(id)});
    out["labels"] = std::move(labels);
    json sums = json::array();
    for (int v = 0; v < g.n; ++v) sums.push_back(lab.sum(v));
    out["sums"] = std::move(sums);
    out["config"] = {{"k1", cfg.k1}, {"k2", cfg.k2}, {"seed", cfg.seed},
                     {"min_degree_mode", false}};
    out["verified"] = verified;
    return out;
}

json report_json(const VerificationReport& rep) {
    json out;
    out["labels_injective"] = rep.labels_injective;
    out["label_range_ok"] = rep.label_range_ok;
    out["duplicate_sums"] = rep.duplicate_sums;
    out["mod_violations"] = rep.mod_violations;
    out["ok"] = rep.ok();
    return out;
}

json vertexset_json(const VertexSet& s) {
    json arr = json::array();
    for (int v : s.members()) arr.push_back(v);
    return arr;
}

json plan_json(const StarForestPlan& plan) {
    json out;
    json stars = json::array();
    for (const Star& s : plan.stars)
        stars.push_back({{"centre", s.centre}, {"leaves", s.leaves}, {"edges", s.edge_ids}});
    out["stars"] = std::move(stars);
    out["star_edges"] = plan.star_edges;
    out["v0"] = vertexset_json(plan.v0);
    out["v1"] = vertexset_json(plan.v1);
    out["v2"] = vertexset_json(plan.v2);
    out["achieved_z"] = plan.achieved_z;
    return out;
}

void emit(const std::string& output, const std::string& text) {
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case Error::Kind::input:
            return 2;
        case Error::Kind::precondition:
        case Error::Kind::construction:
        case Error::Kind::internal:
            return 3;
    }
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"antimagic labelling engine"};
    app.require_subcommand(1);

    std::string input, output, spec, labelling_path;
    PipelineConfig cfg;
    uint64_t seed = 0;
    bool min_degree_mode = false, do_verify = true;
    int core_r = 2;
    int64_t star_r = 0;
    int star_delta = 5;
    uint64_t budget = 100'000'000ULL;
    int64_t modulus = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", input, "edge-list file");
        sub->add_option("--spec", spec, "generator spec, e.g. min_degree(4000,1700)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--output", output, "output path (default stdout)");
    };

    CLI::App* label = app.add_subcommand("label", "produce an antimagic labelling");
    add_common(label);
    label->add_option("--k1", cfg.k1, "first modulus (odd, >= 9)");
    label->add_option("--k2", cfg.k2, "second modulus (odd, coprime to k1)");
    label->add_flag("--min-degree-mode", min_degree_mode,
                    "run label_min_degree directly (g = 0, L = [1,|E|])");
    label->add_flag("--unsafe-skip-delta-check", cfg.skip_delta_check,
                    "attempt the pipeline below the proven threshold");
    label->add_flag("--verify,!--no-verify", do_verify, "verify before writing (default on)");

    CLI::App* verify = app.add_subcommand("verify", "check a labelling JSON against a graph");
    add_common(verify);
    verify->add_option("--labelling", labelling_path, "labelling JSON")->required();
    verify->add_option("--modulus", modulus, "also flag sums divisible by this");

    CLI::App* core = app.add_subcommand("core", "print the r-core split");
    add_common(core);
    core->add_option("--r", core_r, "core degree threshold")->required();

    CLI::App* stars = app.add_subcommand("stars", "print a star forest plan");
    add_common(stars);
    stars->add_option("--delta", star_delta, "minimum degree parameter")->required();
    stars->add_option("--r", star_r, "edge floor r")->required();

    CLI::App* brute = app.add_subcommand("brute", "exhaustive antimagic search");
    add_common(brute);
    brute->add_option("--budget", budget, "search node budget");

    CLI::App* gen = app.add_subcommand("gen", "write a generated edge list");
    add_common(gen);

    CLI::App* consts = app.add_subcommand("constants", "print (c, delta, d0) for (k1,k2)");
    consts->add_option("--k1", cfg.k1, "first modulus");
    consts->add_option("--k2", cfg.k2, "second modulus");

    CLI11_PARSE(app, argc, argv);

    try {
        if (label->parsed()) {
            cfg.seed = seed;
            Graph g = load_input(input, spec, seed);
            log_info("labelling graph with n=" + std::to_string(g.n) +
                     " m=" + std::to_string(g.m()));
            PartialLabelling lab =
                min_degree_mode
                    ? [&] {
                          std::vector<int64_t> labels(g.m());
                          std::iota(labels.begin(), labels.end(), 1);
                          std::vector<int64_t> zero(g.n, 0);
                          return label_min_degree(g, labels, zero, cfg);
                      }()
                    : label_graph(g, cfg);
            bool verified = false;
            if (do_verify) {
                VerificationReport rep =
                    min_degree_mode
                        ? verify_g_antimagic(g, lab.raw_labels(), std::vector<int64_t>(g.n, 0),
                                             cfg.k1 * cfg.k2)
                        : verify_antimagic(g, lab.raw_labels());
                if (!(rep.labels_injective && rep.duplicate_sums.empty() &&
                      rep.mod_violations.empty()))
                    fail_internal("post-hoc verification failed; refusing to emit");
                verified = true;
            }
            json out = labelling_json(g, lab, cfg, verified);
            out["config"]["min_degree_mode"] = min_degree_mode;
            emit(output, out.dump(2) + "\n");
            return 0;
        }
        if (verify->parsed()) {
            Graph g = load_input(input, spec, seed);
            json doc = json::parse(read_file(labelling_path));
            if (doc["m"].get<int>() != g.m() || doc["n"].get<int>() != g.n)
                fail_input("labelling JSON does not match the graph dimensions");
            std::vector<int64_t> labels(g.m(), 0);
            std::vector<uint8_t> seen(g.m(), 0);
            for (const auto& entry : doc["labels"]) {
                int u = entry[0].get<int>(), v = entry[1].get<int>();
                int64_t l = entry[2].get<int64_t>();
                int found = -1;
                for (auto [w, id] : g.adj[u])
                    if (w == v && !seen[id]) {
                        found = id;
                        break;
                    }
                if (found == -1) fail_input("labelling JSON names a non-edge or duplicate");
                seen[found] = 1;
                labels[found] = l;
            }
            for (int id = 0; id < g.m(); ++id)
                if (!seen[id]) fail_input("labelling JSON leaves an edge unlabelled");
            VerificationReport rep =
                modulus > 0 ? verify_g_antimagic(g, labels, std::vector<int64_t>(g.n, 0), modulus)
                            : verify_antimagic(g, labels);
            emit(output, report_json(rep).dump(2) + "\n");
            return rep.ok() ? 0 : 1;
        }
        if (core->parsed()) {
            Graph g = load_input(input, spec, seed);
            CoreSplit split = r_core(g, core_r);
            json out;
            out["r"] = split.r;
            out["core"] = vertexset_json(split.core);
            out["shell"] = vertexset_json(split.shell);
            emit(output, out.dump(2) + "\n");
            return 0;
        }
        if (stars->parsed()) {
            Graph g = load_input(input, spec, seed);
            StarForestPlan plan = build_star_forest(g, star_delta, star_r, Rng(seed));
            emit(output, plan_json(plan).dump(2) + "\n");
            return 0;
        }
        if (brute->parsed()) {
            Graph g = load_input(input, spec, seed);
            BruteOutcome outcome = brute_force_antimagic(g, budget);
            json out;
            out["nodes"] = outcome.nodes;
            if (outcome.result == BruteResult::found) {
                out["result"] = "found";
                json labels = json::array();
                for (int id = 0; id < g.m(); ++id)
                    labels.push_back({g.edges[id].u, g.edges[id].v, outcome.labels[id]});
                out["labels"] = std::move(labels);
                emit(output, out.dump(2) + "\n");
                return 0;
            }
            if (outcome.result == BruteResult::none_exists) {
                out["result"] = "none";
                emit(output, out.dump(2) + "\n");
                std::cerr << "no antimagic labelling exists\n";
                return 1;
            }
            out["result"] = "budget_exceeded";
            emit(output, out.dump(2) + "\n");
            return 3;
        }
        if (gen->parsed()) {
            if (spec.empty()) fail_input("gen requires --spec");
            Graph g = generate(spec, seed);
            emit(output, format_edge_list(g));
            return 0;
        }
        if (consts->parsed()) {
            Constants c = constants(cfg.k1, cfg.k2);
            std::cout << "c=" << c.c << " delta=" << c.delta << " d0=" << c.d0 << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
