#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ineq/io.hpp"
#include "ineq/search.hpp"
#include "ineq/serve.hpp"

namespace {

using namespace ineq;

json fail_diag(const std::string& code, const std::string& message) {
    return json{{"error", {{"code", code}, {"message", message}}}};
}

AxiomSet parse_axiom_set(const std::string& s) {
    if (s == "field") return AxiomSet::Field;
    if (s == "ordered-field") return AxiomSet::OrderedField;
    throw CLI::ValidationError("--axioms must be field or ordered-field");
}

int cmd_generate(const std::string& axioms, int k, int l, int degree, int num,
                 std::uint64_t seed, const std::string& out_path) {
    GeneratorConfig cfg;
    cfg.axiom_set = parse_axiom_set(axioms);
    cfg.k = k;
    cfg.l = l;
    cfg.degree = degree;
    std::vector<Theorem> theorems;
    theorems.reserve(num);
    for (int i = 0; i < num; ++i) {
        std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(i));
        Rng rng(s);
        Theorem t = generate_with_config(cfg, rng);
        t.meta.seed = s;
        theorems.push_back(std::move(t));
    }
    std::size_t n = emit_dataset(theorems, out_path);
    std::cout << json{{"written", n}, {"out", out_path}}.dump() << "\n";
    return 0;
}

int cmd_split(const std::string& dimension, const std::string& axioms, int k, int l, int degree,
              std::uint64_t seed, int train_size, int test_size, int n_orders,
              int n_combinations, int test_k, int test_l, int test_degree,
              const std::string& out_train, const std::string& out_test) {
    SplitSpec sp;
    auto dim = split_dim_from_name(dimension);
    if (!dim) throw CLI::ValidationError("--dimension must be one of iid, degree, orders, "
                                         "combinations, k_shift, l_shift");
    sp.dim = *dim;
    sp.base.axiom_set = parse_axiom_set(axioms);
    sp.base.k = k;
    sp.base.l = l;
    sp.base.degree = degree;
    sp.train_size = train_size;
    sp.test_size = test_size;
    sp.n_orders = n_orders;
    sp.n_combinations = n_combinations;
    sp.test_k = test_k;
    sp.test_l = test_l;
    sp.test_degree = test_degree;
    Rng rng(seed);
    Split split = generate_split(sp, rng);
    emit_dataset(split.train, out_train);
    emit_dataset(split.test, out_test);
    std::cout << json{{"train_written", split.train.size()},
                      {"test_written", split.test.size()},
                      {"dimension", dimension}}
                     .dump()
              << "\n";
    return 0;
}

int cmd_verify(const std::string& in_path) {
    std::vector<Theorem> ds = load_dataset(in_path);
    std::size_t ok = 0;
    json failed = json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        VerifyResult r = verify_trace(ds[i], ds[i].proof);
        if (r.ok) {
            ++ok;
        } else {
            failed.push_back({{"index", i}, {"step", r.failed_step}, {"reason", r.reason}});
        }
    }
    std::cout << json{{"total", ds.size()}, {"ok", ok}, {"failed", failed}}.dump() << "\n";
    return ok == ds.size() ? 0 : 1;
}

int cmd_prove(const std::string& in_path, const std::string& method, int sims, double cpuct,
              double tau, const std::string& policy_name, std::uint64_t seed,
              const std::string& axioms) {
    std::vector<Theorem> ds = load_dataset(in_path);
    MctsConfig cfg;
    cfg.n_simulations = sims;
    cfg.c_puct = cpuct;
    cfg.tau = tau;
    cfg.axiom_set = parse_axiom_set(axioms);
    HeuristicValue value;
    std::size_t solved = 0;
    double total_len = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::unique_ptr<Policy> policy;
        if (policy_name == "uniform") policy = std::make_unique<UniformPolicy>(cfg.axiom_set);
        else if (policy_name == "oracle")
            policy = std::make_unique<OraclePolicy>(ds[i].proof, cfg.axiom_set);
        else throw CLI::ValidationError("--policy must be uniform or oracle");
        Rng rng(Rng::derive(seed, i));
        std::optional<std::vector<ProofStep>> proof;
        if (method == "mcts") proof = prove(ds[i], *policy, value, cfg, rng);
        else if (method == "greedy") proof = prove_greedy(ds[i], *policy, cfg, rng);
        else throw CLI::ValidationError("--method must be greedy or mcts");
        if (proof) {
            ++solved;
            total_len += static_cast<double>(proof->size());
        }
    }
    json report{{"total", ds.size()},
                {"solved", solved},
                {"success_rate", ds.empty() ? 0.0 : double(solved) / double(ds.size())},
                {"mean_proof_length", solved ? total_len / double(solved) : 0.0},
                {"method", method}};
    std::cout << report.dump() << "\n";
    return 0;
}

int cmd_stats(const std::string& in_path) {
    std::vector<Theorem> ds = load_dataset(in_path);
    StatsReport r = compute_stats(ds);
    std::cout << stats_to_json(r).dump() << "\n";
    return 0;
}

int cmd_bench(int steps, std::uint64_t seed) {
    std::vector<std::pair<ProofState, ProofStep>> corpus;
    corpus.reserve(steps);
    GeneratorConfig cfg;
    for (std::uint64_t i = 0; static_cast<int>(corpus.size()) < steps; ++i) {
        Rng rng(Rng::derive(seed, i));
        cfg.k = 2 + static_cast<int>(i % 4);
        cfg.l = 3 + static_cast<int>(i % 5);
        if (cfg.k > cfg.l) cfg.k = cfg.l;
        Theorem t = generate_with_config(cfg, rng);
        ProofState s = init_state(t);
        for (const auto& step : t.proof) {
            if (static_cast<int>(corpus.size()) >= steps) break;
            corpus.emplace_back(s, step);
            s = apply_step(s, step).state;
        }
    }
    double ms = bench_step_latency_ms(corpus);
    std::cout << json{{"steps", corpus.size()},
                      {"mean_ms", ms},
                      {"reference_ms", 1.28},
                      {"within_reference", ms <= 1.28}}
                     .dump()
              << "\n";
    return 0;
}

int cmd_serve(const std::string& transport, int port) {
    if (transport == "stdio") {
        Server server;
        server.run_stream(std::cin, std::cout);
        return 0;
    }
    if (transport == "tcp") {
        TcpServer server;
        int bound = server.start(port);
        std::cout << json{{"listening", bound}}.dump() << "\n";
        std::cout.flush();
        server.wait();
        return 0;
    }
    throw CLI::ValidationError("--transport must be stdio or tcp");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inequality theorem benchmark toolkit"};
    app.require_subcommand(1);

    std::string axioms = "ordered-field", out_path = "dataset.jsonl", in_path;
    std::string dimension = "iid", out_train = "train.jsonl", out_test = "test.jsonl";
    std::string method = "mcts", policy = "uniform", transport = "stdio";
    int k = 3, l = 5, degree = 0, num = 100, train_size = 100, test_size = 100;
    int n_orders = 25, n_combinations = 25, test_k = 0, test_l = 0, test_degree = 2;
    int sims = 200, steps = 10000, port = 9121;
    double cpuct = 1.0, tau = 1.0;
    std::uint64_t seed = 0;

    auto* g = app.add_subcommand("generate", "generate a theorem dataset");
    g->add_option("--axioms", axioms);
    g->add_option("--k", k);
    g->add_option("--l", l);
    g->add_option("--degree", degree);
    g->add_option("--num", num);
    g->add_option("--seed", seed);
    g->add_option("--out", out_path);

    auto* sp = app.add_subcommand("split", "generate a train/test split");
    sp->add_option("--dimension", dimension);
    sp->add_option("--axioms", axioms);
    sp->add_option("--k", k);
    sp->add_option("--l", l);
    sp->add_option("--degree", degree);
    sp->add_option("--seed", seed);
    sp->add_option("--train-size", train_size);
    sp->add_option("--test-size", test_size);
    sp->add_option("--orders", n_orders);
    sp->add_option("--combinations", n_combinations);
    sp->add_option("--test-k", test_k);
    sp->add_option("--test-l", test_l);
    sp->add_option("--test-degree", test_degree);
    sp->add_option("--out-train", out_train);
    sp->add_option("--out-test", out_test);

    auto* v = app.add_subcommand("verify", "replay and check proofs in a dataset");
    v->add_option("--in", in_path)->required();

    auto* p = app.add_subcommand("prove", "prove dataset theorems with search");
    p->add_option("--in", in_path)->required();
    p->add_option("--method", method);
    p->add_option("--sims", sims);
    p->add_option("--cpuct", cpuct);
    p->add_option("--tau", tau);
    p->add_option("--policy", policy);
    p->add_option("--seed", seed);
    p->add_option("--axioms", axioms);

    auto* st = app.add_subcommand("stats", "dataset statistics");
    st->add_option("--in", in_path)->required();

    auto* b = app.add_subcommand("bench", "step latency benchmark");
    b->add_option("--steps", steps);
    b->add_option("--seed", seed);

    auto* sv = app.add_subcommand("serve", "NDJSON environment server");
    sv->add_option("--transport", transport);
    sv->add_option("--port", port);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << fail_diag("USAGE", e.what()).dump() << "\n";
        return 2;
    }

    try {
        if (g->parsed()) {
            if (k > l || k < 1 || l < 1 || num < 0) {
                std::cout << fail_diag("USAGE", "require 1 <= K <= L and num >= 0").dump() << "\n";
                return 2;
            }
            return cmd_generate(axioms, k, l, degree, num, seed, out_path);
        }
        if (sp->parsed()) {
            if (k > l || k < 1 || l < 1) {
                std::cout << fail_diag("USAGE", "require 1 <= K <= L").dump() << "\n";
                return 2;
            }
            return cmd_split(dimension, axioms, k, l, degree, seed, train_size, test_size,
                             n_orders, n_combinations, test_k, test_l, test_degree, out_train,
                             out_test);
        }
        if (v->parsed()) return cmd_verify(in_path);
        if (p->parsed()) return cmd_prove(in_path, method, sims, cpuct, tau, policy, seed, axioms);
        if (st->parsed()) return cmd_stats(in_path);
        if (b->parsed()) return cmd_bench(steps, seed);
        if (sv->parsed()) return cmd_serve(transport, port);
    } catch (const CLI::ValidationError& e) {
        std::cout << fail_diag("USAGE", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << fail_diag("RUNTIME", e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}
