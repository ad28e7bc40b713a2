// Command-line frontend: every library operation as a subcommand with
// machine-readable JSON/CSV output. Exit codes: 0 success, 1 usage error,
// 2 convergence failure, 3 budget exceeded.

#include "ergopt/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace ergopt;

namespace {

struct RunConfig {
    size_t grid_size = 4096;
    int branch_cutoff = 64;
    double tail_tol = 1e-6;
    int window = 16;
    int max_iters = 2000;
    double tol = 1e-3;
    int m_max = 8;
    int max_period = 5;
    int max_digit = 8;
    int max_len = 5;
    uint64_t seed = 1;
    std::string output_path;
};

int thread_cap() {
    // Modules run sequentially; the cap is recorded for reproducibility.
    const char* env = std::getenv("ERGOPT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

Potential parse_potential(const std::string& spec) {
    if (spec == "example76") return Potential::example76();
    if (spec == "neg_x") return Potential::neg_x();
    if (spec == "zero") return Potential::constant(Rational());
    if (spec.rfind("const:", 0) == 0)
        return Potential::constant(Rational::parse(spec.substr(6)));
    if (spec.rfind("dist:", 0) == 0) {
        // dist:<word>:<t> -> -t * d(., periodic orbit of word)^alpha
        auto second = spec.find(':', 5);
        if (second == std::string::npos)
            throw CLI::ValidationError("potential", "dist:<word>:<t> expected");
        Word w = parse_word(spec.substr(5, second - 5));
        Rational t = Rational::parse(spec.substr(second + 1));
        PeriodicOrbitMeasure orbit = periodic_measure(w);
        std::vector<double> sites;
        for (const auto& p : orbit.points) sites.push_back(p.to_double());
        return Potential::distance_power_approx(sites, -t, 1.0, spec);
    }
    // JSON piecewise-affine description, inline or @file:
    // {"knots": [["0","-1"], ["1/3","-2"], ...], "alpha": 1.0}
    Json j;
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw CLI::ValidationError("potential", "cannot open " + spec.substr(1));
        in >> j;
    } else {
        j = Json::parse(spec);
    }
    std::vector<std::pair<Rational, Rational>> knots;
    for (const auto& k : j.at("knots"))
        knots.emplace_back(Rational::parse(k.at(0).get<std::string>()),
                           Rational::parse(k.at(1).get<std::string>()));
    double alpha = j.value("alpha", 1.0);
    return Potential::from_knots(std::move(knots), alpha, "piecewise");
}

void emit(const RunConfig& cfg, const Json& payload) {
    if (!cfg.output_path.empty()) write_json(cfg.output_path, payload);
    std::cout << payload.dump(2) << "\n";
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--output", cfg.output_path, "write the JSON payload to this path");
    cmd->add_option("--seed", cfg.seed, "PRNG seed for randomized runs");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergodic optimization toolkit for the continued-fraction map"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string arg_rational, arg_word, arg_potential = "example76", arg_measure;
    double arg_t = 0.5, arg_s = 0.0, arg_w0 = 0.5, arg_alpha = 1.0, arg_q = 0.0;
    bool has_s = false, has_q = false;
    int arg_trials = 20, arg_steps = 100, arg_depth = 4, arg_n_iters = 200;
    double arg_tol = 1e-2;

    // ---- cf ----------------------------------------------------------
    CLI::App* cf = app.add_subcommand("cf", "continued-fraction arithmetic");
    cf->require_subcommand(1);
    CLI::App* cf_expand_cmd = cf->add_subcommand("expand", "both finite expansions");
    cf_expand_cmd->add_option("rational", arg_rational)->required();
    CLI::App* cf_eval = cf->add_subcommand("eval", "evaluate a word");
    cf_eval->add_option("word", arg_word)->required();
    CLI::App* cf_cont = cf->add_subcommand("continuants", "continuant table");
    cf_cont->add_option("word", arg_word)->required();
    CLI::App* cf_cyl = cf->add_subcommand("cylinder", "cylinder interval");
    cf_cyl->add_option("word", arg_word)->required();
    CLI::App* cf_per = cf->add_subcommand("periodic", "periodic point of a word");
    cf_per->add_option("word", arg_word)->required();

    // ---- measure -----------------------------------------------------
    CLI::App* ms = app.add_subcommand("measure", "FCF measures and membership");
    ms->require_subcommand(1);
    CLI::App* ms_member = ms->add_subcommand("member", "closure membership certificate");
    ms_member->add_option("atoms", arg_measure, "JSON atom list")->required();
    ms_member->add_option("--output", cfg.output_path);
    CLI::App* ms_mx = ms->add_subcommand("mx", "candidate family M_x");
    ms_mx->add_option("rational", arg_rational)->required();
    CLI::App* ms_fcf = ms->add_subcommand("fcf", "FCF measure of a word");
    ms_fcf->add_option("word", arg_word)->required();

    // ---- bousch ------------------------------------------------------
    CLI::App* bo = app.add_subcommand("bousch", "calibrated sub-action solver");
    bo->add_option("--potential", arg_potential);
    bo->add_option("--grid", cfg.grid_size)->check(CLI::PositiveNumber);
    bo->add_option("--window", cfg.window)->check(CLI::PositiveNumber);
    bo->add_option("--max-iters", cfg.max_iters)->check(CLI::PositiveNumber);
    bo->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);
    bo->add_option("--branch-cutoff", cfg.branch_cutoff)->check(CLI::PositiveNumber);
    bo->add_option("--tail-tol", cfg.tail_tol)->check(CLI::PositiveNumber);
    bo->add_option("--drift-iters", arg_n_iters)->check(CLI::PositiveNumber);
    bo->add_option("--q", arg_q)->each([&](const std::string&) { has_q = true; });
    bo->add_option("--u-csv", arg_measure, "write the sub-action grid as CSV here");
    std::string arg_phitilde_csv;
    bo->add_option("--phitilde-csv", arg_phitilde_csv, "write the revealed potential as CSV here");
    add_common(bo, cfg);

    // ---- ergsup ------------------------------------------------------
    CLI::App* es = app.add_subcommand("ergsup", "global ergodic supremum estimate");
    es->add_option("--potential", arg_potential);
    es->add_option("--m-max", cfg.m_max);
    es->add_option("--max-period", cfg.max_period);
    es->add_option("--max-digit", cfg.max_digit);
    es->add_option("--max-len", cfg.max_len);
    es->add_option("--cycle-depth", arg_depth,
                   "also compute Q_m upper bounds from the depth-k cycle graph");
    bool with_upper = false;
    es->add_flag("--upper-bounds", with_upper, "fill Q_m_upper via the cycle graph");
    es->add_option("--sweep-csv", arg_measure, "write the m-sweep table as CSV here");
    add_common(es, cfg);

    // ---- classify ----------------------------------------------------
    CLI::App* cl = app.add_subcommand("classify", "potential classification");
    cl->add_option("--potential", arg_potential);
    cl->add_option("--m-max", cfg.m_max);
    cl->add_option("--max-period", cfg.max_period);
    cl->add_option("--max-digit", cfg.max_digit);
    cl->add_option("--max-len", cfg.max_len);
    cl->add_option("--cycle-depth", arg_depth);
    add_common(cl, cfg);

    // ---- lock --------------------------------------------------------
    CLI::App* lk = app.add_subcommand("lock", "perturbation locking experiment");
    lk->add_option("--potential", arg_potential);
    lk->add_option("--x", arg_rational)->required();
    lk->add_option("--t", arg_t);
    lk->add_option("--s", arg_s)->each([&](const std::string&) { has_s = true; });
    lk->add_option("--trials", arg_trials);
    lk->add_option("--budget-digit", cfg.max_digit);
    lk->add_option("--budget-len", cfg.max_len);
    lk->add_option("--budget-m", cfg.m_max);
    lk->add_option("--budget-period", cfg.max_period);
    add_common(lk, cfg);

    // ---- transport ---------------------------------------------------
    CLI::App* tp = app.add_subcommand("transport", "transport-sequence trace");
    tp->add_option("--w0", arg_w0)->required();
    tp->add_option("--steps", arg_steps);
    tp->add_option("--x", arg_rational)->required();
    tp->add_option("--alpha", arg_alpha);
    tp->add_option("--potential", arg_potential);
    add_common(tp, cfg);

    // ---- example76 ---------------------------------------------------
    CLI::App* ex = app.add_subcommand("example76", "worked example reproduction");
    ex->add_option("--m-max", cfg.m_max);
    ex->add_option("--max-period", cfg.max_period);
    ex->add_option("--tol", arg_tol);
    add_common(ex, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cf_expand_cmd->parsed()) {
            Rational x = Rational::parse(arg_rational);
            Expansions e = cf_expand(x);
            Json j{{"schema", "v1"},
                   {"x", x.str()},
                   {"canonical", e.canonical},
                   {"alternative", e.alternative}};
            emit(cfg, j);
        } else if (cf_eval->parsed() || cf_cont->parsed()) {
            Word w = parse_word(arg_word);
            Continuants c = continuants(w);
            Json ps = Json::array(), qs = Json::array();
            for (long k = -1; k <= c.order(); ++k) {
                ps.push_back(c.p(k).str());
                qs.push_back(c.q(k).str());
            }
            emit(cfg, Json{{"schema", "v1"},
                           {"word", w},
                           {"value", eval_cf(w).str()},
                           {"p", ps},
                           {"q", qs}});
        } else if (cf_cyl->parsed()) {
            CylinderInterval c = cylinder(parse_word(arg_word));
            emit(cfg, Json{{"schema", "v1"},
                           {"word", c.word},
                           {"lo", c.lo.str()},
                           {"hi", c.hi.str()},
                           {"diameter", c.diameter().str()}});
        } else if (cf_per->parsed()) {
            QuadraticSurd s = periodic_point(parse_word(arg_word));
            emit(cfg, Json{{"schema", "v1"},
                           {"word", parse_word(arg_word)},
                           {"value", s.to_double()},
                           {"quadratic", {{"A", s.A().str()}, {"B", s.B().str()}, {"C", s.C().str()}}},
                           {"surd", s.str()}});
        } else if (ms_member->parsed()) {
            DiscreteMeasure mu = measure_from_json(Json::parse(arg_measure));
            MembershipCertificate cert = closure_membership(mu);
            Json j = certificate_to_json(cert);
            if (cert.member) {
                // The recombination check is part of the output contract.
                j["recombines_exactly"] = cert.recombine() == mu;
            }
            emit(cfg, j);
        } else if (ms_mx->parsed()) {
            emit(cfg, candidate_set_to_json(candidate_set_M_x(Rational::parse(arg_rational))));
        } else if (ms_fcf->parsed()) {
            FcfMeasure m = fcf_measure(parse_word(arg_word));
            Json j = measure_to_json(m.measure);
            j["word"] = m.word;
            emit(cfg, j);
        } else if (bo->parsed()) {
            Potential phi = parse_potential(arg_potential);
            BouschOptions opts{cfg.branch_cutoff, cfg.tail_tol, 1 << 20};
            DriftResult drift = drift_q_estimate(phi, arg_n_iters, cfg.grid_size, opts);
            double q = has_q ? arg_q : drift.mid();
            BouschResult res = calibrated_subaction(phi, q, cfg.grid_size, cfg.window,
                                                    cfg.max_iters, cfg.tol, opts);
            RevealedResult rev = revealed_potential(phi, q, res.u);
            Json j = bousch_result_to_json(res);
            j["drift"] = drift_to_json(drift);
            j["revealed_max"] = rev.max_value;
            j["zero_locus_nodes"] = rev.zero_nodes.size();
            j["threads"] = thread_cap();
            if (!arg_measure.empty()) res.u.write_csv(arg_measure);
            if (!arg_phitilde_csv.empty()) rev.phitilde.write_csv(arg_phitilde_csv);
            emit(cfg, j);
            std::cout << "bousch: q=" << j["q_estimate"] << " residual=" << j["residual"]
                      << " revealed_max=" << j["revealed_max"] << "\n";
        } else if (es->parsed()) {
            Potential phi = parse_potential(arg_potential);
            GlobalSupEstimate g = global_sup_estimate(phi, cfg.m_max, cfg.max_period,
                                                      cfg.max_digit, cfg.max_len);
            std::vector<double> uppers;
            if (with_upper) {
                for (auto& r : g.m_trajectory) {
                    r.upper_bound = restricted_sup_cycle_bound(phi, r.m, arg_depth);
                    uppers.push_back(*r.upper_bound);
                }
            }
            if (!arg_measure.empty()) write_m_sweep_csv(arg_measure, g.m_trajectory, uppers);
            Json j = global_sup_to_json(g);
            j["threads"] = thread_cap();
            emit(cfg, j);
            std::cout << "ergsup: q_star=" << j["q_star"] << " side=" << j["side"] << "\n";
        } else if (cl->parsed()) {
            Potential phi = parse_potential(arg_potential);
            ClassifyBudgets b;
            b.m_max = cfg.m_max;
            b.max_period = cfg.max_period;
            b.max_digit = cfg.max_digit;
            b.max_len = cfg.max_len;
            b.cycle_depth = arg_depth;
            Classification c = classify(phi, b);
            Json j = classification_to_json(c);
            emit(cfg, j);
            std::cout << "classify: " << j["verdict"] << "\n";
        } else if (lk->parsed()) {
            Potential phi = parse_potential(arg_potential);
            LockBudgets b;
            b.max_digit = cfg.max_digit;
            b.max_len = cfg.max_len;
            b.m = cfg.m_max;
            b.max_period = cfg.max_period;
            LockReport rep = locking_experiment(phi, Rational::parse(arg_rational), arg_t,
                                                arg_trials, cfg.seed, b,
                                                has_s ? std::optional<double>(arg_s)
                                                      : std::nullopt);
            Json j = lock_report_to_json(rep);
            j["threads"] = thread_cap();
            emit(cfg, j);
            std::cout << "lock: unchanged=" << j["unchanged_count"] << "/" << rep.trials.size()
                      << " winner=" << rep.base_winner.str() << "\n";
        } else if (tp->parsed()) {
            Potential phi = parse_potential(arg_potential);
            TransportTrace tr = transport_sequence(arg_w0, arg_steps,
                                                   Rational::parse(arg_rational), arg_alpha,
                                                   &phi);
            Json j = transport_trace_to_json(tr);
            emit(cfg, j);
            std::cout << "transport: control_ok=" << j["all_control_ok"]
                      << " blocks_avg=" << j["block_average"] << "\n";
        } else if (ex->parsed()) {
            Example76Report rep = example_7_6(cfg.m_max, cfg.max_period, 1e-6);
            Json j = example76_to_json(rep);
            bool pass = rep.all_ok && std::abs(rep.q_star) <= arg_tol;
            j["pass"] = pass;
            emit(cfg, j);
            std::cout << "example76: " << (pass ? "ok" : "FAILED") << " q_star=" << j["q_star"]
                      << "\n";
            if (!pass) return 2;
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << " residual=" << e.last_residual
                  << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " depth=" << e.partial_depth << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
