#include "ergopt/io.hpp"

#include <fstream>

namespace ergopt {

namespace {

Json word_to_json(const Word& w) {
    Json a = Json::array();
    for (int d : w) a.push_back(d);
    return a;
}

Json id_to_json(const CandidateId& id) {
    Json j;
    switch (id.kind) {
        case CandidateId::Kind::delta0: j["kind"] = "delta0"; break;
        case CandidateId::Kind::fcf: j["kind"] = "fcf"; break;
        case CandidateId::Kind::periodic: j["kind"] = "periodic"; break;
    }
    j["word"] = word_to_json(id.word);
    return j;
}

} // namespace

Json measure_to_json(const DiscreteMeasure& mu) {
    Json atoms = Json::array();
    for (const auto& [pt, wt] : mu.atoms())
        atoms.push_back({{"point", pt.str()}, {"weight", wt.str()}});
    return {{"schema", "v1"}, {"atoms", atoms}};
}

DiscreteMeasure measure_from_json(const Json& j) {
    const Json& atoms = j.contains("atoms") ? j.at("atoms") : j;
    std::vector<std::pair<Rational, Rational>> parsed;
    for (const auto& a : atoms)
        parsed.emplace_back(Rational::parse(a.at("point").get<std::string>()),
                            Rational::parse(a.at("weight").get<std::string>()));
    return DiscreteMeasure(std::move(parsed));
}

Json certificate_to_json(const MembershipCertificate& cert) {
    Json j{{"schema", "v1"}};
    j["verdict"] = cert.member ? "member" : "non_member";
    if (!cert.member) {
        switch (cert.violated) {
            case Violation::mass_at_1: j["violated"] = "mass_at_1"; break;
            case Violation::mass_R1: j["violated"] = "mass_R1"; break;
            case Violation::preimage: j["violated"] = "preimage"; break;
            case Violation::none: break;
        }
        if (cert.violating_point) j["point"] = cert.violating_point->str();
        return j;
    }
    Json decomp;
    decomp["delta0"] = cert.delta0_coeff.str();
    Json words = Json::array();
    for (const auto& [w, c] : cert.fcf_coeffs)
        words.push_back({{"word", word_to_json(w)}, {"coeff", c.str()}});
    decomp["fcf"] = words;
    j["decomposition"] = decomp;
    return j;
}

Json candidate_set_to_json(const CandidateSet& cs) {
    Json j{{"schema", "v1"}, {"x", cs.x.str()}};
    Json ms = Json::array();
    for (size_t i = 0; i < cs.measures.size(); ++i) {
        Json entry = measure_to_json(cs.measures[i]);
        entry["word"] = word_to_json(cs.words[i]);
        ms.push_back(std::move(entry));
    }
    j["measures"] = ms;
    Json orbit = Json::array();
    for (const auto& p : cs.extended_orbit) orbit.push_back(p.str());
    j["extended_orbit"] = orbit;
    return j;
}

Json bousch_result_to_json(const BouschResult& r) {
    return {{"schema", "v1"},
            {"q_estimate", r.q_estimate},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"sup_norm", r.sup_norm},
            {"sup_norm_bound_check", r.sup_norm_bound_check},
            {"seminorm_estimate", r.seminorm_estimate},
            {"seminorm_bound_check", r.seminorm_bound_check},
            {"tail_gap", r.tail_gap},
            {"window_delta", r.window_delta},
            {"monotonicity_violation", r.monotonicity_violation},
            {"u_at_zero", r.u_at_zero},
            {"grid", r.u.n_cells()}};
}

Json drift_to_json(const DriftResult& r) {
    return {{"schema", "v1"},
            {"q_low", r.q_low},
            {"q_high", r.q_high},
            {"error_bound", r.error_bound},
            {"iterations", r.iterations}};
}

Json orbit_result_to_json(const OrbitSearchResult& r) {
    Json j{{"schema", "v1"},
           {"m", r.m},
           {"max_period", r.max_period},
           {"best_value", r.best_value},
           {"exact", r.exact},
           {"best_word", word_to_json(r.best_word)}};
    if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
    return j;
}

Json sweep_entry_to_json(const SweepEntry& e) {
    Json j{{"id", id_to_json(e.id)}, {"value", e.value}, {"exact", e.exact}};
    if (e.exact_value) j["exact_value"] = e.exact_value->str();
    return j;
}

Json global_sup_to_json(const GlobalSupEstimate& g) {
    Json traj = Json::array();
    for (const auto& r : g.m_trajectory) {
        Json row{{"m", r.m}, {"q_m_lower", r.best_value}};
        if (r.upper_bound) row["q_m_upper"] = *r.upper_bound;
        traj.push_back(std::move(row));
    }
    const char* side = g.side == AttainingSide::fcf ? "fcf"
                       : g.side == AttainingSide::invariant ? "invariant"
                                                            : "tie";
    return {{"schema", "v1"},
            {"q_star", g.q_star},
            {"side", side},
            {"fcf_top", sweep_entry_to_json(g.fcf_top)},
            {"invariant_best", orbit_result_to_json(g.invariant_best)},
            {"m_trajectory", traj}};
}

Json classification_to_json(const Classification& c) {
    const char* v = c.verdict == Classification::Verdict::essentially_compact
                        ? "essentially_compact"
                    : c.verdict == Classification::Verdict::rationally_maximized
                        ? "rationally_maximized"
                        : "undetermined";
    Json att = Json::array();
    for (const auto& id : c.attaining) att.push_back(id_to_json(id));
    return {{"schema", "v1"},
            {"verdict", v},
            {"certificate_m", c.certificate_m},
            {"certificate_gap", c.certificate_gap},
            {"certificate_id", id_to_json(c.certificate_id)},
            {"certificate_value", c.certificate_value},
            {"attaining", att},
            {"note", c.note}};
}

Json example76_to_json(const Example76Report& r) {
    Json sweep = Json::array();
    for (size_t i = 0; i < r.m_sweep.size(); ++i)
        sweep.push_back({{"m", r.m_sweep[i].m},
                         {"q_m_lower", r.m_sweep[i].best_value},
                         {"bound", r.m_bounds[i]},
                         {"best_word", word_to_json(r.m_sweep[i].best_word)}});
    const char* side = r.side == AttainingSide::fcf ? "fcf"
                       : r.side == AttainingSide::invariant ? "invariant"
                                                            : "tie";
    return {{"schema", "v1"},
            {"mu1_integral", r.mu1_integral.str()},
            {"delta0_integral", r.delta0_integral.str()},
            {"m_sweep", sweep},
            {"q_m_bound_ok", r.q_m_bound_ok},
            {"q_star", r.q_star},
            {"side", side},
            {"classification", classification_to_json(r.classification)},
            {"all_ok", r.all_ok}};
}

Json lock_report_to_json(const LockReport& r) {
    Json trials = Json::array();
    for (const auto& t : r.trials)
        trials.push_back({{"winner", id_to_json(t.winner)},
                          {"value", t.value},
                          {"margin", t.margin},
                          {"unchanged", t.unchanged}});
    Json j{{"schema", "v1"},
           {"x", r.x.str()},
           {"t", r.t},
           {"alpha", r.alpha},
           {"seed", r.seed},
           {"C_x", r.constants.C_x},
           {"epsilon", r.constants.epsilon.str()},
           {"delta", r.constants.delta.str()},
           {"psi_seminorm", r.psi_seminorm},
           {"budgets",
            {{"max_digit", r.budgets.max_digit},
             {"max_len", r.budgets.max_len},
             {"m", r.budgets.m},
             {"max_period", r.budgets.max_period}}},
           {"base_winner", id_to_json(r.base_winner)},
           {"base_value", r.base_value},
           {"base_margin", r.base_margin},
           {"tie_break_applied", r.tie_break_applied},
           {"trials", trials},
           {"unchanged_count", r.unchanged_count},
           {"fraction_unchanged", r.fraction_unchanged}};
    if (r.s) j["s"] = *r.s;
    return j;
}

Json transport_trace_to_json(const TransportTrace& t) {
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"orbit", s.orbit_point},
                         {"y", s.y.str()},
                         {"label", std::string(1, s.label)},
                         {"dist", s.dist_to_orbit},
                         {"deviation", s.deviation},
                         {"control_ok", s.control_ok},
                         {"guard", s.guard_triggered},
                         {"block_end", s.block_end}});
    Json j{{"schema", "v1"},
           {"x", t.x.str()},
           {"alpha", t.alpha},
           {"C_x", t.constants.C_x},
           {"epsilon", t.constants.epsilon.str()},
           {"delta", t.constants.delta.str()},
           {"steps", steps},
           {"all_control_ok", t.all_control_ok}};
    if (t.has_birkhoff) {
        j["eta"] = t.eta;
        j["block_average"] = t.block_average;
        j["last_block_boundary"] = t.last_block_boundary;
        j["birkhoff_ok"] = t.birkhoff_ok;
    }
    return j;
}

void write_m_sweep_csv(const std::string& path, const std::vector<OrbitSearchResult>& sweep,
                       const std::vector<double>& uppers) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_m_sweep_csv: cannot open " + path);
    out << "m,Q_m_lower,Q_m_upper\n";
    out.precision(17);
    for (size_t i = 0; i < sweep.size(); ++i) {
        out << sweep[i].m << "," << sweep[i].best_value << ",";
        if (i < uppers.size()) out << uppers[i];
        out << "\n";
    }
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json: cannot open " + path);
    out << j.dump(2) << "\n";
}

} // namespace ergopt
