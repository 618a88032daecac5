// Copyright 2026 The qlocc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "qlocc/cli.hpp"
#include "qlocc/min_error.hpp"
#include "qlocc/perfect.hpp"
#include "qlocc/trine.hpp"
#include "qlocc/unambiguous.hpp"

namespace qlocc::cli {

using nlohmann::json;

namespace {

constexpr const char *kVersion = "0.1.0";

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json vjson(const CVector &v) {
    json out = json::array();
    for (const auto &z : v) {
        out.push_back(cjson(z));
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string yes(bool b) { return b ? "yes" : "no"; }

OptimizerOptions optimizer_options(const Config &cfg) {
    OptimizerOptions o;
    o.restarts = cfg.restarts;
    o.seed = cfg.seed;
    return o;
}

json certificate_json(const Certificate &c) {
    return {{"worst_min_eig", c.worst_min_eig()},
            {"min_eigs", c.min_eigs},
            {"hermiticity_gap", c.hermiticity_gap},
            {"complementarity", c.complementarity}};
}

json solution_json(const OptimalSolution &s) {
    return {{"success", s.success},
            {"certified", s.certified},
            {"certificate", certificate_json(s.certificate)},
            {"restarts_used", s.restarts_used},
            {"povm_completeness_gap", s.povm.completeness_gap()},
            {"povm_min_eig", s.povm.min_element_eigenvalue()}};
}

void flag_uncertified(Report &r, bool certified, const std::string &what) {
    if (!certified) {
        r.uncertified = true;
        r.warnings.push_back("UNCERTIFIED: " + what);
    }
}

LoadedEnsemble load_one(Report &r, const std::vector<std::string> &inputs, const Config &cfg) {
    if (inputs.size() != 1) {
        throw InputError(r.command + " needs exactly one ensemble file");
    }
    LoadedEnsemble le = parse_ensemble(inputs[0], cfg.strict);
    r.inputs.push_back({{"sha256", le.sha256}, {"label", le.label}, {"states", le.ensemble.size()},
                        {"dim", le.ensemble.dim()}, {"party_dims", le.ensemble.dims()}});
    for (const auto &w : le.warnings) {
        r.warnings.push_back(w);
    }
    return le;
}

void no_inputs(const Report &r, const std::vector<std::string> &inputs) {
    if (!inputs.empty()) {
        throw InputError(r.command + " takes no ensemble file");
    }
}

bool two_qubit(const Ensemble &e) { return e.dims() == PartyDims{2, 2}; }

// ---- commands ----

void classify_perfect_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    auto le = load_one(r, in, cfg);
    PerfectVerdict v = classify(le.ensemble, cfg.tol);
    json states = json::array();
    for (const auto &w : v.states) {
        json s = {{"rank", w.rank}, {"sch_perp", w.sch_perp}};
        if (w.concurrence) s["concurrence"] = *w.concurrence;
        if (w.support_pt_min) s["support_pt_min"] = *w.support_pt_min;
        if (w.complement_concurrence) s["complement_concurrence"] = *w.complement_concurrence;
        if (w.antiparallel) {
            s["antiparallel"] = {{"antiparallel", w.antiparallel->antiparallel},
                                 {"z1", cjson(w.antiparallel->z1)},
                                 {"z2", cjson(w.antiparallel->z2)},
                                 {"ratio", cjson(w.antiparallel->ratio)}};
        }
        states.push_back(s);
    }
    r.results = {{"profile", v.profile},
                 {"sep_perfect", v.sep},
                 {"locc_perfect", v.locc},
                 {"sch_perp_sum", v.sch_perp_sum},
                 {"orthogonality_residual", v.max_overlap},
                 {"states", states},
                 {"notes", v.notes}};
    if (v.complement) r.results["complement"] = vjson(*v.complement);
    if (v.complement_concurrence) r.results["complement_concurrence"] = *v.complement_concurrence;
    if (v.concurrence_sum) r.results["concurrence_sum"] = *v.concurrence_sum;
    std::ostringstream prof;
    for (size_t i = 0; i < v.profile.size(); i++) prof << (i ? "," : "{") << v.profile[i];
    prof << "}";
    r.summary = {"rank profile: " + prof.str(), "perfect by SEP: " + yes(v.sep),
                 "perfect by LOCC: " + yes(v.locc), "orthogonality residual: " + fmt(v.max_overlap)};
}

void min_error_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    auto le = load_one(r, in, cfg);
    const Ensemble &e = le.ensemble;
    r.seeds = {{"optimizer", cfg.seed}};
    OptimalSolution s;
    if (e.size() == 2) {
        s = helstrom_two_state(e, cfg.tol);
        Matrix d = e.priors[0] * e.states[0].matrix() - e.priors[1] * e.states[1].matrix();
        double tn = 0;
        for (double x : eigvals_hermitian(d)) tn += std::abs(x);
        double trace_norm_success = 0.5 * (1 + tn);
        r.results = solution_json(s);
        r.results["method"] = "helstrom";
        r.results["trace_norm_success"] = trace_norm_success;
        r.results["oracle_difference"] = std::abs(s.success - trace_norm_success);
    } else {
        s = optimal_povm(e, optimizer_options(cfg), cfg.tol);
        r.results = solution_json(s);
        r.results["method"] = "rotation-search";
    }
    r.summary = {"optimal success: " + fmt(s.success), "certified: " + yes(s.certified),
                 "worst certificate eigenvalue: " + fmt(s.certificate.worst_min_eig())};
    if (e.is_pure() && s.certified) {
        try {
            auto dd = detection_decomposition(e, s, cfg.tol);
            json ds = json::array();
            for (const auto &k : dd.detection_states) {
                ds.push_back({{"ket", vjson(k)}, {"concurrence", two_qubit(e) ? json(concurrence_pure(k)) : json()}});
                if (two_qubit(e)) r.summary.push_back("detection state concurrence: " + fmt(concurrence_pure(k)));
            }
            r.results["detection_states"] = ds;
            r.results["detection_invariant_residual"] = dd.max_invariant_residual;
        } catch (const MinErrorError &err) {
            r.warnings.push_back(std::string("detection decomposition unavailable: ") + err.what());
        }
    }
    flag_uncertified(r, s.certified, "minimum-error optimum failed its optimality certificate");
}

void locc_optimal_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    auto le = load_one(r, in, cfg);
    r.seeds = {{"optimizer", cfg.seed}};
    LoccOptimality t = locc_optimality_test(le.ensemble, optimizer_options(cfg), cfg.tol);
    json ds = json::array();
    for (size_t i = 0; i < t.detection_states.size(); i++) {
        ds.push_back({{"ket", vjson(t.detection_states[i])}, {"concurrence", t.concurrences[i]}});
    }
    r.results = solution_json(t.solution);
    r.results["locc_optimal"] = t.locc_optimal;
    r.results["product_count"] = t.product_count;
    r.results["detection_states"] = ds;
    r.summary = {"optimal success: " + fmt(t.solution.success), "certified: " + yes(t.solution.certified),
                 "product detection states: " + std::to_string(t.product_count),
                 "LOCC achieves the optimum: " + yes(t.locc_optimal)};
    flag_uncertified(r, t.solution.certified, "minimum-error optimum failed its optimality certificate");
}

void nwoe_scan_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    auto le = load_one(r, in, cfg);
    const Ensemble &e = le.ensemble;
    r.seeds = {{"optimizer", cfg.seed}};
    NwoeResult n = nwoe_product_criterion(e, cfg.tol);
    double orth = 0;
    for (const auto &k : e.kets) orth = std::max(orth, std::abs(inner(n.complement, k)));
    LoccOptimality t = locc_optimality_test(e, optimizer_options(cfg), cfg.tol);
    r.results = {{"triggers", n.triggers},
                 {"complement", vjson(n.complement)},
                 {"complement_orthogonality_residual", orth},
                 {"lambda_min", n.lambda_min},
                 {"lhs", n.lhs},
                 {"rhs", n.rhs},
                 {"margins", n.margins},
                 {"scaled_lhs", n.scaled_lhs},
                 {"scaled_rhs", n.scaled_rhs},
                 {"locc_optimality_test", {{"locc_optimal", t.locc_optimal},
                                           {"product_count", t.product_count},
                                           {"certified", t.solution.certified},
                                           {"success", t.solution.success}}},
                 {"routes_agree", !n.triggers || !t.locc_optimal}};
    r.summary = {"criterion triggers: " + yes(n.triggers), "lambda_min: " + fmt(n.lambda_min)};
    for (int i = 0; i < 3; i++) {
        r.summary.push_back("state " + std::to_string(i) + ": " + fmt(n.scaled_lhs[i]) + " vs " +
                            fmt(n.scaled_rhs[i]));
    }
    r.summary.push_back("detection-state route says LOCC optimal: " + yes(t.locc_optimal));
    if (n.triggers && t.locc_optimal) {
        r.warnings.push_back("criterion triggers but the detection-state route reports LOCC optimality");
    }
    flag_uncertified(r, t.solution.certified, "minimum-error optimum failed its optimality certificate");
}

void trine_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    no_inputs(r, in);
    int n = cfg.copies;
    if (n < 2 || n > 60) {
        throw InputError("--copies must lie in [2, 60]");
    }
    json res;
    res["copies"] = n;
    res["overlap"] = trine_overlap(n);
    res["kappa"] = trine_kappa(n);
    res["alpha"] = trine_kappa(n) / 3;
    res["pgm_success_closed_form"] = pgm_success_closed_form(n);
    if (n <= kMaxTrineCopies) {
        TrineFamily f = trine_family(n);
        double gram = 0;
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                if (i != j) gram = std::max(gram, std::abs(inner(f.states[i], f.states[j]) - trine_overlap(n)));
            }
        }
        res["family"] = {{"overlap_residual", gram},
                         {"cube_residual", f.cube_residual},
                         {"shift_residual", f.shift_residual}};
        auto [iso, lt] = lift_iso(n);
        res["lift_gram_residual"] = iso.gram_residual;
        res["axis_residue_concurrence"] = axis_residue_concurrence(n);
        res["elimination_enumerated"] = elimination_enumerated(n);
    }
    if (n <= 10) {
        double p = pgm_success(n);
        res["pgm_success"] = p;
        res["pgm_oracle_difference"] = std::abs(p - pgm_success_closed_form(n));
    }
    EliminationResult ex = elimination_exact(n);
    res["elimination"] = {{"inconclusive", ex.inconclusive},
                          {"conclusive", ex.conclusive},
                          {"reported_elsewhere", ex.reported_elsewhere}};
    r.summary = {"copies: " + std::to_string(n), "state overlap: " + fmt(trine_overlap(n)),
                 "kappa: " + fmt(trine_kappa(n)), "PGM success: " + fmt(pgm_success_closed_form(n)),
                 "elimination inconclusive (exact): " + fmt(ex.inconclusive),
                 "elimination conclusive (exact): " + fmt(ex.conclusive)};
    if (cfg.samples > 0) {
        r.seeds = {{"monte_carlo", cfg.seed}};
        EliminationResult mc = elimination_monte_carlo(n, cfg.samples, cfg.seed);
        double z = mc.standard_error > 0 ? (mc.inconclusive - ex.inconclusive) / mc.standard_error : 0;
        res["monte_carlo"] = {{"samples", mc.samples},
                              {"inconclusive", mc.inconclusive},
                              {"standard_error", mc.standard_error},
                              {"z_score", z}};
        r.summary.push_back("elimination inconclusive (" + std::to_string(mc.samples) +
                            " samples): " + fmt(mc.inconclusive) + " +/- " + fmt(mc.standard_error));
    }
    r.warnings.push_back("annotation: " + elimination_annotation(n));
    r.results = res;
}

json unambiguous_json(const UnambiguousSolution &s) {
    return {{"conclusive", s.conclusive},
            {"inconclusive", s.inconclusive},
            {"coefficients", s.coefficients},
            {"weights", s.weights},
            {"rest_min_eig", s.rest_min_eig},
            {"zero_error_residual", s.zero_error_residual},
            {"dual_bound", s.dual_bound},
            {"gap", s.gap},
            {"certified", s.certified}};
}

void unambiguous_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    auto le = load_one(r, in, cfg);
    const Ensemble &e = le.ensemble;
    DualBasis db = dual_states(e, cfg.tol);
    json duals = json::array();
    for (size_t i = 0; i < db.duals.size(); i++) {
        duals.push_back({{"ket", vjson(db.duals[i])}, {"overlap", cjson(db.overlaps[i])}});
    }
    UnambiguousSolution s = global_unambiguous_opt(e, {}, cfg.tol);
    r.results = {{"duals", duals}, {"biorthogonality_residual", db.biorthogonality_residual},
                 {"global", unambiguous_json(s)}};
    r.summary = {"global conclusive: " + fmt(s.conclusive), "duality gap: " + fmt(s.gap),
                 "certified: " + yes(s.certified)};
    if (e.size() <= 3) {
        auto g = unambiguous_grid_oracle(e, 1e-3);
        r.results["grid_oracle"] = {{"best", g.best}, {"coefficients", g.coefficients}, {"points", g.points},
                                    {"step", 1e-3}, {"optimizer_minus_grid", s.conclusive - g.best}};
        r.summary.push_back("grid oracle conclusive: " + fmt(g.best));
        if (g.best > s.conclusive + 1e-4) {
            r.warnings.push_back("grid oracle beats the optimizer by more than 1e-4");
            r.uncertified = true;
        }
    }
    if (two_qubit(e) && (e.size() == 3 || e.size() == 4)) {
        LoccFeasibility f = locc_unambiguous_feasible(e, cfg.tol);
        json w = json::array();
        for (const auto &x : f.witnesses) w.push_back(x ? vjson(*x) : json());
        r.results["locc_perfect_unambiguous"] = {
            {"feasible", f.feasible}, {"witnesses", w}, {"complement_concurrence", f.complement_concurrence}};
        r.summary.push_back("every state unambiguously identifiable by LOCC: " + yes(f.feasible));
    }
    if (two_qubit(e) && e.size() == 3) {
        try {
            SymmetricSepBound b = symmetric_sep_bound(e, cfg.tol);
            json jb = {{"applicable", b.applicable},
                       {"dual_concurrence", b.dual_concurrence},
                       {"overlap_sq", b.overlap_sq}};
            if (b.bound) {
                jb["bound"] = *b.bound;
                r.summary.push_back("symmetric SEP bound: " + fmt(*b.bound));
            }
            r.results["symmetric_sep_bound"] = jb;
        } catch (const UnambiguousError &err) {
            r.results["symmetric_sep_bound"] = {{"applicable", false}, {"reason", err.what()}};
        }
    }
    flag_uncertified(r, s.certified, "unambiguous optimum failed its duality or feasibility check");
}

void double_trine_report_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    no_inputs(r, in);
    r.seeds = {{"optimizer", cfg.seed}};
    std::vector<CVector> kets;
    for (int i = 0; i < 3; i++) {
        double a = 2 * std::acos(-1.0) * i / 3;
        CVector s{std::cos(a), -std::sin(a)};
        kets.push_back(kron(s, s));
    }
    Ensemble e = Ensemble::uniform(kets);
    r.inputs.push_back({{"label", "double trine"}, {"states", 3}, {"dim", 4}, {"party_dims", {2, 2}}});

    LoccOptimality t = locc_optimality_test(e, optimizer_options(cfg), cfg.tol);
    double csum = 0;
    for (double c : t.concurrences) csum += c;
    NwoeResult n = nwoe_product_criterion(e, cfg.tol);
    json me = solution_json(t.solution);
    me["detection_concurrences"] = t.concurrences;
    me["detection_concurrence_sum"] = csum;
    me["locc_optimal"] = t.locc_optimal;
    me["criterion"] = {{"triggers", n.triggers}, {"scaled_lhs", n.scaled_lhs}, {"scaled_rhs", n.scaled_rhs},
                       {"margins", n.margins}};
    flag_uncertified(r, t.solution.certified, "minimum-error optimum failed its optimality certificate");

    UnambiguousSolution g = global_unambiguous_opt(e, {}, cfg.tol);
    auto go = unambiguous_grid_oracle(e, 1e-3);
    json global = unambiguous_json(g);
    global["grid_oracle"] = go.best;
    flag_uncertified(r, g.certified, "global unambiguous optimum failed its duality check");

    SymmetricSepSolution sep = double_trine_sep_opt(cfg.tol);
    DoubleTrineGrid sg = double_trine_grid_oracle(200);
    json branches = json::array();
    for (const auto &b : sep.branches) {
        branches.push_back({{"name", b.name}, {"a", b.a}, {"b", b.b}, {"c", b.c},
                            {"pi_concurrence", b.pi_concurrence}, {"omega_concurrence", b.omega_concurrence},
                            {"omega_separable", b.omega_separable}});
    }
    json sj = {{"conclusive", sep.conclusive}, {"a", sep.a}, {"b", sep.b}, {"c", sep.c}, {"branch", sep.branch},
               {"pi_eigs", sep.pi_eigs}, {"orbit_sum_eigs", sep.sum_eigs}, {"omega_t", sep.omega_t},
               {"pi_concurrence", sep.pi_concurrence}, {"omega_concurrence", sep.omega_concurrence},
               {"branches", branches},
               {"grid_oracle", {{"found", sg.found}, {"a", sg.a}, {"b", sg.b}, {"c", sg.c}, {"points", sg.points}}}};

    EliminationResult loc = elimination_exact(2);
    json lj = {{"conclusive", loc.conclusive}, {"inconclusive", loc.inconclusive}, {"protocol", "elimination"}};

    r.results = {{"min_error", me},
                 {"unambiguous", {{"global", global}, {"sep", sj}, {"locc", lj},
                                  {"sep_minus_locc", sep.conclusive - loc.conclusive}}}};
    std::ostringstream cs;
    for (size_t i = 0; i < t.concurrences.size(); i++) cs << (i ? ", " : "") << fmt(t.concurrences[i]);
    r.summary = {"min-error success: " + fmt(t.solution.success) + " (certified: " + yes(t.solution.certified) + ")",
                 "detection state concurrences: " + cs.str(),
                 "LOCC attains the min-error optimum: " + yes(t.locc_optimal),
                 "product criterion triggers: " + yes(n.triggers),
                 "unambiguous, global: " + fmt(g.conclusive),
                 "unambiguous, SEP: " + fmt(sep.conclusive) + " at (a, b, c) = (" + fmt(sep.a) + ", " +
                     fmt(sep.b) + ", " + fmt(sep.c) + ")",
                 "unambiguous, LOCC: " + fmt(loc.conclusive)};
    r.warnings.push_back("annotation: " + elimination_annotation(2));
}

void survey_cmd(Report &r, const std::vector<std::string> &in, const Config &cfg) {
    no_inputs(r, in);
    if (cfg.trials == 0) {
        throw InputError("--trials must be positive");
    }
    r.seeds = {{"survey", cfg.seed}};
    SurveyResult s = random_survey(cfg.trials, cfg.seed, std::nullopt, optimizer_options(cfg), cfg.tol);
    r.results = {{"trials", s.trials},
                 {"locc_optimal", s.locc_optimal},
                 {"fraction_locc_optimal", s.fraction_locc_optimal},
                 {"uncertified", s.uncertified},
                 {"min_concurrence_histogram", s.histogram},
                 {"min_concurrence_above_1e-4", s.min_concurrence_above_1e4}};
    r.summary = {"trials: " + std::to_string(s.trials), "LOCC optimal: " + std::to_string(s.locc_optimal),
                 "fraction LOCC optimal: " + fmt(s.fraction_locc_optimal),
                 "uncertified: " + std::to_string(s.uncertified)};
    if (s.uncertified > 0) {
        flag_uncertified(r, false, std::to_string(s.uncertified) + " of " + std::to_string(s.trials) +
                                       " trials failed their optimality certificate");
    }
}

using Handler = void (*)(Report &, const std::vector<std::string> &, const Config &);

const std::map<std::string, Handler> &handlers() {
    static const std::map<std::string, Handler> h = {
        {"classify-perfect", classify_perfect_cmd}, {"min-error", min_error_cmd},
        {"locc-optimal", locc_optimal_cmd},         {"nwoe-scan", nwoe_scan_cmd},
        {"trine", trine_cmd},                       {"unambiguous", unambiguous_cmd},
        {"double-trine-report", double_trine_report_cmd}, {"survey", survey_cmd}};
    return h;
}

}  // namespace

json Config::to_json() const {
    return {{"tolerances",
             {{"psd", tol.psd},
              {"product", tol.product},
              {"separable", tol.separable},
              {"orthogonality", tol.orthogonality},
              {"rank", tol.rank},
              {"independence", tol.independence},
              {"certificate", tol.certificate}}},
            {"seed", seed},
            {"restarts", restarts},
            {"samples", samples},
            {"trials", trials},
            {"copies", copies},
            {"strict", strict}};
}

std::string Config::digest() const { return sha256_hex(to_json().dump()); }

json Report::to_json(const Config &cfg) const {
    return {{"command", command},
            {"version", kVersion},
            {"inputs", inputs},
            {"config", cfg.to_json()},
            {"config_digest", cfg.digest()},
            {"seeds", seeds},
            {"results", results},
            {"warnings", warnings},
            {"status", uncertified ? "UNCERTIFIED" : "ok"}};
}

const std::vector<std::string> &commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[k, _] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

Report run(const std::string &command, const std::vector<std::string> &inputs, const Config &cfg) {
    auto it = handlers().find(command);
    if (it == handlers().end()) {
        throw InputError("unknown command: " + command);
    }
    Report r;
    r.command = command;
    try {
        it->second(r, inputs, cfg);
    } catch (const InputError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InputError(command + ": " + e.what());
    }
    return r;
}

std::string render_json(const json &j) { return j.dump(2) + "\n"; }

std::string render_summary(const Report &r) {
    std::ostringstream os;
    os << r.command << (r.uncertified ? " [UNCERTIFIED]" : "") << "\n";
    for (const auto &l : r.summary) os << "  " << l << "\n";
    for (const auto &w : r.warnings) os << "  warning: " << w << "\n";
    return os.str();
}

}  // namespace qlocc::cli
