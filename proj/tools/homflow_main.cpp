// homflow: exact structure computations for homogeneous flows.
//
// Subcommands: validate, classify, jordan, sl2, keepaway, minimal-sets,
// torus {distributions, solve, resonance, diophantine, liouville, pullback}.
// JSON reports go to stdout (or --output); human summaries to stderr.
// Exit codes: 0 ok, 2 precondition violation, 3 certification/validation
// failure, 64 usage.

#include "homflow/flow_classify.hpp"
#include "homflow/json_io.hpp"
#include "homflow/keepaway.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/torus_cohomology.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace homflow;
using io::json;

struct RunConfig {
    std::string output;  // empty = stdout
    std::string precision = "double";
    std::uint64_t seed = 0;
};

void emit_report(const RunConfig& cfg, const json& report) {
    if (cfg.output.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw std::invalid_argument("cannot write output file: " + cfg.output);
        out << report.dump(2) << "\n";
        std::cerr << "report written to " << cfg.output << "\n";
    }
}

json rat_vec_json(const RatVec& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back(to_string(c));
    return arr;
}

json counts_json(const HalfPlaneCounts& c) { return json::array({c.zero, c.plus, c.minus}); }

json certificate_json(const RatPoly& chi, const HalfPlaneCertificate& cert) {
    json factors = json::array();
    for (const auto& f : cert.factors)
        factors.push_back({{"degree", f.degree},
                           {"multiplicity", f.multiplicity},
                           {"axis_roots", f.axis_roots},
                           {"cauchy_index", f.cauchy_index}});
    return {{"char_poly", to_string(chi)}, {"factors", factors}};
}

IntMat parse_int_matrix(const std::string& text) {
    IntMat rows;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t semi = text.find(';', pos);
        if (semi == std::string::npos) semi = text.size();
        std::string row = text.substr(pos, semi - pos);
        IntVec r;
        size_t rp = 0;
        while (rp <= row.size()) {
            size_t comma = row.find(',', rp);
            if (comma == std::string::npos) comma = row.size();
            r.emplace_back(row.substr(rp, comma - rp), 10);
            rp = comma + 1;
            if (comma == row.size()) break;
        }
        rows.push_back(std::move(r));
        pos = semi + 1;
        if (semi == text.size()) break;
    }
    return rows;
}

std::vector<Rat> parse_omega(const std::string& text) {
    std::vector<Rat> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        if (tok == "golden64") out.push_back(torus::golden_ratio_64());
        else out.push_back(parse_rat(tok));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& r : parse_rat_list(text)) {
        if (r.get_den() != 1) throw std::invalid_argument("expected integers: " + text);
        out.push_back(static_cast<long>(r.get_num().get_si()));
    }
    return out;
}

int cmd_validate(const RunConfig& cfg, const std::string& algebra_path) {
    auto alg = io::load_lie_algebra(algebra_path);
    auto report = lie::validate(alg);
    json doc;
    doc["ok"] = report.ok();
    json jac = json::array();
    for (const auto& v : report.jacobi)
        jac.push_back({{"i", v.i}, {"j", v.j}, {"k", v.k}, {"residual", rat_vec_json(v.residual)}});
    doc["jacobi_violations"] = jac;
    doc["antisymmetry_violations"] = json::array();
    std::cerr << (report.ok() ? "valid Lie algebra" : "violations found") << "\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& algebra_path, const std::string& element) {
    auto alg = io::load_lie_algebra(algebra_path);
    auto x = parse_rat_list(element);
    auto fc = flows::classify_flow(alg, x);
    json doc;
    doc["tag"] = fc.tag == flows::FlowTag::QuasiUnipotent ? "QuasiUnipotent" : "PartiallyHyperbolic";
    doc["counts"] = counts_json(fc.counts);
    doc["certificate"] = certificate_json(fc.char_poly, fc.certificate);
    std::cerr << "tag: " << doc["tag"].get<std::string>() << " counts: " << doc["counts"].dump()
              << "\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_jordan(const RunConfig& cfg, const std::string& algebra_path, const std::string& element) {
    auto alg = io::load_lie_algebra(algebra_path);
    auto x = parse_rat_list(element);
    auto jp = flows::jordan_chevalley(alg, x);
    json doc;
    doc["s"] = rat_vec_json(jp.s);
    doc["n"] = rat_vec_json(jp.n);
    doc["min_poly_s"] = to_string(jp.min_poly_s);
    doc["group_factors"] = {{"c_generator", rat_vec_json(jp.s)}, {"u_generator", rat_vec_json(jp.n)}};
    doc["certificates"] = {{"sum_is_x", true}, {"commute", true}, {"n_nilpotent", true},
                           {"min_poly_squarefree", true}};
    std::cerr << "s + n decomposition computed; all certificates exact\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_sl2(const RunConfig& cfg, const std::string& algebra_path, const std::string& nilpotent,
            const std::string& commuting_with) {
    auto alg = io::load_lie_algebra(algebra_path);
    auto n_plus = parse_rat_list(nilpotent);
    std::optional<lie::Element> s;
    if (!commuting_with.empty()) s = parse_rat_list(commuting_with);
    auto triple = flows::sl2_embed(alg, n_plus, s);
    json doc;
    doc["a"] = rat_vec_json(triple.a);
    doc["n_plus"] = rat_vec_json(triple.n_plus);
    doc["n_minus"] = rat_vec_json(triple.n_minus);
    json certs = {{"bracket_a_nplus_is_nplus", true},
                  {"bracket_a_nminus_is_minus_nminus", true},
                  {"bracket_nplus_nminus_is_a", true}};
    if (s) certs["commutes_with_s"] = true;
    doc["certificates"] = certs;
    std::cerr << "sl2 triple certified exactly\n";
    emit_report(cfg, doc);
    return 0;
}

json point_json(const keepaway::TorusPoint& p) {
    auto d = keepaway::to_doubles(p);
    return json::array({d[0], d[1]});
}

int cmd_keepaway(const RunConfig& cfg, const std::string& matrix, const std::string& targets_path,
                 const std::string& window_text, int stages, double tmax, double step,
                 const std::string& r_text, const std::string& delta_text, const std::string& mode,
                 const std::string& csv_path) {
    auto sys = keepaway::build_system(parse_int_matrix(matrix),
                                      mode == "suspension" ? keepaway::SystemMode::Suspension
                                                           : keepaway::SystemMode::DiscreteMap);
    std::vector<keepaway::TorusPoint> targets;
    if (!targets_path.empty())
        for (const auto& t : io::load_targets(targets_path))
            targets.push_back(keepaway::rational_point(t[0], t[1]));
    auto wparts = parse_rat_list(window_text);
    if (wparts.size() != 3) throw std::invalid_argument("window must be cx,cy,radius");
    keepaway::Window window{wparts[0], wparts[1], wparts[2]};
    keepaway::KeepAwayParams params;
    params.max_stages = stages;
    params.t_max = tmax;
    params.step_h = step;
    params.seed = cfg.seed;
    if (!r_text.empty()) params.r = parse_rat(r_text);
    if (!delta_text.empty()) params.delta = parse_rat(delta_text);

    auto res = keepaway::run_keepaway(sys, targets, window, params);

    json doc;
    doc["system"] = {{"lambda", sys.lambda},
                     {"t_unit", sys.t_unit},
                     {"mode", mode == "suspension" ? "suspension" : "map"}};
    doc["x0"] = point_json(res.trace.x0);
    doc["r"] = to_string(res.trace.r);
    doc["delta"] = to_string(res.trace.delta);
    doc["q"] = point_json(res.q);
    doc["epsilon"] = std::isinf(res.epsilon) ? json("inf") : json(res.epsilon);
    doc["kappa"] = res.kappa;
    doc["tau_infinite"] = res.trace.tau_infinite;
    json stg = json::array();
    for (const auto& st : res.trace.stages)
        stg.push_back({{"tau_applications", st.tau_applications},
                       {"tau_rescaled", st.tau_rescaled},
                       {"target", st.target},
                       {"x_next", point_json(st.x_next)},
                       {"sigma", st.sigma},
                       {"u_offset", st.u_offset},
                       {"interval_center", st.interval_center},
                       {"interval_half_length", st.interval_half_length},
                       {"containment_certified", st.containment_certified},
                       {"annulus_certified", st.annulus_certified}});
    doc["stages"] = stg;
    doc["validation"] = {{"ok", res.trace.validation.ok},
                         {"steps_checked", res.trace.validation.steps_checked},
                         {"first_violation_time", res.trace.validation.first_violation_time},
                         {"min_distance", res.trace.validation.min_distance}};

    if (!csv_path.empty() && !targets.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::invalid_argument("cannot write csv file: " + csv_path);
        csv << "t,x,y,min_target_distance\n";
        csv.precision(cfg.precision == "extended" ? 19 : 17);
        std::vector<std::array<double, 2>> orbit;
        keepaway::TorusPoint cur = res.q;
        long apps = static_cast<long>(std::ceil(tmax * sys.t_unit)) + 1;
        for (long k = 0; k <= apps; ++k) {
            orbit.push_back(keepaway::to_doubles(cur));
            cur = keepaway::reduce_mod1(sys.apply(cur));
        }
        std::vector<std::array<double, 2>> targets_d;
        for (const auto& p : targets) targets_d.push_back(keepaway::to_doubles(p));
        for (double t = 0; t <= tmax; t += step) {
            double phys = t * sys.t_unit;
            long k = static_cast<long>(std::floor(phys));
            double level = phys - double(k);
            double dist = 1e308;
            for (const auto& pd : targets_d) {
                double base = keepaway::torus_distance(orbit[static_cast<size_t>(k)], pd);
                if (sys.mode == keepaway::SystemMode::Suspension) {
                    double up = std::hypot(keepaway::torus_distance(orbit[static_cast<size_t>(k + 1)], pd),
                                           1.0 - level);
                    dist = std::min({dist, std::hypot(base, level), up});
                } else {
                    dist = std::min(dist, base);
                }
            }
            auto pos = orbit[static_cast<size_t>(k)];
            csv << t << "," << pos[0] << "," << pos[1] << "," << dist << "\n";
        }
        doc["csv"] = csv_path;
    }

    std::cerr << "q = " << doc["q"].dump() << " epsilon = " << doc["epsilon"].dump()
              << (res.trace.validation.ok ? " (validated)" : " (VALIDATION FAILED)") << "\n";
    emit_report(cfg, doc);
    return res.trace.validation.ok ? 0 : 3;
}

int cmd_minimal_sets(const RunConfig& cfg, const std::string& matrix, int count, double eps_sep,
                     long t_obs) {
    auto sys = keepaway::build_system(parse_int_matrix(matrix));
    keepaway::KeepAwayParams params;
    params.seed = cfg.seed;
    params.eps_sep = eps_sep;
    params.t_obs = t_obs;
    auto cat = keepaway::enumerate_minimal_sets(sys, count, params);
    json doc;
    doc["count"] = cat.sets.size();
    doc["complete"] = cat.complete;
    doc["attempts"] = cat.attempts;
    json sets = json::array();
    for (const auto& s : cat.sets) {
        json entry;
        entry["periodic"] = s.periodic;
        entry["period"] = s.period;
        entry["invariance_residual"] = s.invariance_residual;
        entry["proximity"] = s.proximity;
        json pts = json::array();
        for (const auto& p : s.points) pts.push_back(json::array({p[0], p[1]}));
        entry["points"] = pts;
        if (!s.rational_orbit.empty()) {
            json orb = json::array();
            for (const auto& p : s.rational_orbit)
                orb.push_back(json::array({to_string(p[0]), to_string(p[1])}));
            entry["orbit"] = orb;
        }
        sets.push_back(entry);
    }
    doc["sets"] = sets;
    doc["separations"] = cat.separations;
    std::cerr << "catalog: " << cat.sets.size() << " sets in " << cat.attempts << " attempts"
              << (cat.complete ? "" : " (budget exhausted: partial)") << "\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_torus_distributions(const RunConfig& cfg, const std::string& omega_text, long cutoff,
                            bool approximate) {
    auto omega = parse_omega(omega_text);
    bool approx = approximate || omega_text.find("golden64") != std::string::npos;
    auto basis = torus::invariant_distributions(torus::make_flow(omega, approx), cutoff);
    json doc;
    json modes = json::array();
    for (const auto& k : basis.modes) modes.push_back(k);
    doc["basis"] = modes;
    doc["count"] = basis.modes.size();
    doc["exact"] = basis.exact_frequencies;
    if (basis.min_abs_nonresonant != 0) {
        doc["min_abs_nonresonant"] = to_string(basis.min_abs_nonresonant);
        doc["min_abs_decimal"] = basis.min_abs_nonresonant.get_d();
        doc["min_witness"] = basis.min_witness;
    }
    doc["atol"] = basis.atol;
    std::cerr << "distribution modes up to cutoff " << cutoff << ": " << basis.modes.size() << "\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_torus_solve(const RunConfig& cfg, const std::string& omega_text, const std::string& f_path,
                    long cutoff) {
    auto omega = parse_omega(omega_text);
    auto f = io::load_fourier(f_path);
    for (const auto& [k, c] : f.coeffs) {
        long norm = 0;
        for (long v : k) norm = std::max(norm, std::labs(v));
        if (cutoff > 0 && norm > cutoff)
            throw std::invalid_argument("Fourier support exceeds the requested cutoff");
    }
    auto sol = torus::solve_cohomological(torus::make_flow(omega), f);
    json doc;
    json modes = json::array();
    for (const auto& [k, c] : sol.u_scaled.coeffs) {
        // exact coefficient of 1/(2 pi i), plus a floating rendition of u_hat
        double re = c.re.get_d(), im = c.im.get_d();
        double tp = 2 * M_PI;
        modes.push_back({{"k", k},
                         {"re", to_string(c.re)},
                         {"im", to_string(c.im)},
                         {"u_decimal_re", im / tp},
                         {"u_decimal_im", -re / tp}});
    }
    doc["solution_scaled_by_2pii"] = modes;
    json obs = json::array();
    for (const auto& [k, c] : sol.obstructions)
        obs.push_back({{"k", k}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
    doc["obstructions"] = obs;
    std::cerr << sol.u_scaled.coeffs.size() << " modes solved, " << sol.obstructions.size()
              << " obstructions\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_torus_resonance(const RunConfig& cfg, const std::string& omega_text) {
    auto lattice = torus::resonance_lattice(parse_omega(omega_text));
    json doc;
    json basis = json::array();
    for (const auto& row : lattice.basis) {
        json r = json::array();
        for (const auto& v : row) r.push_back(static_cast<long>(v.get_si()));
        basis.push_back(r);
    }
    doc["basis"] = basis;
    doc["rank"] = lattice.rank();
    std::cerr << "resonance lattice rank " << lattice.rank() << "\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_torus_diophantine(const RunConfig& cfg, const std::string& omega_text, long depth) {
    auto est = torus::diophantine_type(parse_omega(omega_text), depth);
    json doc;
    doc["resonant"] = est.resonant;
    if (est.resonant) {
        doc["resonance_witness"] = est.resonance_witness;
        std::cerr << "frequencies are rationally dependent: resonance reported\n";
    } else {
        json recs = json::array();
        for (const auto& r : est.records)
            recs.push_back({{"norm", r.norm},
                            {"witness", r.witness},
                            {"value", to_string(r.value)},
                            {"value_decimal", r.value.get_d()}});
        doc["records"] = recs;
        doc["tau_hat"] = est.tau_hat;
        doc["c_hat"] = est.c_hat;
        std::cerr << "diophantine envelope: tau ~ " << est.tau_hat << ", C ~ " << est.c_hat << "\n";
    }
    emit_report(cfg, doc);
    return 0;
}

int cmd_torus_liouville(const RunConfig& cfg, int depth, long box, bool golden) {
    int max_depth = cfg.precision == "extended" ? 5 : 4;
    if (depth > max_depth)
        throw std::invalid_argument("truncation depth exceeds the precision mode (use extended for 5)");
    auto schedule = torus::liouville_truncation_schedule(depth);
    auto modes = torus::liouville_demo_function(box, depth);
    std::vector<std::vector<Rat>> omegas = schedule;
    if (golden)
        omegas.assign(static_cast<size_t>(depth), {Rat(1), torus::golden_ratio_64()});
    auto rows = torus::liouville_blowup_demo(omegas, modes);
    json doc;
    json rj = json::array();
    for (const auto& r : rows)
        rj.push_back({{"depth", r.depth},
                      {"omega_second", to_string(r.omega_second)},
                      {"max_log10_u", r.max_log10_u},
                      {"argmax", r.argmax},
                      {"min_log10_divisor", r.min_log10_divisor},
                      {"divisor_witness", r.divisor_witness},
                      {"obstructions", r.obstruction_count},
                      {"sobolev_h2_f", r.sobolev_h2_f}});
    doc["rows"] = rj;
    std::cerr << "liouville growth table with " << rows.size() << " truncations\n";
    emit_report(cfg, doc);
    return 0;
}

int cmd_torus_pullback(const RunConfig& cfg, const std::string& matrix, const std::string& omega_text,
                       const std::string& dist_text) {
    auto p = parse_int_matrix(matrix);
    auto omega = parse_omega(omega_text);
    auto dist = parse_long_list(dist_text);
    auto k = torus::pullback_distribution(p, dist, omega);
    json doc;
    doc["mode"] = k;
    Rat pairing(0);
    for (size_t i = 0; i < omega.size(); ++i) pairing += omega[i] * Rat(k[i]);
    doc["resonant"] = (pairing == 0);
    std::cerr << "pulled back to " << doc["mode"].dump() << "\n";
    emit_report(cfg, doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Lie-algebra structure, flow classification, keep-away minimal sets and "
                 "toral cohomological equations"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("HOMFLOW_PRECISION")) cfg.precision = env;
    app.add_option("--output", cfg.output, "write the JSON report to this file instead of stdout");
    app.add_option("--precision", cfg.precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
    app.add_option("--seed", cfg.seed, "seed for randomized searches (fixed seed => fixed output)");

    std::string algebra_path, element, nilpotent, commuting;
    std::string matrix, targets_path, window = "0.5,0.5,0.1", r_text, delta_text, mode = "map";
    std::string csv_path, omega_text, f_path, dist_text;
    int stages = 20, count = 5, liouville_depth = 4;
    long cutoff = 50, depth = 1000, box = 12, t_obs = 12000;
    double tmax = 1000, step = 0.01, eps_sep = 1e-2;
    bool approx = false, golden = false;

    auto* c_validate = app.add_subcommand("validate", "check antisymmetry and the Jacobi identity");
    c_validate->add_option("--algebra", algebra_path, "algebra JSON file")->required();

    auto* c_classify = app.add_subcommand("classify", "quasi-unipotent or partially hyperbolic");
    c_classify->add_option("--algebra", algebra_path)->required();
    c_classify->add_option("--element", element, "generator coordinates, e.g. \"1/2,0,3\"")->required();

    auto* c_jordan = app.add_subcommand("jordan", "exact Jordan decomposition inside the algebra");
    c_jordan->add_option("--algebra", algebra_path)->required();
    c_jordan->add_option("--element", element)->required();

    auto* c_sl2 = app.add_subcommand("sl2", "complete a nilpotent to an sl2 triple");
    c_sl2->add_option("--algebra", algebra_path)->required();
    c_sl2->add_option("--nilpotent", nilpotent)->required();
    c_sl2->add_option("--commuting-with", commuting);

    auto* c_keep = app.add_subcommand("keepaway", "nested-disc orbit avoiding prescribed targets");
    c_keep->add_option("--matrix", matrix, "integer matrix, rows separated by ';'")->required();
    c_keep->add_option("--targets", targets_path, "targets JSON file");
    c_keep->add_option("--window", window, "cx,cy,radius");
    c_keep->add_option("--stages", stages);
    c_keep->add_option("--tmax", tmax, "validation horizon in rescaled units");
    c_keep->add_option("--step", step, "reporting step in rescaled units");
    c_keep->add_option("--r", r_text, "leaf radius override");
    c_keep->add_option("--delta", delta_text, "transversal radius override");
    c_keep->add_option("--mode", mode)->check(CLI::IsMember({"map", "suspension"}));
    c_keep->add_option("--csv", csv_path, "orbit trace CSV path");

    auto* c_min = app.add_subcommand("minimal-sets", "catalog of pairwise-separated invariant sets");
    c_min->add_option("--matrix", matrix)->required();
    c_min->add_option("--count", count);
    c_min->add_option("--eps-sep", eps_sep);
    c_min->add_option("--t-obs", t_obs);

    auto* c_torus = app.add_subcommand("torus", "linear toral flow analysis");
    c_torus->require_subcommand(1);
    auto* t_dist = c_torus->add_subcommand("distributions", "invariant distribution modes");
    t_dist->add_option("--omega", omega_text)->required();
    t_dist->add_option("--cutoff", cutoff);
    t_dist->add_flag("--approximate", approx, "mark the frequencies as approximants");
    auto* t_solve = c_torus->add_subcommand("solve", "mode-wise cohomological equation");
    t_solve->add_option("--omega", omega_text)->required();
    t_solve->add_option("--f", f_path, "Fourier data JSON")->required();
    t_solve->add_option("--cutoff", cutoff);
    auto* t_res = c_torus->add_subcommand("resonance", "canonical resonance lattice basis");
    t_res->add_option("--omega", omega_text)->required();
    auto* t_dio = c_torus->add_subcommand("diophantine", "small-divisor envelope with witnesses");
    t_dio->add_option("--omega", omega_text)->required();
    t_dio->add_option("--depth", depth);
    auto* t_li = c_torus->add_subcommand("liouville", "instability growth table");
    t_li->add_option("--depth", liouville_depth);
    t_li->add_option("--box", box);
    t_li->add_flag("--golden", golden, "use the golden frequency instead of the truncations");
    auto* t_pull = c_torus->add_subcommand("pullback", "transpose action of a torus epimorphism");
    t_pull->add_option("--matrix", matrix)->required();
    t_pull->add_option("--omega", omega_text)->required();
    t_pull->add_option("--dist", dist_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*c_validate) return cmd_validate(cfg, algebra_path);
        if (*c_classify) return cmd_classify(cfg, algebra_path, element);
        if (*c_jordan) return cmd_jordan(cfg, algebra_path, element);
        if (*c_sl2) return cmd_sl2(cfg, algebra_path, nilpotent, commuting);
        if (*c_keep)
            return cmd_keepaway(cfg, matrix, targets_path, window, stages, tmax, step, r_text,
                                delta_text, mode, csv_path);
        if (*c_min) return cmd_minimal_sets(cfg, matrix, count, eps_sep, t_obs);
        if (*t_dist) return cmd_torus_distributions(cfg, omega_text, cutoff, approx);
        if (*t_solve) return cmd_torus_solve(cfg, omega_text, f_path, cutoff);
        if (*t_res) return cmd_torus_resonance(cfg, omega_text);
        if (*t_dio) return cmd_torus_diophantine(cfg, omega_text, depth);
        if (*t_li) return cmd_torus_liouville(cfg, liouville_depth, box, golden);
        if (*t_pull) return cmd_torus_pullback(cfg, matrix, omega_text, dist_text);
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 64;
}
