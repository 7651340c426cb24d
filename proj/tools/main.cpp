#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cech/cone.hpp"
#include "cech/form.hpp"
#include "cech/lie.hpp"
#include "cech/report.hpp"
#include "cech/transgression.hpp"
#include "cech/wonderful.hpp"

namespace {

using namespace cech;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PivotOrder pivot_from_name(const std::string& name, std::uint64_t seed) {
    PivotOrder p;
    if (name == "lex")
        p.kind = PivotOrder::Kind::lex;
    else if (name == "reverse")
        p.kind = PivotOrder::Kind::reverse;
    else if (name == "shuffled")
        p.kind = PivotOrder::Kind::shuffled;
    else
        throw ParseError("unknown pivot order '" + name + "'");
    p.seed = seed;
    return p;
}

int run_transgress(const std::string& algebra_path, const std::string& poly_text,
                   const std::string& pivot_name, std::uint64_t seed, bool as_json) {
    auto t0 = std::chrono::steady_clock::now();
    std::string algebra_text = read_file(algebra_path);
    LieAlgebra g = lie_algebra_from_json_text(algebra_text);
    Polynomial poly = Polynomial::parse(poly_text, g.dual_labels());
    InvariantPolynomial p(g, poly);
    TransgressionResult result = transgress(p, g, pivot_from_name(pivot_name, seed));

    RunReport report;
    report.command = "transgress --algebra " + algebra_path + " --poly \"" + poly_text + "\"" +
                     " --pivot " + pivot_name;
    report.inputs_digest = hex64(fnv1a(algebra_text + "\x1f" + poly_text + "\x1f" + pivot_name));
    report.outputs.emplace_back("polynomial", poly.to_string(g.dual_labels()));
    for (const auto& [spot, entry] : result.chain.entries) {
        std::string key =
            "a^{" + std::to_string(spot.first) + "," + std::to_string(spot.second) + "}";
        report.outputs.emplace_back(key, form_to_string(entry.value, g.dual_labels()));
    }
    report.outputs.emplace_back("class", form_to_string(result.cls.representative, g.dual_labels()));

    int d = poly.is_zero() ? 0 : poly.degree();
    bool chain_ok = true;
    for (int pdeg = result.chain.d; pdeg >= 2; --pdeg) {
        int q = 2 * result.chain.d - pdeg;
        const BigradedElement& upper = result.chain.at(pdeg, q);
        const BigradedElement& lower = result.chain.at(pdeg - 1, q + 1);
        chain_ok = chain_ok && (d_II(upper, g).value == d_I(lower).value);
    }
    report.assertions.emplace_back("chain recurrence d_II a^{p,q} = d_I a^{p-1,q+1}", chain_ok);
    if (!poly.is_zero())
        report.assertions.emplace_back("top entry in Sigma subcomplex",
                                       is_in_sigma(result.chain.at(d, d)));
    report.assertions.emplace_back("class representative is closed",
                                   ce_differential(result.cls.representative, g).is_zero());
    if (result.cls.degree == 3) {
        Form eta = cartan_three_form(g);
        auto factor = classes_proportional(result.cls, CohomologyClass{3, eta}, g);
        report.outputs.emplace_back("eta", form_to_string(eta, g.dual_labels()));
        report.outputs.emplace_back("factor_vs_eta",
                                    factor ? factor->get_str() : std::string("none"));
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (as_json ? report.to_json() : report.to_text()) << std::endl;
    std::cerr << "elapsed_seconds: " << report.elapsed_seconds << "\n";
    for (const auto& [key, ok] : report.assertions)
        if (!ok) return 4;
    return 0;
}

int run_wonderful(const std::string& type_name, const std::string& cartan_path,
                  const std::string& poly_text, const std::string& mode_name, int degree_bound,
                  bool as_json) {
    auto t0 = std::chrono::steady_clock::now();
    RootSystemData r;
    std::string input_payload;
    if (!cartan_path.empty()) {
        input_payload = read_file(cartan_path);
        r = root_system_from_json_text(input_payload);
    } else {
        r = root_system_by_name(type_name);
        input_payload = type_name;
    }
    std::vector<std::string> unames;
    for (std::size_t i = 1; i <= r.rank; ++i) unames.push_back("u" + std::to_string(i));
    Polynomial p = Polynomial::parse(poly_text, unames);
    CokernelMode mode;
    if (mode_name == "eq")
        mode = CokernelMode::equivariant;
    else if (mode_name == "noneq")
        mode = CokernelMode::nonequivariant;
    else
        throw ParseError("mode must be 'eq' or 'noneq'");

    ResidueResult result = residue_class(p, r, mode, degree_bound);

    RunReport report;
    report.command = "wonderful residue --type " + (cartan_path.empty() ? type_name : cartan_path) +
                     " --poly \"" + poly_text + "\" --mode " + mode_name + " --degree-bound " +
                     std::to_string(degree_bound);
    report.inputs_digest =
        hex64(fnv1a(input_payload + "\x1f" + poly_text + "\x1f" + mode_name + "\x1f" +
                    std::to_string(degree_bound)));
    std::vector<std::string> uv = uv_names(r.rank);
    std::vector<std::string> xy = xy_names(r.rank);
    report.outputs.emplace_back("polynomial", p.to_string(unames));
    report.outputs.emplace_back("beta_uv", result.beta_poly.to_string(uv));
    report.outputs.emplace_back("beta_xy", uv_to_xy(result.beta_poly, r.rank).to_string(xy));
    for (std::size_t k = 0; k < r.rank; ++k)
        report.outputs.emplace_back("f_" + std::to_string(k + 1), result.f[k].to_string(uv));
    for (std::size_t k = 0; k < r.rank; ++k)
        report.outputs.emplace_back("class_" + std::to_string(k + 1),
                                    result.class_rep[k].to_string(uv));
    report.outputs.emplace_back("class_is_zero", result.class_is_zero ? "true" : "false");
    if (r.rank == 1 && !result.class_rep.empty()) {
        // Geometric translation for A1: u1 -> sigma(x)1, v1 -> -(1(x)sigma).
        std::vector<Polynomial> images;
        Polynomial s1(2), s2(2);
        s1.add_term({1, 0}, Rat(1));
        s2.add_term({0, 1}, Rat(-1));
        images.push_back(s1);
        images.push_back(s2);
        report.outputs.emplace_back("class_on_Z",
                                    result.class_rep[0].substitute(images).to_string(
                                        {"sigma1", "sigma2"}));
    }
    for (const std::string& w : result.warnings) report.outputs.emplace_back("warning", w);

    if (!p.is_zero()) {
        int d = p.degree();
        // beta identity: beta = 2^d (p(u) - p(v)).
        Polynomial pu(2 * r.rank), pv(2 * r.rank);
        for (const auto& [e, c] : p.terms()) {
            Polynomial::Exps eu(2 * r.rank, 0), ev(2 * r.rank, 0);
            for (std::size_t i = 0; i < r.rank; ++i) {
                eu[i] = e[i];
                ev[r.rank + i] = e[i];
            }
            pu.add_term(eu, c);
            pv.add_term(ev, c);
        }
        Rat two_d(1);
        for (int i = 0; i < d; ++i) two_d *= 2;
        report.assertions.emplace_back("beta = 2^d (p(u) - p(v))",
                                       result.beta_poly == (pu - pv) * two_d);
        Polynomial recomposed(2 * r.rank);
        for (std::size_t k = 0; k < r.rank; ++k) {
            Polynomial xk(2 * r.rank);
            Polynomial::Exps eu(2 * r.rank, 0), ev(2 * r.rank, 0);
            eu[k] = 1;
            ev[r.rank + k] = 1;
            xk.add_term(eu, Rat(1));
            xk.add_term(ev, Rat(-1));
            recomposed = recomposed + xk * result.f[k];
        }
        report.assertions.emplace_back("sum_k x_k f_k = beta", recomposed == result.beta_poly);
        bool membership = true;
        for (std::size_t k = 0; k < r.rank; ++k)
            membership = membership && is_in_A({k}, result.f[k], r);
        report.assertions.emplace_back("f_k in A_{k}", membership);
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (as_json ? report.to_json() : report.to_text()) << std::endl;
    std::cerr << "elapsed_seconds: " << report.elapsed_seconds << "\n";
    for (const auto& [key, ok] : report.assertions)
        if (!ok) return 4;
    return 0;
}

int run_verify_cone(std::uint64_t seed, std::size_t trials, std::size_t max_dim, long corrupt_trial) {
    auto t0 = std::chrono::steady_clock::now();
    ConeLemmaReport report = verify_cone_lemma(seed, trials, max_dim, corrupt_trial);
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
        const ConeLemmaTrial& t = report.trials[i];
        nlohmann::ordered_json line;
        line["trial"] = i;
        line["seed"] = t.seed;
        line["cases"] = t.cases;
        line["nonzero_cases"] = t.nonzero_cases;
        line["flavor"] = t.flavor;
        line["pass"] = t.pass;
        if (!t.note.empty()) line["note"] = t.note;
        std::cout << line.dump() << "\n";
    }
    nlohmann::ordered_json summary;
    summary["trials"] = report.trials.size();
    summary["total_cases"] = report.total_cases;
    summary["nonzero_cases"] = report.nonzero_cases;
    summary["failures"] = report.failures;
    summary["all_pass"] = report.all_pass();
    std::cout << summary.dump() << std::endl;
    std::cerr << "elapsed_seconds: "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "\n";
    return report.all_pass() ? 0 : 6;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations around the Cech spectral sequence of BG: the transgression "
                 "edge map, wonderful-compactification residues, and a bicomplex engine"};
    app.require_subcommand(1);

    std::string algebra_path, poly_text, pivot_name = "lex";
    std::uint64_t seed = 1;
    bool as_json = false;
    CLI::App* transgress_cmd =
        app.add_subcommand("transgress", "Edge map of an invariant polynomial");
    transgress_cmd->add_option("--algebra", algebra_path, "Lie algebra JSON file")->required();
    transgress_cmd->add_option("--poly", poly_text, "invariant polynomial in dual coordinates")
        ->required();
    transgress_cmd->add_option("--pivot", pivot_name, "solver pivot order: lex|reverse|shuffled");
    transgress_cmd->add_option("--seed", seed, "seed for the shuffled pivot order");
    transgress_cmd->add_flag("--json", as_json, "JSON report");

    std::string type_name = "A1", cartan_path, mode_name = "noneq";
    int degree_bound = 6;
    CLI::App* wonderful_cmd = app.add_subcommand("wonderful", "Wonderful compactification residues");
    CLI::App* residue_cmd = wonderful_cmd->add_subcommand("residue", "Residue of a primitive class");
    residue_cmd->add_option("--type", type_name, "root system type: A1|A2|B2");
    residue_cmd->add_option("--cartan", cartan_path, "root system JSON file");
    residue_cmd->add_option("--poly", poly_text, "W-invariant polynomial in u1..ul")->required();
    residue_cmd->add_option("--mode", mode_name, "eq|noneq");
    residue_cmd->add_option("--degree-bound", degree_bound, "polynomial degree truncation");
    residue_cmd->add_flag("--json", as_json, "JSON report");

    std::size_t trials = 100, max_dim = 4;
    long corrupt_trial = -1;
    CLI::App* ss_cmd = app.add_subcommand("ss", "Spectral sequence engine");
    CLI::App* verify_cmd = ss_cmd->add_subcommand("verify-cone", "Randomized cone lemma check");
    verify_cmd->add_option("--seed", seed, "base seed");
    verify_cmd->add_option("--trials", trials, "number of random triples");
    verify_cmd->add_option("--max-dim", max_dim, "max dimension per degree");
    verify_cmd->add_option("--corrupt-trial", corrupt_trial,
                           "negative-control hook: corrupt this trial's g map");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (transgress_cmd->parsed())
            return run_transgress(algebra_path, poly_text, pivot_name, seed, as_json);
        if (wonderful_cmd->parsed() && residue_cmd->parsed())
            return run_wonderful(type_name, cartan_path, poly_text, mode_name, degree_bound,
                                 as_json);
        if (ss_cmd->parsed() && verify_cmd->parsed())
            return run_verify_cone(seed, trials, max_dim, corrupt_trial);
        std::cerr << "missing subcommand\n";
        return 2;
    } catch (const cech::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
