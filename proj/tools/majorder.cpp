// majorder: majorization relations, convexity-class checks and inequality
// verification from the command line. Exit codes: 0 success, 1 verification
// failure / counterexample found where soundness was expected, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "majorder/convex_checks.hpp"
#include "majorder/jsonio.hpp"
#include "majorder/smoothing.hpp"
#include "majorder/suite.hpp"
#include "majorder/zoo.hpp"

namespace {

using namespace majorder;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    Json j;
    in >> j;
    return j;
}

bool parse_box_arg(const std::string& text, double& lo, double& hi) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return false;
    lo = std::stod(text.substr(0, dots));
    hi = std::stod(text.substr(dots + 2));
    return lo < hi;
}

int cmd_check(const std::string& relation, const std::string& input, double tol_value) {
    const Json j = read_json_file(input);
    const TolerancePolicy tol = TolerancePolicy::absolute(tol_value);
    MajorizationVerdict verdict;
    if (relation == "hlp" || relation == "whlp") {
        verdict = check_hlp(j.at("x").get<std::vector<double>>(),
                            j.at("y").get<std::vector<double>>(), relation == "whlp", tol);
    } else {
        const DiscreteMeasure mu = measure_from_json(j.at("mu"));
        const DiscreteMeasure nu = measure_from_json(j.at("nu"));
        verdict = check_relation(relation_from_name(relation), mu, nu, tol);
    }
    std::cout << verdict_to_json(verdict).dump(2) << "\n";
    return verdict.holds ? 0 : 1;
}

InequalityReport dispatch_verify(const std::string& theorem, const FunctionModel& f,
                                 const Modulus& w, double sigma, const Json& inst,
                                 const TolerancePolicy& tol) {
    const OrderedSpace& space = f.domain_space;
    auto point = [&](const char* key) { return point_from_json(space, inst.at(key)); };
    if (theorem == "t4" || theorem == "t5" || theorem == "t6") {
        const DiscreteMeasure mu = measure_from_json(inst.at("mu"));
        const DiscreteMeasure nu = measure_from_json(inst.at("nu"));
        const Relation rel = relation_from_name(inst.value("relation", std::string("ldown")));
        if (theorem == "t4") return verify_T4(f, w, mu, nu, rel, tol);
        if (theorem == "t5") return verify_T5(f, sigma, mu, nu, rel, tol);
        return verify_T6(f, mu, nu, rel, tol);
    }
    if (theorem == "t7")
        return verify_T7(f, point("x1"), point("x2"), point("y1"), point("y2"),
                         inst.value("lambda", 0.5), tol);
    if (theorem == "c1" || theorem == "r9")
        return verify_parallelogram(f, point("x1"), point("x2"), point("y1"), point("y2"),
                                    theorem == "c1" ? ParallelogramVariant::Equal
                                                    : ParallelogramVariant::WeakSum,
                                    tol);
    if (theorem == "t8") {
        std::vector<Point> chain;
        for (const auto& item : inst.at("chain")) chain.push_back(point_from_json(space, item));
        return verify_T8(f, w, chain, tol);
    }
    if (theorem == "t10a" || theorem == "t10b")
        return verify_T10(f, w, point("x"), point("y"), point("z"),
                          theorem == "t10a" ? PopoviciuCase::A : PopoviciuCase::B, tol);
    throw Error("verify: unsupported theorem '" + theorem + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"majorder: majorization preorders and inequality verification"};
    app.require_subcommand(1);

    // check
    std::string check_relation_name = "hlp", check_input;
    double check_tol = 1e-9;
    auto* check = app.add_subcommand("check", "check a majorization relation on an instance file");
    check->add_option("--relation", check_relation_name, "hlp|whlp|ldown|wldown|rup|wrup")
        ->required();
    check->add_option("--input", check_input, "instance JSON file")->required();
    check->add_option("--tol", check_tol, "absolute tolerance");

    // verify
    std::string v_theorem, v_function, v_modulus = "zero", v_instance, v_box_arg, v_relation = "ldown";
    double v_sigma = 1.0, v_tol = 1e-9;
    std::uint64_t v_seed = 0;
    int v_n = 3;
    bool v_generate = false;
    auto* verify = app.add_subcommand("verify", "verify one theorem instance");
    verify->add_option("--theorem", v_theorem, "t4|t5|t6|t7|c1|r9|t8|t9|t10a|t10b")->required();
    verify->add_option("--function", v_function, "zoo name, e.g. neg_entropy:2")->required();
    verify->add_option("--modulus", v_modulus, "zero|quad:A|negquad:B");
    verify->add_option("--sigma", v_sigma, "smoothness constant for t5");
    verify->add_option("--instance", v_instance, "instance JSON file");
    verify->add_flag("--generate", v_generate, "generate the instance instead");
    verify->add_option("--seed", v_seed, "generator seed");
    verify->add_option("--n", v_n, "points per measure when generating");
    verify->add_option("--relation", v_relation, "relation for t4/t5/t6");
    verify->add_option("--box", v_box_arg, "sampling box LO..HI when generating");

    // search
    std::string s_function, s_theorem, s_modulus = "zero", s_box_arg, s_relation = "ldown";
    std::uint64_t s_budget = 10000, s_seed = 0;
    double s_tol = 1e-9, s_sigma = 1.0;
    int s_n = 3;
    auto* search = app.add_subcommand("search", "search for a counterexample");
    search->add_option("--function", s_function)->required();
    search->add_option("--theorem", s_theorem)->required();
    search->add_option("--budget", s_budget);
    search->add_option("--seed", s_seed);
    search->add_option("--modulus", s_modulus);
    search->add_option("--sigma", s_sigma);
    search->add_option("--relation", s_relation);
    search->add_option("--box", s_box_arg, "sampling box LO..HI");
    search->add_option("--n", s_n, "points per measure");
    search->add_option("--tol", s_tol);

    // smooth
    std::string m_function, m_box_arg, m_report;
    double m_epsilon = 0.01, m_bandwidth = 0.05;
    auto* smooth = app.add_subcommand("smooth", "mollify a function and re-check its properties");
    smooth->add_option("--function", m_function)->required();
    smooth->add_option("--epsilon", m_epsilon);
    smooth->add_option("--bandwidth", m_bandwidth);
    smooth->add_option("--box", m_box_arg, "compact box LO..HI")->required();
    smooth->add_option("--report", m_report, "write the JSON report here");

    // suite
    std::string su_config, su_out = "suite-out";
    int su_jobs = 1;
    auto* suite = app.add_subcommand("suite", "run a suite config");
    suite->add_option("--config", su_config)->required();
    suite->add_option("--out", su_out);
    suite->add_option("--jobs", su_jobs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_relation_name, check_input, check_tol);

        if (verify->parsed()) {
            const FunctionModel f = zoo_make(v_function);
            const Modulus w = Modulus::parse(v_modulus);
            const TolerancePolicy tol = TolerancePolicy::absolute(v_tol);
            InequalityReport rep;
            if (v_generate) {
                Box box = zoo_default_box(f);
                double lo, hi;
                if (!v_box_arg.empty()) {
                    if (!parse_box_arg(v_box_arg, lo, hi)) throw Error("bad --box, want LO..HI");
                    box = Box::cube(box.dim(), lo, hi);
                }
                GeneratorConfig gen;
                gen.seed = v_seed;
                gen.space = f.domain_space.kind == SpaceKind::OrthantInterior
                                ? OrderedSpace::orthant(f.domain_space.n)
                                : f.domain_space;
                gen.n_points = v_n;
                gen.relation = relation_from_name(v_relation);
                gen.domain_box = box;
                gen.chain_scale = 0.15 * box.max_width();
                gen.deficit_scale = 0.08 * box.max_width();
                const GeneratedPair pair = gen_majorized_pair(gen);
                if (v_theorem == "t4")
                    rep = verify_T4(f, w, pair.mu, pair.nu, gen.relation, tol);
                else if (v_theorem == "t5")
                    rep = verify_T5(f, v_sigma, pair.mu, pair.nu, gen.relation, tol);
                else if (v_theorem == "t6")
                    rep = verify_T6(f, pair.mu, pair.nu, gen.relation, tol);
                else
                    throw Error("--generate supports t4/t5/t6; pass --instance otherwise");
            } else {
                if (v_instance.empty()) throw Error("verify needs --instance or --generate");
                rep = dispatch_verify(v_theorem, f, w, v_sigma, read_json_file(v_instance), tol);
            }
            std::cout << report_to_json(rep).dump(2) << "\n";
            return rep.holds ? 0 : 1;
        }

        if (search->parsed()) {
            const FunctionModel f = zoo_make(s_function);
            const Modulus w = Modulus::parse(s_modulus);
            Box box = zoo_default_box(f);
            double lo, hi;
            if (!s_box_arg.empty()) {
                if (!parse_box_arg(s_box_arg, lo, hi)) throw Error("bad --box, want LO..HI");
                box = Box::cube(box.dim(), lo, hi);
            }
            GeneratorConfig gen;
            gen.seed = s_seed;
            gen.space = f.domain_space.kind == SpaceKind::OrthantInterior
                            ? OrderedSpace::orthant(f.domain_space.n)
                            : f.domain_space;
            gen.n_points = s_n;
            gen.relation = relation_from_name(s_relation);
            gen.domain_box = box;
            gen.chain_scale = 0.15 * box.max_width();
            gen.deficit_scale = 0.08 * box.max_width();
            TheoremId theorem = TheoremId::T4_Full;
            if (s_theorem == "t4") theorem = TheoremId::T4_Full;
            else if (s_theorem == "t5") theorem = TheoremId::T5_Ldown;
            else if (s_theorem == "t6") theorem = TheoremId::T6;
            else throw Error("search supports t4|t5|t6");
            const auto hit = search_counterexample(f, w, theorem, gen, s_budget,
                                                   TolerancePolicy::absolute(s_tol), s_sigma);
            if (hit) {
                Json j;
                j["found"] = true;
                j["instance_index"] = hit->instance_index;
                j["report"] = report_to_json(hit->report);
                std::cout << j.dump(2) << "\n";
                return 1;
            }
            std::cout << "{\"found\": false}\n";
            return 0;
        }

        if (smooth->parsed()) {
            const FunctionModel f = zoo_make(m_function);
            double lo, hi;
            if (!parse_box_arg(m_box_arg, lo, hi)) throw Error("bad --box, want LO..HI");
            MollifierSpec spec;
            spec.bandwidth = m_bandwidth;
            spec.epsilon = m_epsilon;
            spec.box = Box::cube(f.domain_space.ambient_dim(), lo, hi);
            const FunctionModel g = mollify(f, spec);

            const TolerancePolicy tol = TolerancePolicy::absolute(1e-10);
            SamplePlan plan{spec.box, 20240501, 1e-3};
            Json j;
            j["function"] = m_function;
            j["epsilon"] = m_epsilon;
            j["bandwidth"] = m_bandwidth;
            j["two_box_monotone"] =
                class_verdict_to_json(check_2box_monotone(g, plan, 400, tol));
            if (m_epsilon > 0.0)
                j["strong_convexity"] = class_verdict_to_json(check_omega_convex(
                    g, Modulus::quadratic(2.0 * m_epsilon), plan, 400, tol));
            j["uniform_error_vs_shift"] =
                uniform_error(quadratic_shift(f, m_epsilon), g, spec.box, 21);
            std::cout << j.dump(2) << "\n";
            if (!m_report.empty()) {
                std::ofstream out(m_report);
                out << j.dump(2) << "\n";
            }
            return 0;
        }

        if (suite->parsed()) {
            const SuiteConfig config = load_suite_config(su_config);
            const SuiteSummary summary = run_suite(config, su_out, su_jobs);
            std::cout << summary_csv(summary);
            return summary.all_passed() ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error (line " << e.line << "): " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
