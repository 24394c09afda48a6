#include "majorder/suite.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "majorder/jsonio.hpp"
#include "majorder/zoo.hpp"

namespace majorder {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

struct KeyValue {
    std::string key;
    std::string raw;
    bool quoted = false;
};

KeyValue parse_key_value(const std::string& line, int line_no) {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected 'key = value'", line_no);
    KeyValue kv;
    kv.key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (kv.key.empty() || value.empty())
        throw ConfigError("empty key or value", line_no);
    if (value.front() == '"') {
        if (value.size() < 2 || value.back() != '"')
            throw ConfigError("unterminated string", line_no);
        kv.raw = value.substr(1, value.size() - 2);
        kv.quoted = true;
    } else {
        kv.raw = value;
    }
    return kv;
}

double to_number(const KeyValue& kv, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(kv.raw, &used);
        if (used != kv.raw.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("value of '" + kv.key + "' is not a number", line_no);
    }
}

void parse_box_range(const std::string& text, CellConfig& cell, int line_no) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw ConfigError("box must be written as LO..HI", line_no);
    try {
        cell.box_lo = std::stod(text.substr(0, dots));
        cell.box_hi = std::stod(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw ConfigError("box bounds are not numbers", line_no);
    }
    if (!(cell.box_lo < cell.box_hi))
        throw ConfigError("box must satisfy LO < HI", line_no);
    cell.has_box = true;
}

} // namespace

SuiteConfig parse_suite_config(const std::string& text) {
    SuiteConfig config;
    enum class Section { None, Suite, Cell } section = Section::None;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line == "[suite]") {
            section = Section::Suite;
            continue;
        }
        if (line == "[[cell]]") {
            section = Section::Cell;
            config.cells.emplace_back();
            continue;
        }
        if (line.front() == '[')
            throw ConfigError("unknown section '" + line + "'", line_no);

        const KeyValue kv = parse_key_value(line, line_no);
        if (section == Section::Suite) {
            if (kv.key == "name") config.name = kv.raw;
            else if (kv.key == "seed") config.seed = static_cast<std::uint64_t>(to_number(kv, line_no));
            else if (kv.key == "instances_per_cell") config.instances_per_cell = static_cast<long>(to_number(kv, line_no));
            else if (kv.key == "tol") config.tol = to_number(kv, line_no);
            else throw ConfigError("unknown suite key '" + kv.key + "'", line_no);
        } else if (section == Section::Cell) {
            CellConfig& cell = config.cells.back();
            if (kv.key == "name") cell.name = kv.raw;
            else if (kv.key == "theorem") cell.theorem = kv.raw;
            else if (kv.key == "function") cell.function = kv.raw;
            else if (kv.key == "modulus") cell.modulus = kv.raw;
            else if (kv.key == "relation") cell.relation = kv.raw;
            else if (kv.key == "weights") cell.weights = kv.raw;
            else if (kv.key == "expect") cell.expect = kv.raw;
            else if (kv.key == "sigma") cell.sigma = to_number(kv, line_no);
            else if (kv.key == "box") parse_box_range(kv.raw, cell, line_no);
            else if (kv.key == "points") cell.points = static_cast<int>(to_number(kv, line_no));
            else if (kv.key == "instances") cell.instances = static_cast<long>(to_number(kv, line_no));
            else if (kv.key == "chain_scale") cell.chain_scale = to_number(kv, line_no);
            else if (kv.key == "deficit_scale") cell.deficit_scale = to_number(kv, line_no);
            else throw ConfigError("unknown cell key '" + kv.key + "'", line_no);
        } else {
            throw ConfigError("key outside of a section", line_no);
        }
    }

    for (std::size_t i = 0; i < config.cells.size(); ++i) {
        CellConfig& cell = config.cells[i];
        if (cell.function.empty())
            throw ConfigError("cell " + std::to_string(i) + " has no function", 0);
        if (cell.name.empty())
            cell.name = cell.theorem + "-" + cell.function + "-" + cell.relation;
        if (cell.expect != "sound" && cell.expect != "violation")
            throw ConfigError("cell '" + cell.name + "': expect must be sound|violation", 0);
    }
    return config;
}

SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open suite config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_suite_config(buffer.str());
}

bool SuiteSummary::all_passed() const {
    for (const auto& c : cells)
        if (!c.cell_passed) return false;
    return true;
}

long SuiteSummary::total_instances() const {
    long t = 0;
    for (const auto& c : cells) t += c.instances;
    return t;
}

namespace {

struct CellRuntime {
    CellConfig cfg;
    FunctionModel f;           // unused for t9
    ScalarFunction scalar;     // t9 only
    bool uses_scalar = false;
    Modulus modulus;
    Relation relation = Relation::Ldown;
    GeneratorConfig gen;
    Box box; // sampling box (function space)
};

CellRuntime prepare_cell(const CellConfig& cell, std::uint64_t suite_seed,
                         std::size_t cell_index) {
    CellRuntime rt;
    rt.cfg = cell;
    rt.modulus = Modulus::parse(cell.modulus);

    if (cell.theorem == "t9") {
        rt.uses_scalar = true;
        // function spec "trace:square:3" or bare scalar "square:3"
        std::string spec = cell.function;
        if (spec.rfind("trace:", 0) == 0) spec = spec.substr(6);
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
            throw Error("t9 cell '" + cell.name + "': function must be SCALAR:M");
        rt.scalar = scalar_by_name(spec.substr(0, colon));
        const int m = std::stoi(spec.substr(colon + 1));
        rt.gen.space = OrderedSpace::loewner(m);
        rt.box = cell.has_box ? Box::cube(1, cell.box_lo, cell.box_hi) : Box::cube(1, 0.05, 2.0);
    } else {
        rt.f = zoo_make(cell.function);
        rt.box = cell.has_box
                     ? Box::cube(rt.f.domain_space.is_loewner() ? 1
                                                                : rt.f.domain_space.ambient_dim(),
                                 cell.box_lo, cell.box_hi)
                     : zoo_default_box(rt.f);
        rt.gen.space = rt.f.domain_space.kind == SpaceKind::OrthantInterior
                           ? OrderedSpace::orthant(rt.f.domain_space.n)
                           : rt.f.domain_space;
    }
    rt.relation = relation_from_name(cell.relation);
    rt.gen.relation = rt.relation;
    rt.gen.n_points = cell.points;
    rt.gen.weight_scheme =
        cell.weights == "dirichlet" ? WeightScheme::RandomDirichlet : WeightScheme::Uniform;
    rt.gen.domain_box = rt.box;
    rt.gen.chain_scale =
        cell.chain_scale > 0.0 ? cell.chain_scale : 0.15 * rt.box.max_width();
    rt.gen.deficit_scale =
        cell.deficit_scale > 0.0 ? cell.deficit_scale : 0.08 * rt.box.max_width();
    rt.gen.seed = suite_seed + cell_index; // informational; substreams rule
    return rt;
}

// One instance of one cell; rng is the (suite seed, cell, instance) stream.
InequalityReport run_cell_instance(const CellRuntime& rt, Rng& rng,
                                   const TolerancePolicy& tol) {
    const std::string& theorem = rt.cfg.theorem;
    const OrderedSpace& space = rt.gen.space;
    if (theorem == "t4" || theorem == "t5" || theorem == "t6") {
        GeneratorConfig gen = rt.gen;
        const GeneratedPair pair = gen_majorized_pair(gen, rng);
        if (theorem == "t4")
            return verify_T4(rt.f, rt.modulus, pair.mu, pair.nu, rt.relation, tol);
        if (theorem == "t5")
            return verify_T5(rt.f, rt.cfg.sigma, pair.mu, pair.nu, rt.relation, tol);
        return verify_T6(rt.f, pair.mu, pair.nu, rt.relation, tol);
    }
    if (theorem == "t7") {
        const JensenInstance inst = gen_jensen_instance(space, rt.box, rng);
        return verify_T7(rt.f, inst.x1, inst.x2, inst.y1, inst.y2, inst.lambda, tol);
    }
    if (theorem == "c1" || theorem == "r9") {
        const ParallelogramVariant variant = theorem == "c1" ? ParallelogramVariant::Equal
                                                             : ParallelogramVariant::WeakSum;
        const ParallelogramInstance inst =
            gen_parallelogram_instance(space, rt.box, rng, variant);
        return verify_parallelogram(rt.f, inst.x1, inst.x2, inst.y1, inst.y2, variant, tol);
    }
    if (theorem == "t8") {
        const auto chain = gen_t8_chain(space, rt.box, rt.cfg.points, rng);
        return verify_T8(rt.f, rt.modulus, chain, tol);
    }
    if (theorem == "t9") {
        const TraceFamilyInstance inst =
            gen_t9_instance(space.n, rt.box, rt.cfg.points, rng);
        return verify_T9(rt.scalar, inst.a, inst.b, space.n, tol);
    }
    if (theorem == "t10a" || theorem == "t10b") {
        const PopoviciuCase which = theorem == "t10a" ? PopoviciuCase::A : PopoviciuCase::B;
        const PopoviciuInstance inst = gen_t10_instance(space, rt.box, which, rng);
        return verify_T10(rt.f, rt.modulus, inst.x, inst.y, inst.z, which, tol);
    }
    throw Error("suite: unknown theorem '" + theorem + "'");
}

} // namespace

SuiteSummary run_suite(const SuiteConfig& config, const std::string& out_dir, int jobs) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream reports(fs::path(out_dir) / "reports.jsonl");
    if (!reports) throw Error("run_suite: cannot write into '" + out_dir + "'");

    const auto t0 = std::chrono::steady_clock::now();
    const TolerancePolicy tol = TolerancePolicy::absolute(config.tol);

    SuiteSummary summary;
    summary.suite_name = config.name;

    for (std::size_t ci = 0; ci < config.cells.size(); ++ci) {
        const CellRuntime rt = prepare_cell(config.cells[ci], config.seed, ci);
        const long instances =
            rt.cfg.instances > 0 ? rt.cfg.instances : config.instances_per_cell;

        CellSummary cs;
        cs.name = rt.cfg.name;
        cs.theorem = rt.cfg.theorem;
        cs.function = rt.cfg.function;
        cs.instances = instances;
        cs.worst_residual = std::numeric_limits<double>::infinity();

        std::vector<std::string> lines(static_cast<std::size_t>(instances));
        std::vector<signed char> outcome(static_cast<std::size_t>(instances), 0);
        std::vector<double> residuals(static_cast<std::size_t>(instances), 0.0);

        auto work = [&](long i) {
            Rng rng(config.seed, ci, static_cast<std::uint64_t>(i));
            Json record;
            record["suite"] = config.name;
            record["cell"] = ci;
            record["cell_name"] = rt.cfg.name;
            record["instance"] = i;
            record["theorem"] = rt.cfg.theorem;
            record["function"] = rt.cfg.function;
            try {
                const InequalityReport rep = run_cell_instance(rt, rng, tol);
                record["report"] = report_to_json(rep);
                outcome[static_cast<std::size_t>(i)] = rep.holds ? 1 : -1;
                residuals[static_cast<std::size_t>(i)] = rep.residual;
            } catch (const Error& e) {
                record["not_applicable"] = e.what();
                outcome[static_cast<std::size_t>(i)] = 0;
                residuals[static_cast<std::size_t>(i)] = 0.0;
            }
            lines[static_cast<std::size_t>(i)] = record.dump();
        };

        if (jobs <= 1) {
            for (long i = 0; i < instances; ++i) work(i);
        } else {
            std::atomic<long> next{0};
            std::vector<std::thread> pool;
            const int n_threads = std::min<long>(jobs, instances);
            pool.reserve(static_cast<std::size_t>(n_threads));
            for (int t = 0; t < n_threads; ++t)
                pool.emplace_back([&]() {
                    for (long i = next.fetch_add(1); i < instances; i = next.fetch_add(1))
                        work(i);
                });
            for (auto& th : pool) th.join();
        }

        for (long i = 0; i < instances; ++i) {
            reports << lines[static_cast<std::size_t>(i)] << '\n';
            if (outcome[static_cast<std::size_t>(i)] == 1) ++cs.passed;
            else if (outcome[static_cast<std::size_t>(i)] == -1) ++cs.violations;
            else ++cs.not_applicable;
            if (outcome[static_cast<std::size_t>(i)] != 0)
                cs.worst_residual =
                    std::min(cs.worst_residual, residuals[static_cast<std::size_t>(i)]);
        }
        cs.cell_passed = rt.cfg.expect == "sound" ? cs.violations == 0 : cs.violations > 0;
        summary.cells.push_back(std::move(cs));
    }

    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ofstream csv(fs::path(out_dir) / "summary.csv");
    csv << summary_csv(summary);
    return summary;
}

std::string summary_csv(const SuiteSummary& summary) {
    std::ostringstream out;
    out << "cell,theorem,function,instances,passed,violations,not_applicable,"
           "worst_residual,cell_passed\n";
    for (const auto& c : summary.cells) {
        out << c.name << ',' << c.theorem << ',' << c.function << ',' << c.instances << ','
            << c.passed << ',' << c.violations << ',' << c.not_applicable << ','
            << c.worst_residual << ',' << (c.cell_passed ? "yes" : "no") << '\n';
    }
    out << "# wall_seconds," << summary.wall_seconds << '\n';
    return out.str();
}

} // namespace majorder
