#pragma once

#include <optional>

#include "majorder/measure.hpp"
#include "majorder/rng.hpp"
#include "majorder/verifiers.hpp"

namespace majorder {

enum class WeightScheme { Uniform, RandomDirichlet };

/// Constructive generator configuration. Generation is deficit-telescoping,
/// not rejection sampling: every emitted pair passes its relation checker at
/// tol 1e-10 by construction. For Loewner spaces domain_box is the 1-d
/// spectral window the supports must stay inside.
struct GeneratorConfig {
    std::uint64_t seed = 0;
    OrderedSpace space = OrderedSpace::real_line();
    int n_points = 3;
    Relation relation = Relation::Ldown;
    WeightScheme weight_scheme = WeightScheme::Uniform;
    double chain_scale = 0.5;
    double deficit_scale = 0.25;
    Box domain_box;
};

std::vector<double> gen_weights(const GeneratorConfig& cfg, Rng& rng);

/// Decreasing chain of n_points inside the box: cone increments are drawn,
/// then the whole chain is anchored so it fits. Throws BoxTooSmallError when
/// no anchor works even after shrinking the increments.
std::vector<Point> gen_decreasing_chain(const GeneratorConfig& cfg, Rng& rng);

/// Telescoping construction: given the chain x, weights and cone deficits
/// d_1..d_{N-1} (plus d_N for weak relations), the companion support is
///   y_n = x_n + (d_n - d_{n-1}) / lambda_n,
/// which makes the n-th prefix difference exactly d_n. Exposed so tests can
/// build pinned instances from explicit deficits.
std::vector<Point> support_from_deficits(const OrderedSpace& space,
                                         const std::vector<Point>& chain,
                                         const std::vector<double>& weights,
                                         const std::vector<Point>& deficits);

struct GeneratedPair {
    DiscreteMeasure mu;
    DiscreteMeasure nu;
    std::vector<Point> deficits; // d_1..d_N as used in the construction
};

/// Certified majorized pair for the four measure relations. Retries with
/// halved deficit scale up to 8 times when a constructed point escapes the
/// box, then throws DomainEscapeError.
GeneratedPair gen_majorized_pair(const GeneratorConfig& cfg, Rng& rng);
GeneratedPair gen_majorized_pair(const GeneratorConfig& cfg);

// --- instance generators for the remaining theorem shapes ------------------

struct JensenInstance {
    Point x1, x2, y1, y2;
    double lambda = 0.5;
};
JensenInstance gen_jensen_instance(const OrderedSpace& space, const Box& box, Rng& rng);

struct ParallelogramInstance {
    Point x1, x2, y1, y2;
};
ParallelogramInstance gen_parallelogram_instance(const OrderedSpace& space, const Box& box,
                                                 Rng& rng, ParallelogramVariant variant);

std::vector<Point> gen_t8_chain(const OrderedSpace& space, const Box& box, int n, Rng& rng);

struct TraceFamilyInstance {
    std::vector<Point> a, b;
};
TraceFamilyInstance gen_t9_instance(int m, const Box& spectral_box, int n, Rng& rng);

struct PopoviciuInstance {
    Point x, y, z;
};
PopoviciuInstance gen_t10_instance(const OrderedSpace& space, const Box& box,
                                   PopoviciuCase which, Rng& rng);

// --- counterexample search --------------------------------------------------

/// The two-pair counterexample instance: x1=(3/2,1),
/// x2=(1/2,1) against y1=(2,2), y2=(0,0) with equal weights. It certifies
/// that the isotone-differential hypothesis cannot be dropped.
GeneratedPair necessity_fixture();

struct SearchHit {
    InequalityReport report;
    std::uint64_t instance_index = 0;
};

/// Generates instances under cfg, runs the requested verifier and returns
/// the first report whose residual is below -tol; none when the budget runs
/// out. For the geometric-mean counterexample function and theorem T4 the
/// necessity fixture is injected as instance 0 so the known violation
/// cannot be missed by unlucky seeding.
std::optional<SearchHit> search_counterexample(const FunctionModel& f, const Modulus& w,
                                               TheoremId theorem, const GeneratorConfig& cfg,
                                               std::uint64_t budget,
                                               const TolerancePolicy& tol,
                                               double sigma = 1.0);

} // namespace majorder
