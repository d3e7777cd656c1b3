#include <catch2/catch_amalgamated.hpp>

#include "contracta/synthesis.hpp"
#include "contracta/systems.hpp"

using namespace contracta;
using Catch::Approx;

namespace {

DynamicalSystem linear_system(const MatrixXd& A) {
    return {static_cast<int>(A.rows()), "linear",
            [A](const VectorXd& x) -> VectorXd { return A * x; },
            [A](const VectorXd&) { return A; }};
}

std::function<double(const VectorXd&)> zero_potential() {
    return [](const VectorXd&) { return 0.0; };
}

MetricFamily family_from(const MatrixXd& P0, double gamma,
                         std::function<double(const VectorXd&)> v,
                         std::function<double(const VectorXd&)> vdot) {
    MetricFamily fam;
    fam.n = static_cast<int>(P0.rows());
    fam.p0param = VectorXd(MetricFamily::param_count(fam.n));
    Eigen::LLT<MatrixXd> llt(P0);
    MatrixXd L = llt.matrixL();
    int k = 0;
    for (int i = 0; i < fam.n; ++i)
        for (int j = 0; j <= i; ++j, ++k)
            fam.p0param[k] = (i == j) ? std::log(L(i, j)) : L(i, j);
    fam.gamma = gamma;
    fam.potential = std::move(v);
    fam.potentialDot = std::move(vdot);
    return fam;
}

}  // namespace

TEST_CASE("family reconstruction is SPD and trace-normalized") {
    MetricFamily fam;
    fam.n = 3;
    fam.p0param = VectorXd(6);
    fam.p0param << 0.3, -0.7, -0.2, 1.1, 0.4, -0.5;
    fam.gamma = 0.1;
    fam.potential = zero_potential();
    fam.potentialDot = zero_potential();
    MatrixXd P0 = fam.P0();
    REQUIRE(is_spd(P0));
    REQUIRE(P0.trace() == Approx(3.0).margin(1e-10));
}

TEST_CASE("scaling the factor leaves the normalized base point unchanged") {
    MetricFamily fam;
    fam.n = 3;
    fam.p0param = VectorXd(6);
    fam.p0param << 0.2, 0.5, -0.1, -0.3, 0.8, 0.4;
    fam.gamma = 0.0;
    fam.potential = zero_potential();
    fam.potentialDot = zero_potential();

    MetricFamily scaled = fam;
    const double c = 2.7;
    int k = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j, ++k)
            scaled.p0param[k] = (i == j) ? fam.p0param[k] + std::log(c) : fam.p0param[k] * c;
    REQUIRE((fam.P0() - scaled.P0()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("feasibility on the diagonal linear benchmark") {
    auto sys = linear_system(Eigen::Vector3d(-1.0, -2.0, -3.0).asDiagonal());
    auto fam = family_from(MatrixXd::Identity(3, 3), 0.0, zero_potential(), zero_potential());
    Region region = Region::box(Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 1, 1), {2, 2, 2});
    REQUIRE(feasibility(sys, fam, region, FractionalDimension::of(2.5, 3)) ==
            Approx(-9.0).margin(1e-9));
}

TEST_CASE("Rossler: identity metric fails where the reference family certifies") {
    auto ross = rossler_system({0.386, 0.2});
    auto ref = rossler_reference_metric();
    auto self = ross;
    auto v = [self](const VectorXd& u) { return self.v(u); };
    auto vdot = [self](const VectorXd& u) { return self.vdot(u); };
    Region region = ross.y_region(-20.0, 20.0, 0.05);

    auto identity = family_from(MatrixXd::Identity(3, 3), 0.0, v, vdot);
    REQUIRE(feasibility(ross.sys, identity, region, FractionalDimension::of(2.60557, 3)) > 0.0);

    auto paper = family_from(ref.Pstar, ref.tauStar, v, vdot);
    // the printed 8-digit matrix certifies once s clears its sharp threshold
    REQUIRE(feasibility(ross.sys, paper, region, FractionalDimension::of(2.6057, 3)) < 0.0);
    const double at_printed =
        feasibility(ross.sys, paper, region, FractionalDimension::of(2.60557, 3));
    REQUIRE(at_printed > 0.0);
    REQUIRE(at_printed < 5e-6);

    // monotone in s while the pivot root stays negative on the grid
    const double xi62 = feasibility(ross.sys, paper, region, FractionalDimension::of(2.62, 3));
    const double xi61 = feasibility(ross.sys, paper, region, FractionalDimension::of(2.61, 3));
    REQUIRE(xi62 < xi61);
    REQUIRE(xi61 < at_printed);
}

TEST_CASE("bisection floor on an always-feasible system") {
    auto sys = linear_system(Eigen::Vector3d(-1.0, -2.0, -3.0).asDiagonal());
    Region region = Region::box(Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 1, 1), {2, 2, 2});
    SynthesisOptions opts;
    opts.restarts = 2;
    opts.maxEval = 150;
    auto result = minimize_fractional_s(sys, 2, region, zero_potential(), zero_potential(), opts);
    REQUIRE(result.feasible);
    REQUIRE(result.sStar == 0.0);
    REQUIRE(result.worstXi < 0.0);
}

TEST_CASE("bisection brackets the analytic threshold on a saddle benchmark") {
    // eigenvalues (1, -0.5, -3): the best constant metric reaches
    // Xi = 2(1 - 0.5 + s(-3)), so the feasibility threshold is s = 1/6
    auto sys = linear_system(Eigen::Vector3d(1.0, -0.5, -3.0).asDiagonal());
    Region region = Region::box(Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 1, 1), {2, 2, 2});
    SynthesisOptions opts;
    opts.restarts = 3;
    opts.maxEval = 300;
    opts.bisectTol = 1e-2;
    auto result = minimize_fractional_s(sys, 2, region, zero_potential(), zero_potential(), opts);
    REQUIRE(result.feasible);
    REQUIRE(result.sStar >= 1.0 / 6.0 - 1e-9);
    REQUIRE(result.sStar <= 1.0 / 6.0 + 0.02);
    REQUIRE(result.worstXi < 0.0);
    for (size_t i = 1; i < result.trace.size(); ++i)
        REQUIRE(result.trace[i] <= result.trace[i - 1]);
}

TEST_CASE("rigid-body torque flip across the threshold") {
    auto base = rigid_body_system({1.0, 2.0, 3.0, 1.0, 0.0});

    // below: the adapted family with a mid-interval gamma certifies d = 2
    auto low = rigid_body_system({1.0, 2.0, 3.0, 1.0, 0.99 * base.tauBound});
    auto lowself = low;
    auto fam = family_from(low.P0, 0.0859,
                           [lowself](const VectorXd& w) { return lowself.W(w); },
                           [lowself](const VectorXd& w) { return lowself.Wdot(w); });
    Region trap = low.trapping_region(1.05 * low.betaStar, 11);
    const double xi_low = feasibility(low.sys, fam, trap, FractionalDimension::of(2.0, 3));
    REQUIRE(xi_low < 0.0);

    // above: no family member certifies; the equilibrium pins the max
    auto high = rigid_body_system({1.0, 2.0, 3.0, 1.0, 1.01 * base.tauBound});
    VectorXd half = VectorXd::Constant(3, 0.1);
    Region around_eq =
        Region::box(high.equilibrium - half, high.equilibrium + half, {3, 3, 3});
    auto highself = high;
    SynthesisOptions opts;
    opts.restarts = 6;
    opts.maxEval = 300;
    auto attempt = synthesize_at_s(
        high.sys, 2, 0.0, around_eq,
        [highself](const VectorXd& w) { return highself.W(w); },
        [highself](const VectorXd& w) { return highself.Wdot(w); }, opts);
    REQUIRE_FALSE(attempt.feasible);
    REQUIRE(attempt.worstXi >= 4.0 * (high.torqueRatio - 1.0) - 1e-6);
}

TEST_CASE("synthesis is deterministic for a fixed seed") {
    auto sys = linear_system(Eigen::Vector3d(1.0, -0.5, -3.0).asDiagonal());
    Region region = Region::box(Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 1, 1), {2, 2, 2});
    SynthesisOptions opts;
    opts.restarts = 2;
    opts.maxEval = 120;
    opts.seedBase = 42;
    auto a = synthesize_at_s(sys, 2, 0.4, region, zero_potential(), zero_potential(), opts);
    auto b = synthesize_at_s(sys, 2, 0.4, region, zero_potential(), zero_potential(), opts);
    REQUIRE(a.feasible == b.feasible);
    REQUIRE(a.worstXi == b.worstXi);
    REQUIRE(a.params.gamma == b.params.gamma);
    REQUIRE((a.params.p0param - b.params.p0param).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(a.seeds == std::vector<unsigned long>({42, 43}));
}
