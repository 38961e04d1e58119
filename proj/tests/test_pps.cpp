// Unit tests for the pseudo-pure-state preparation: layouts, the thermal
// deviation state, symmetric-pair depletion, gradient dephasing keyed on
// weighted coherence order, population redistribution, and verification.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pps.hpp"

using namespace siam;

namespace {

constexpr double kRatio = 0.9407;

double population(const DensityOperator& rho, int idx) { return rho.matrix(idx, idx).real(); }

double max_offdiag(const DensityOperator& rho) {
    double worst = 0.0;
    for (int i = 0; i < rho.matrix.rows(); ++i)
        for (int j = 0; j < rho.matrix.cols(); ++j)
            if (i != j) worst = std::max(worst, std::abs(rho.matrix(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("layouts from species labels") {
    SpinLayout aaaa = SpinLayout::from_label("AAAA");
    REQUIRE(aaaa.n_qubits() == 4);
    for (double w : aaaa.weights) CHECK(std::abs(w - 1.0) <= 1e-15);

    SpinLayout abbb = SpinLayout::from_label("ABBB");
    CHECK(std::abs(abbb.weights[0] - 2.0) <= 1e-15);
    CHECK(std::abs(abbb.weights[1] - 1.0) <= 1e-15);

    SpinLayout mixed = SpinLayout::from_label("FFFHH", kRatio);
    REQUIRE(mixed.n_qubits() == 5);
    CHECK(mixed.dim() == 32);
    for (int k : {0, 1, 2}) CHECK(std::abs(mixed.weights[k] - kRatio) <= 1e-15);
    for (int k : {3, 4}) CHECK(std::abs(mixed.weights[k] - 1.0) <= 1e-15);

    CHECK_THROWS_AS(SpinLayout::from_label("AXBB"), std::invalid_argument);
    CHECK_THROWS_AS(SpinLayout::from_label("A"), std::invalid_argument);
    CHECK_THROWS_AS(SpinLayout::from_label("FFHH", 0.0), std::invalid_argument);
}

TEST_CASE("thermal deviation state") {
    SpinLayout mixed = SpinLayout::from_label("FFFHH", kRatio);
    DensityOperator rho = thermal_deviation(mixed);
    REQUIRE(rho.matrix.rows() == 32);
    CHECK(std::abs(population(rho, 0) - (3.0 * kRatio + 2.0)) <= 1e-12);
    CHECK(std::abs(population(rho, 31) + (3.0 * kRatio + 2.0)) <= 1e-12);
    CHECK(std::abs(rho.matrix.trace()) <= 1e-12);
    CHECK(max_offdiag(rho) <= 1e-15);

    // Complement pairs carry opposite populations.
    for (int s = 0; s < 32; ++s)
        CHECK(std::abs(population(rho, s) + population(rho, 31 ^ s)) <= 1e-12);

    // Equal-weight layouts have vanishing mixed-occupation populations.
    DensityOperator equal = thermal_deviation(SpinLayout::from_label("AAAA"));
    CHECK(std::abs(population(equal, 0b0011)) <= 1e-15);
    CHECK(std::abs(population(equal, 0b0000) - 4.0) <= 1e-15);
}

TEST_CASE("symmetric-pair depletion empties the interior populations") {
    SpinLayout mixed = SpinLayout::from_label("FFFHH", kRatio);
    DensityOperator rho = sp1_deplete(thermal_deviation(mixed), mixed);

    // Pair means are zero, so only the all-zeros/all-ones populations remain.
    for (int s = 1; s < 31; ++s) CHECK(std::abs(population(rho, s)) <= 1e-12);
    CHECK(std::abs(population(rho, 0) - (3.0 * kRatio + 2.0)) <= 1e-12);
    CHECK(std::abs(population(rho, 31) + (3.0 * kRatio + 2.0)) <= 1e-12);
    CHECK(std::abs(rho.matrix.trace()) <= 1e-12);

    // Coherences appear only between complement pairs.
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            if (i != j && j != (31 ^ i)) CHECK(std::abs(rho.matrix(i, j)) <= 1e-12);

    // Unitary stage: trace and Frobenius norm are preserved.
    DensityOperator thermal = thermal_deviation(mixed);
    CHECK(std::abs(rho.matrix.norm() - thermal.matrix.norm()) <= 1e-12);

    DensityOperator crooked = thermal;
    crooked.matrix(0, 1) = 1e-3;
    CHECK_THROWS_AS(sp1_deplete(crooked, mixed), std::invalid_argument);
}

TEST_CASE("weighted coherence order") {
    SpinLayout abbb = SpinLayout::from_label("ABBB");
    SpinLayout aaaa = SpinLayout::from_label("AAAA");

    CHECK(std::abs(weighted_order(0b0011, 0b1100, abbb) - 1.0) <= 1e-15);
    CHECK(std::abs(weighted_order(0b1100, 0b0011, abbb) + 1.0) <= 1e-15);
    CHECK(std::abs(weighted_order(0b0011, 0b1100, aaaa)) <= 1e-15);
    for (int s : {0, 3, 9, 15}) CHECK(weighted_order(s, s, abbb) == 0.0);

    // Antisymmetry on every pair.
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(std::abs(weighted_order(i, j, abbb) + weighted_order(j, i, abbb)) <= 1e-15);
}

TEST_CASE("gradient dephasing removes exactly the ordered coherences") {
    SpinLayout abbb = SpinLayout::from_label("ABBB");
    DensityOperator rho;
    rho.n_qubits = 4;
    rho.matrix = Mat::Zero(16, 16);
    rho.matrix(3, 3) = 0.7;
    rho.matrix(3, 12) = cxd(0.2, 0.1);  // order 1 under ABBB weights
    rho.matrix(12, 3) = cxd(0.2, -0.1);

    DensityOperator cleaned = gradient_dephase(rho, abbb);
    CHECK(std::abs(cleaned.matrix(3, 12)) <= 1e-15);
    CHECK(std::abs(cleaned.matrix(12, 3)) <= 1e-15);
    CHECK(std::abs(cleaned.matrix(3, 3).real() - 0.7) <= 1e-15);

    // The same coherence is order zero under equal weights and survives.
    SpinLayout aaaa = SpinLayout::from_label("AAAA");
    DensityOperator kept = gradient_dephase(rho, aaaa);
    CHECK(std::abs(kept.matrix(3, 12) - cxd(0.2, 0.1)) <= 1e-15);
}

TEST_CASE("redistribution spreads the all-ones population uniformly") {
    SpinLayout mixed = SpinLayout::from_label("FFFHH", kRatio);
    DensityOperator rho;
    rho.n_qubits = 5;
    rho.matrix = Mat::Zero(32, 32);
    rho.matrix(0, 0) = 5.0;
    rho.matrix(31, 31) = 31.0;

    DensityOperator spread = sp2_redistribute(rho, mixed);
    CHECK(std::abs(population(spread, 0) - 5.0) <= 1e-12);
    for (int s = 1; s < 32; ++s) CHECK(std::abs(population(spread, s) - 1.0) <= 1e-12);
    CHECK(max_offdiag(spread) <= 1e-12);

    DensityOperator crooked = rho;
    crooked.matrix(2, 5) = 1e-3;
    CHECK_THROWS_AS(sp2_redistribute(crooked, mixed), std::invalid_argument);
}

TEST_CASE("verification report") {
    DensityOperator good;
    good.n_qubits = 2;
    good.matrix = Mat::Zero(4, 4);
    good.matrix(0, 0) = 2.0;
    for (int s = 1; s < 4; ++s) good.matrix(s, s) = 0.5;
    PpsReport report = verify_pps(good);
    CHECK(report.is_pps);
    CHECK(std::abs(report.background - 0.5) <= 1e-15);
    CHECK(std::abs(report.signal - 1.5) <= 1e-15);
    CHECK(report.max_offdiag <= 1e-15);

    DensityOperator lumpy = good;
    lumpy.matrix(2, 2) = 0.6;
    CHECK_FALSE(verify_pps(lumpy).is_pps);

    DensityOperator coherent = good;
    coherent.matrix(1, 3) = 1e-6;
    CHECK_FALSE(verify_pps(coherent).is_pps);
}

TEST_CASE("full sequence yields a pseudo-pure state on every layout") {
    struct Expectation {
        const char* label;
        double signal;
    };
    // Signal is the all-zeros population scaled by dim/(dim - 1).
    const Expectation cases[] = {
        {"AAAA", 4.0 * 16.0 / 15.0},
        {"ABBB", 5.0 * 16.0 / 15.0},
        {"AABB", 6.0 * 16.0 / 15.0},
        {"FFFHH", (3.0 * kRatio + 2.0) * 32.0 / 31.0},
    };
    for (const Expectation& c : cases) {
        CAPTURE(c.label);
        SpinLayout layout = SpinLayout::from_label(c.label, kRatio);
        DensityOperator rho = run_pps_sequence(layout);
        PpsReport report = verify_pps(rho);
        CHECK(report.is_pps);
        CHECK(std::abs(report.signal - c.signal) <= 1e-10);
        CHECK(std::abs(rho.matrix.trace()) <= 1e-10);
    }
}

TEST_CASE("odd registers leave no order-zero coherences after depletion") {
    for (const char* label : {"ABB", "FFFHH", "AAABBBH"}) {
        CAPTURE(label);
        SpinLayout layout = SpinLayout::from_label(label, kRatio);
        DensityOperator rho = sp1_deplete(thermal_deviation(layout), layout);
        const int dim = layout.dim();
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (i == j) continue;
                if (std::abs(rho.matrix(i, j)) > 1e-12)
                    CHECK(std::abs(weighted_order(i, j, layout)) > 1e-12);
            }
        // So one gradient returns the state to diagonal form.
        CHECK(max_offdiag(gradient_dephase(rho, layout)) <= 1e-12);
    }
}

TEST_CASE("order-zero pair positions stay dark through the whole sequence") {
    // AABB has the complement pairs (0101, 1010) and (0110, 1001) at order
    // zero, but their thermal populations vanish, so no stage ever lights
    // those matrix elements up.
    SpinLayout layout = SpinLayout::from_label("AABB");
    DensityOperator rho = thermal_deviation(layout);
    auto dark = [&](const DensityOperator& r) {
        CHECK(std::abs(r.matrix(0b0101, 0b1010)) <= 1e-14);
        CHECK(std::abs(r.matrix(0b0110, 0b1001)) <= 1e-14);
    };
    CHECK(std::abs(weighted_order(0b0101, 0b1010, layout)) <= 1e-15);
    CHECK(std::abs(population(rho, 0b0101)) <= 1e-15);

    dark(rho);
    rho = sp1_deplete(rho, layout);
    dark(rho);
    rho = gradient_dephase(rho, layout);
    dark(rho);
    rho = sp2_redistribute(rho, layout);
    dark(rho);
    rho = gradient_dephase(rho, layout);
    dark(rho);
}
