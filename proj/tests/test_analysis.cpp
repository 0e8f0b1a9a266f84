#include "doctest.h"

#include <cmath>

#include "stbc/analysis.hpp"
#include "stbc/rng.hpp"

using namespace stbc;
using namespace stbc::analysis;
using exact::Int;
using exact::Rational;
using exact::Ring;

TEST_CASE("analytic bounds") {
    auto c4 = builtin_code("C4");
    CHECK(min_det_analytic_bound(c4, Rational(2)) == Rational(1, 4096));
    CHECK(min_det_analytic_bound(c4, Rational(10)) == Rational(1, 2560000));
    auto c6 = builtin_code("C6");
    CHECK(min_det_analytic_bound(c6, Rational(2)) == Rational(1, 34012224));
    CHECK_THROWS_AS(min_det_analytic_bound(c4, Rational(0)), std::invalid_argument);
}

TEST_CASE("support-1 searches certify both codes") {
    auto c4 = builtin_code("C4");
    auto cert4 = min_det_search(c4, Constellation::make(ConstellationKind::qam, 4), 1);
    CHECK(cert4.determinants_evaluated == 128);  // 16 cells x 8 nonzero diffs
    CHECK(cert4.achieved_unscaled == 256);
    CHECK(cert4.achieved == Rational(1, 4096));
    CHECK(cert4.exhaustive);
    CHECK(cert4.certified);

    auto c6 = builtin_code("C6");
    auto cert6 = min_det_search(c6, Constellation::make(ConstellationKind::hex, 4), 1);
    CHECK(cert6.determinants_evaluated == 288);  // 36 cells x 8 nonzero diffs
    CHECK(cert6.achieved_unscaled == 4096);
    CHECK(cert6.achieved == Rational(1, 34012224));
    CHECK(cert6.certified);

    // scaling consistency: normalized = unscaled * beta^(2 n_t), exactly
    Rational beta_sq = energy_normalizer_beta_sq(c4, Rational(2));
    Rational scale = 1;
    for (unsigned i = 0; i < c4.nt; ++i) scale *= beta_sq;
    CHECK(cert4.achieved == Rational(cert4.achieved_unscaled) * scale);

    CHECK_THROWS_AS(min_det_search(c4, Constellation::make(ConstellationKind::qam, 4), 0),
                    std::invalid_argument);
}

TEST_CASE("witness layer can be permuted without changing the minimum") {
    auto c4 = builtin_code("C4");
    auto cert = min_det_search(c4, Constellation::make(ConstellationKind::qam, 4), 1);
    // locate the witness entry
    unsigned wi = 0, wj = 0;
    exact::BaseScalar diff{Ring::gaussian, 0, 0};
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j)
            if (!cert.witness.at(i, j).is_zero()) {
                wi = i;
                wj = j;
                diff = cert.witness.at(i, j);
            }
    (void)wi;
    for (unsigned layer = 0; layer < 4; ++layer) {
        SymbolBlock moved(c4.ring, 4);
        moved.at(layer, wj) = diff;
        Int detsq = exact_det(assemble_exact(c4, moved), 4).to_base().norm_sq();
        CHECK(detsq == cert.achieved_unscaled);
    }
}

TEST_CASE("a tiny budget yields a flagged partial certificate") {
    auto c4 = builtin_code("C4");
    auto cert = min_det_search(c4, Constellation::make(ConstellationKind::qam, 4), 1, 10);
    CHECK(cert.determinants_evaluated == 10);
    CHECK_FALSE(cert.exhaustive);
    CHECK_FALSE(cert.certified);
}

TEST_CASE("stored baseline constants") {
    auto p4 = baseline_min_det("perfect4", Rational(2));
    CHECK(p4.exact());
    CHECK(p4.lo == Rational(1, 18000));  // 1/(1125 * 2^4)

    // Table ratio: (1/256) / (1/1125) = 1125/256
    auto c4 = baseline_min_det("C4", Rational(2));
    CHECK(c4.lo / p4.lo == Rational(1125, 256));

    auto p6 = baseline_min_det("perfect6", Rational(2));
    CHECK_FALSE(p6.exact());
    CHECK(p6.lo < p6.hi);
    auto c6 = baseline_min_det("C6", Rational(2));
    CHECK(c6.lo > p6.hi);  // C6 beats even the upper bound

    CHECK_THROWS_AS(baseline_min_det("golden", Rational(2)), std::invalid_argument);
}

TEST_CASE("shaping reports") {
    auto rep4 = shaping_report(builtin_code("C4"));
    for (double v : rep4.row_norms) CHECK(std::abs(v - 1.0) < 1e-12);
    for (double v : rep4.col_norms) CHECK(std::abs(v - 1.0) < 1e-12);
    // R^H R = (5I - J)/4 for C4, so the residual is sqrt(12/16)
    CHECK(rep4.unitarity_residual == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
    CHECK(rep4.energy_spread < 1e-9);
    for (double v : rep4.per_antenna_energy.data)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep4.satisfies_C31_C32_C4);

    auto rep6 = shaping_report(builtin_code("C6"));
    for (double v : rep6.row_norms) CHECK(std::abs(v - 1.0) < 1e-12);
    for (double v : rep6.col_norms) CHECK(std::abs(v - 1.0) < 1e-12);
    CHECK(rep6.unitarity_residual == doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-9));
    CHECK(rep6.satisfies_C31_C32_C4);
    // the central point: unit row/col norms do not require unitarity
    CHECK(rep6.unitarity_residual > 0.5);
}

TEST_CASE("NVD sampling finds no violations") {
    for (auto name : {"C4", "C6"}) {
        auto code = builtin_code(name);
        auto rep = nvd_sampling_test(code, 500, 50, 12345);
        CHECK(rep.samples == 500);
        CHECK(rep.failures == 0);
    }
    // a0 = 1: |det|^2 is exactly 1
    auto c4 = builtin_code("C4");
    SymbolBlock s(c4.ring, 4);
    s.at(0, 0) = exact::BaseScalar{Ring::gaussian, 1, 0};
    CHECK(exact_det(assemble_exact(c4, s), 4).to_base().norm_sq() == 1);
}

TEST_CASE("norm non-representability") {
    auto c4 = builtin_code("C4");
    auto zeta5 = exact::CycElement::root_power(Ring::gaussian, 5, 1);
    CHECK(relative_norm(zeta5, 2) == exact::CycElement::one(Ring::gaussian, 5));

    auto c6 = builtin_code("C6");
    auto zeta7 = exact::CycElement::root_power(Ring::eisenstein, 7, 1);
    CHECK(relative_norm(zeta7, 3) == exact::CycElement::one(Ring::eisenstein, 7));

    CHECK(norm_nonrepresentability_sample(c4, 500, 20, 777).failures == 0);
    CHECK(norm_nonrepresentability_sample(c6, 500, 20, 777).failures == 0);
}

TEST_CASE("gaussian capacity") {
    CHECK(gaussian_capacity(ComplexMatrix::identity(2), 0.0) == doctest::Approx(0.0));
    ComplexMatrix h1(1, 1);
    h1(0, 0) = 1.0;
    CHECK(gaussian_capacity(h1, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(gaussian_capacity(h1, -1.0), std::invalid_argument);

    PhiloxRng rng(67, 0);
    ComplexMatrix H(2, 2);
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < 2; ++c) H(r, c) = cxd(rng.normal(), rng.normal());
    double prev = 0.0;
    for (double rho : {0.0, 0.5, 1.0, 2.0, 8.0, 32.0}) {
        double cap = gaussian_capacity(H, rho);
        CHECK(cap >= prev - 1e-12);
        prev = cap;
    }
}

TEST_CASE("constellation constrained mutual information, uncoded") {
    ComplexMatrix h1(1, 1);
    h1(0, 0) = 1.0;
    auto qam4 = Constellation::make(ConstellationKind::qam, 4);

    auto hi = cc_mutual_info_mc(h1, nullptr, qam4, 1000.0, 4000, 99);  // 30 dB
    CHECK(std::abs(hi.value - 2.0) < 0.05);

    // per-sample spread is ~log2(e), so 5e4 draws put the standard error
    // near 0.006 and the 0.02 window is a 3-sigma statement
    auto zero = cc_mutual_info_mc(h1, nullptr, qam4, 0.0, 50000, 99);
    CHECK(std::abs(zero.value) < 0.02);
    CHECK(zero.std_error < 0.01);

    // entropy cap and Gaussian-input cap
    for (double rho : {0.5, 2.0, 10.0}) {
        auto est = cc_mutual_info_mc(h1, nullptr, qam4, rho, 3000, 7);
        CHECK(est.value <= 2.0 + 3 * est.std_error);
        CHECK(est.value <= gaussian_capacity(h1, rho) + 3 * est.std_error);
    }

    // random 2x2 instance stays below Gaussian capacity
    PhiloxRng rng(71, 0);
    ComplexMatrix H(2, 2);
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < 2; ++c)
            H(r, c) = cxd(rng.normal() / std::numbers::sqrt2, rng.normal() / std::numbers::sqrt2);
    auto est = cc_mutual_info_mc(H, nullptr, qam4, 4.0, 3000, 11);
    CHECK(est.value <= gaussian_capacity(H, 4.0) + 3 * est.std_error);
    CHECK(est.value <= 4.0 + 3 * est.std_error);

    // enumeration guard: 4-QAM over 16 symbols is out of desk scale
    auto c4 = builtin_code("C4");
    ComplexMatrix H4 = ComplexMatrix::identity(4);
    CHECK_THROWS_AS(cc_mutual_info_mc(H4, &c4, qam4, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("constellation constrained mutual information, coded toy") {
    auto toy = load_code_file(std::string(STBC_DATA_DIR) + "/toy2.json");
    auto qam4 = Constellation::make(ConstellationKind::qam, 4);
    ComplexMatrix H = ComplexMatrix::identity(2);
    auto est = cc_mutual_info_mc(H, &toy, qam4, 8.0, 800, 3);
    CHECK(est.value >= -3 * est.std_error);
    CHECK(est.value <= 4.0 + 3 * est.std_error);  // 2 symbols/use * log2(4)
}
