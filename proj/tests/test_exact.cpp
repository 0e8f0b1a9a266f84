#include "doctest.h"

#include <cmath>
#include <complex>

#include "stbc/exact.hpp"
#include "stbc/rng.hpp"

using namespace stbc;
using namespace stbc::exact;

namespace {

BaseScalar g(long a, long b) { return {Ring::gaussian, a, b}; }
BaseScalar w(long a, long b) { return {Ring::eisenstein, a, b}; }

BaseScalar random_scalar(PhiloxRng& rng, Ring ring, long bound) {
    long span = 2 * bound + 1;
    return {ring, long(rng.below(std::uint32_t(span))) - bound,
            long(rng.below(std::uint32_t(span))) - bound};
}

CycElement random_cyc(PhiloxRng& rng, Ring ring, unsigned m, long bound) {
    std::vector<BaseScalar> c(m - 1, BaseScalar{ring, 0, 0});
    for (auto& v : c) v = random_scalar(rng, ring, bound);
    return CycElement(ring, m, std::move(c));
}

// independent oracle: determinant of the embedded complex matrix via
// Gaussian elimination
std::complex<double> complex_det(std::vector<std::complex<double>> a, unsigned n) {
    std::complex<double> det{1.0, 0.0};
    for (unsigned k = 0; k < n; ++k) {
        unsigned piv = k;
        for (unsigned r = k + 1; r < n; ++r)
            if (std::abs(a[r * n + k]) > std::abs(a[piv * n + k])) piv = r;
        if (std::abs(a[piv * n + k]) == 0.0) return {0.0, 0.0};
        if (piv != k) {
            for (unsigned c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
            det = -det;
        }
        det *= a[k * n + k];
        for (unsigned r = k + 1; r < n; ++r) {
            auto f = a[r * n + k] / a[k * n + k];
            for (unsigned c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
        }
    }
    return det;
}

}  // namespace

TEST_CASE("base scalar products") {
    CHECK(g(1, 1) * g(1, -1) == g(2, 0));
    // conjugate product equals the norm form
    CHECK(w(3, -8) * w(3, -8).conj() == w(97, 0));
    CHECK(w(3, -8).norm_sq() == 97);
    CHECK(g(-25, 12).norm_sq() == 769);
    CHECK_THROWS_AS(g(1, 0) * w(1, 0), std::invalid_argument);
}

TEST_CASE("nonzero norms are at least one") {
    PhiloxRng rng(17, 0);
    for (int i = 0; i < 2000; ++i) {
        for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
            BaseScalar z = random_scalar(rng, ring, 100);
            if (z.is_zero()) continue;
            CHECK(z.norm_sq() >= 1);
        }
    }
}

TEST_CASE("root powers multiply modulo m") {
    auto z = [](long e) { return CycElement::root_power(Ring::gaussian, 5, e); };
    CHECK(z(2) * z(3) == CycElement::one(Ring::gaussian, 5));
    CHECK(z(3) * z(3) == z(1));
    // zeta^4 = -1 - zeta - zeta^2 - zeta^3
    CycElement reduced = z(1) * z(3);
    for (unsigned j = 0; j < 4; ++j) CHECK(reduced.coeff(j) == g(-1, 0));
    // numeric cross-check of the reduction rule
    auto lhs = (z(1) * z(3)).embed();
    auto rhs = embed_root(5, 4);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("ring axioms on random triples") {
    PhiloxRng rng(23, 0);
    for (int i = 0; i < 10000; ++i) {
        Ring ring = (i % 2 == 0) ? Ring::gaussian : Ring::eisenstein;
        unsigned m = (i % 2 == 0) ? 5 : 7;
        auto x = random_cyc(rng, ring, m, 100);
        auto y = random_cyc(rng, ring, m, 100);
        auto z = random_cyc(rng, ring, m, 100);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
    }
}

TEST_CASE("automorphism basics") {
    auto zeta = CycElement::root_power(Ring::gaussian, 5, 1);
    CHECK(apply_tau(zeta, 2) == CycElement::root_power(Ring::gaussian, 5, 2));

    CycElement base = CycElement::from_base(5, g(7, -3));
    CHECK(apply_tau(base, 2) == base);

    CHECK_THROWS_AS(apply_tau(zeta, 5), std::invalid_argument);
}

TEST_CASE("tau has order n and is a ring homomorphism") {
    PhiloxRng rng(29, 0);
    for (int i = 0; i < 10000; ++i) {
        Ring ring = (i % 2 == 0) ? Ring::gaussian : Ring::eisenstein;
        unsigned m = (i % 2 == 0) ? 5 : 7;
        unsigned k = (i % 2 == 0) ? 2 : 3;
        auto x = random_cyc(rng, ring, m, 50);
        auto it = x;
        for (unsigned j = 0; j < m - 1; ++j) it = apply_tau(it, k);
        CHECK(it == x);
        if (i < 2000) {
            auto y = random_cyc(rng, ring, m, 50);
            CHECK(apply_tau(x * y, k) == apply_tau(x, k) * apply_tau(y, k));
            CHECK(apply_tau(x + y, k) == apply_tau(x, k) + apply_tau(y, k));
        }
    }
}

TEST_CASE("embedding values") {
    CHECK(std::abs(CycElement::one(Ring::gaussian, 5).embed() - std::complex<double>(1, 0)) <
          1e-12);
    // zeta5 + zeta5^-1 = (-1+sqrt(5))/2
    auto v = CycElement::root_power(Ring::gaussian, 5, 1) +
             CycElement::root_power(Ring::gaussian, 5, 4);
    CHECK(v.embed().real() == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
    CHECK(v.embed().imag() == doctest::Approx(0.0).epsilon(1e-12));

    CycElement sum7 = CycElement::zero(Ring::eisenstein, 7);
    for (long e = 1; e <= 6; ++e)
        sum7 = sum7 + CycElement::root_power(Ring::eisenstein, 7, e);
    CHECK(std::abs(sum7.embed() - std::complex<double>(-1, 0)) < 1e-12);
}

TEST_CASE("embedding is a ring homomorphism within tolerance") {
    PhiloxRng rng(31, 0);
    for (int i = 0; i < 3000; ++i) {
        Ring ring = (i % 2 == 0) ? Ring::gaussian : Ring::eisenstein;
        unsigned m = (i % 2 == 0) ? 5 : 7;
        auto x = random_cyc(rng, ring, m, 100);
        auto y = random_cyc(rng, ring, m, 100);
        auto lhs = (x * y).embed();
        auto rhs = x.embed() * y.embed();
        double scale = 1.0 + std::abs(x.embed()) * std::abs(y.embed());
        CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
    }
}

TEST_CASE("exact determinants of diagonal matrices") {
    auto id = [&](unsigned n, const CycElement& v) {
        std::vector<CycElement> mtx(n * n, CycElement::zero(Ring::gaussian, 5));
        for (unsigned i = 0; i < n; ++i) mtx[i * n + i] = v;
        return mtx;
    };
    CHECK(exact_det(id(4, CycElement::one(Ring::gaussian, 5)), 4) ==
          CycElement::one(Ring::gaussian, 5));
    CHECK(exact_det(id(4, CycElement::from_base(5, g(2, 0))), 4) ==
          CycElement::from_base(5, g(16, 0)));

    // diag(zeta, tau(zeta), tau^2(zeta), tau^3(zeta)) has determinant
    // N(zeta5) = zeta5^{1+2+4+3} = 1
    std::vector<CycElement> mtx(16, CycElement::zero(Ring::gaussian, 5));
    unsigned k = 1;
    for (unsigned i = 0; i < 4; ++i) {
        mtx[i * 4 + i] = CycElement::root_power(Ring::gaussian, 5, k);
        k = (k * 2) % 5;
    }
    auto det = exact_det(mtx, 4);
    CHECK(det == CycElement::one(Ring::gaussian, 5));
    // cross-check through the complex embedding
    std::vector<std::complex<double>> cm(16);
    for (unsigned i = 0; i < 16; ++i) cm[i] = mtx[i].embed();
    CHECK(std::abs(complex_det(cm, 4) - det.embed()) < 1e-9);
}

TEST_CASE("exact determinant matches the complex oracle on random matrices") {
    PhiloxRng rng(37, 0);
    for (int i = 0; i < 60; ++i) {
        Ring ring = (i % 2 == 0) ? Ring::gaussian : Ring::eisenstein;
        unsigned m = (i % 2 == 0) ? 5 : 7;
        unsigned n = (i % 2 == 0) ? 4 : 6;
        std::vector<CycElement> mtx;
        std::vector<std::complex<double>> cm;
        for (unsigned j = 0; j < n * n; ++j) {
            mtx.push_back(random_cyc(rng, ring, m, 3));
            cm.push_back(mtx.back().embed());
        }
        auto det = exact_det(mtx, n).embed();
        auto oracle = complex_det(cm, n);
        double scale = std::max(1.0, std::abs(oracle));
        CHECK(std::abs(det - oracle) <= 1e-6 * scale);
    }
}

TEST_CASE("reduction to the base ring") {
    CycElement v = CycElement::from_base(5, g(5, 0));
    CHECK(v.to_base() == g(5, 0));

    CycElement bad = CycElement::root_power(Ring::gaussian, 5, 1);
    CHECK_THROWS_AS(bad.to_base(), NotInBaseField);
}

TEST_CASE("determinant rejects malformed input") {
    std::vector<CycElement> mtx(6, CycElement::zero(Ring::gaussian, 5));
    CHECK_THROWS_AS(exact_det(mtx, 2), std::invalid_argument);  // 6 != 2*2
    CHECK_THROWS_AS(CycElement(Ring::gaussian, 4), std::invalid_argument);
    CHECK_THROWS_AS(CycElement(Ring::gaussian, 9), std::invalid_argument);
}
