#include "doctest.h"

#include "stbc/nt.hpp"

using namespace stbc;
using namespace stbc::nt;
using exact::BaseScalar;
using exact::Ring;

namespace {

BaseScalar g(long a, long b) { return {Ring::gaussian, a, b}; }
BaseScalar w(long a, long b) { return {Ring::eisenstein, a, b}; }

// multiply all reported factors back together mod p
Poly product_mod_p(const std::vector<Poly>& factors, std::uint64_t p) {
    Poly acc{1};
    for (const auto& f : factors) {
        Poly r(acc.size() + f.size() - 1, 0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j)
                r[i + j] = (r[i + j] + acc[i] * f[j]) % p;
        acc = std::move(r);
    }
    return acc;
}

}  // namespace

TEST_CASE("multiplicative orders") {
    CHECK(mult_order(769, 5) == 2);  // 769 = 4 mod 5, 4^2 = 16 = 1
    CHECK(mult_order(97, 7) == 2);   // 97 = 6 mod 7, 6^2 = 36 = 1
    CHECK(mult_order(11, 5) == 1);
    CHECK(mult_order(2, 5) == 4);
    CHECK_THROWS_AS(mult_order(10, 5), std::invalid_argument);
}

TEST_CASE("cyclotomic splitting of the appendix primes") {
    auto rep5 = cyclotomic_factor_degrees(5, 769);
    CHECK(rep5.d == 2);
    CHECK(rep5.g == 2);
    CHECK_FALSE(rep5.completely_split);
    CHECK(rep5.order_formula_d == 2);
    CHECK(rep5.factors.size() == 2);
    for (const auto& f : rep5.factors) CHECK(f.size() == 3);  // monic quadratics

    auto rep7 = cyclotomic_factor_degrees(7, 97);
    CHECK(rep7.d == 2);
    CHECK(rep7.g == 3);
    CHECK_FALSE(rep7.completely_split);

    // the factors really multiply back to Phi_m mod p
    for (const auto& rep : {rep5, rep7}) {
        Poly prod = product_mod_p(rep.factors, rep.p);
        CHECK(prod.size() == rep.m);
        for (auto c : prod) CHECK(c == 1);
    }
}

TEST_CASE("completely split case with explicit roots") {
    auto rep = cyclotomic_factor_degrees(5, 11);
    CHECK(rep.d == 1);
    CHECK(rep.g == 4);
    CHECK(rep.completely_split);
    // oracle: scan F_11 for roots of 1+X+X^2+X^3+X^4
    std::vector<std::uint64_t> roots;
    for (std::uint64_t x = 0; x < 11; ++x) {
        std::uint64_t v = (1 + x + x * x + x * x * x + x * x * x * x) % 11;
        if (v == 0) roots.push_back(x);
    }
    CHECK(roots.size() == 4);
    for (const auto& f : rep.factors) {
        REQUIRE(f.size() == 2);
        // factor X + c has root -c
        std::uint64_t root = (11 - f[0]) % 11;
        CHECK(std::find(roots.begin(), roots.end(), root) != roots.end());
    }
}

TEST_CASE("characteristic two splitting") {
    auto rep = cyclotomic_factor_degrees(7, 2);  // ord(2 mod 7) = 3
    CHECK(rep.d == 3);
    CHECK(rep.g == 2);
    Poly prod = product_mod_p(rep.factors, 2);
    CHECK(prod == Poly(7, 1));
}

TEST_CASE("d*g = phi(m) over every unramified prime below 1000") {
    for (unsigned m : {5u, 7u}) {
        for (std::uint64_t p = 2; p < 1000; ++p) {
            if (!is_prime_u64(p) || p == m) continue;
            auto rep = cyclotomic_factor_degrees(m, p);
            CHECK(rep.d * rep.g == m - 1);
            CHECK(rep.d == rep.order_formula_d);
        }
    }
}

TEST_CASE("ramified or invalid inputs are rejected") {
    CHECK_THROWS_AS(cyclotomic_factor_degrees(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(cyclotomic_factor_degrees(5, 8), std::invalid_argument);
    CHECK_THROWS_AS(cyclotomic_factor_degrees(6, 5), std::invalid_argument);
}

TEST_CASE("gaussian primality criterion") {
    CHECK(gaussian_prime_check(g(-25, 12)));
    CHECK(gaussian_prime_check(g(3, 0)));    // 3 = 4n+3
    CHECK(gaussian_prime_check(g(0, -7)));   // unit times 7
    CHECK_FALSE(gaussian_prime_check(g(2, 0)));  // 2 = -i (1+i)^2
    CHECK_FALSE(gaussian_prime_check(g(5, 0)));  // 5 = (2+i)(2-i)
    CHECK(gaussian_prime_check(g(1, 2)));        // norm 5
    CHECK_FALSE(gaussian_prime_check(g(3, 1)));  // norm 10
    CHECK_THROWS_AS(gaussian_prime_check(g(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_prime_check(w(1, 0)), std::invalid_argument);
}

TEST_CASE("eisenstein primality criterion") {
    CHECK(eisenstein_prime_check(w(3, -8)));
    CHECK(eisenstein_prime_check(w(2, 0)));   // 2 = 3n-1
    CHECK(eisenstein_prime_check(w(0, 5)));   // unit times 5
    CHECK_FALSE(eisenstein_prime_check(w(7, 0)));  // 7 = 1 mod 3 splits
    CHECK(eisenstein_prime_check(w(1, -1)));       // norm 3
    CHECK(eisenstein_prime_check(w(3, 1)));        // norm 7
    CHECK_FALSE(eisenstein_prime_check(w(2, 4)));  // norm 12
    CHECK_THROWS_AS(eisenstein_prime_check(w(0, 0)), std::invalid_argument);
}

TEST_CASE("prime check soundness against integer primality") {
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b) {
            if (a == 0 && b == 0) continue;
            BaseScalar z = g(a, b);
            if (gaussian_prime_check(z)) {
                bool axis = (a == 0 || b == 0);
                if (axis) {
                    std::uint64_t q = std::abs(a == 0 ? b : a);
                    CHECK(is_prime_u64(q));
                    CHECK(z.norm_sq() == exact::Int(q) * q);
                } else {
                    CHECK(is_prime_u64(z.norm_sq().convert_to<std::uint64_t>()));
                }
            }
        }
}

TEST_CASE("efg accounting reproduces the appendix conclusions") {
    auto r769 = efg_report(5, 769, Ring::gaussian);
    CHECK(r769.base_splits);  // 769 = 25^2 + 12^2
    CHECK(r769.base_prime.norm_sq() == 769);
    CHECK(r769.rel_f == 2);
    CHECK(r769.rel_g == 2);
    CHECK_FALSE(r769.completely_split_rel);
    CHECK_FALSE(r769.rational_completely_split);

    auto r97 = efg_report(7, 97, Ring::eisenstein);
    CHECK(r97.base_splits);
    CHECK(r97.base_prime.norm_sq() == 97);
    CHECK(r97.rel_f == 2);
    CHECK(r97.rel_g == 3);
    CHECK_FALSE(r97.completely_split_rel);

    // 11 = 3 mod 4 is inert in Z[i] but its prime splits completely in the
    // relative cyclotomic extension
    auto r11 = efg_report(5, 11, Ring::gaussian);
    CHECK_FALSE(r11.base_splits);
    CHECK(r11.base_f == 2);
    CHECK(r11.rel_f == 1);
    CHECK(r11.rel_g == 4);
    CHECK(r11.completely_split_rel);
    CHECK_FALSE(r11.rational_completely_split);

    CHECK_THROWS_AS(efg_report(5, 2, Ring::gaussian), std::invalid_argument);
    CHECK_THROWS_AS(efg_report(7, 3, Ring::eisenstein), std::invalid_argument);
    CHECK_THROWS_AS(efg_report(5, 5, Ring::gaussian), std::invalid_argument);
}

TEST_CASE("e*f*g equals the extension degree") {
    for (std::uint64_t p : {11ull, 13ull, 19ull, 29ull, 97ull, 769ull}) {
        for (unsigned m : {5u, 7u}) {
            for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
                if (ring == Ring::gaussian && p == 2) continue;
                if (ring == Ring::eisenstein && p == 3) continue;
                auto rep = efg_report(m, p, ring);
                CHECK(rep.rel_f * rep.rel_g == rep.n);  // e = 1 unramified
            }
        }
    }
}
