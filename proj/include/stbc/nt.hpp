#ifndef STBC_NT_HPP
#define STBC_NT_HPP

#include <cstdint>
#include <vector>

#include "stbc/exact.hpp"

// Desk-scale number theory: multiplicative orders, factorization of prime-m
// cyclotomic polynomials over F_p, Gaussian/Eisenstein primality and
// e*f*g accounting for the relative extensions used by the codes.
namespace stbc::nt {

bool is_prime_u64(std::uint64_t n);

// Least d >= 1 with q^d == 1 (mod n); throws when gcd(q, n) != 1.
std::uint64_t mult_order(std::uint64_t q, std::uint64_t n);

// Dense polynomial over F_p, coeffs[i] = coefficient of X^i.
using Poly = std::vector<std::uint64_t>;

struct SplittingReport {
    unsigned m = 0;
    std::uint64_t p = 0;
    unsigned d = 0;  // common degree of the irreducible factors
    unsigned g = 0;  // number of irreducible factors, d*g = phi(m)
    bool completely_split = false;
    unsigned order_formula_d = 0;  // d from the multiplicative-order route
    std::vector<Poly> factors;     // monic irreducible factors of Phi_m
};

// Factors Phi_m (m an odd prime, p prime, p != m) over F_p two independent
// ways: by the order of p mod m, and by explicit distinct-degree
// factorization; throws if the two disagree.
SplittingReport cyclotomic_factor_degrees(unsigned m, std::uint64_t p);

// Two-case primality criteria on Z[i] / Z[omega] elements. Zero input throws.
bool gaussian_prime_check(const exact::BaseScalar& z);
bool eisenstein_prime_check(const exact::BaseScalar& z);

struct EfgReport {
    unsigned m = 0;
    std::uint64_t p = 0;
    exact::Ring base = exact::Ring::gaussian;
    bool base_splits = false;     // p splits in O_F (otherwise inert)
    unsigned base_f = 0;          // inertia degree of p in O_F
    exact::BaseScalar base_prime; // one prime of O_F above p
    unsigned n = 0;               // relative degree [K:F] = phi(m)
    unsigned rel_f = 0;           // inertia degree of base_prime in O_K
    unsigned rel_g = 0;           // primes of O_K above base_prime
    bool completely_split_rel = false;
    bool rational_completely_split = false;  // p splits completely in K
    SplittingReport cyclotomic;
};

// Composes the splitting of p in the quadratic base ring with the
// cyclotomic factor degrees to decide whether the primes of O_F above p
// split completely in O_K = O_F[zeta_m]. Requires p prime, p != m, and p
// unramified in the base ring (p != 2 Gaussian, p != 3 Eisenstein).
EfgReport efg_report(unsigned m, std::uint64_t p, exact::Ring base);

}  // namespace stbc::nt

#endif
