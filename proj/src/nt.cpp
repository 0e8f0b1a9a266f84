#include "stbc/nt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stbc::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod_u64(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}

// splitmix64, used to make the equal-degree splitting deterministic
struct SplitMix {
    u64 state;
    u64 next() {
        u64 z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + u128(a[i]) * b[j]) % p;
    }
    trim(r);
    return r;
}

// remainder of a modulo monic-normalizable f
Poly poly_mod(Poly a, const Poly& f, u64 p) {
    trim(a);
    const int df = degree(f);
    const u64 lead_inv = powmod_u64(f.back(), p - 2, p);
    while (degree(a) >= df) {
        u64 c = mulmod(a.back(), lead_inv, p);
        int shift = degree(a) - df;
        for (int i = 0; i <= df; ++i) {
            u64 sub = mulmod(c, f[static_cast<std::size_t>(i)], p);
            u64& tgt = a[static_cast<std::size_t>(i + shift)];
            tgt = (tgt + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_divexact(const Poly& a, const Poly& b, u64 p) {
    Poly rem = a;
    trim(rem);
    Poly q(a.size(), 0);
    const int db = degree(b);
    const u64 lead_inv = powmod_u64(b.back(), p - 2, p);
    while (degree(rem) >= db) {
        u64 c = mulmod(rem.back(), lead_inv, p);
        int shift = degree(rem) - db;
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i) {
            u64 sub = mulmod(c, b[static_cast<std::size_t>(i)], p);
            u64& tgt = rem[static_cast<std::size_t>(i + shift)];
            tgt = (tgt + p - sub) % p;
        }
        trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("poly_divexact: nonzero remainder");
    trim(q);
    return q;
}

Poly make_monic(Poly f, u64 p) {
    if (f.empty()) return f;
    u64 inv = powmod_u64(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

Poly poly_powmod(Poly base, exact::Int e, const Poly& f, u64 p) {
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mod(poly_mul(r, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

Poly random_poly(SplitMix& rng, int deg_below, u64 p) {
    Poly r(static_cast<std::size_t>(deg_below), 0);
    for (auto& c : r) c = rng.next() % p;
    trim(r);
    return r;
}

// Cantor-Zassenhaus equal-degree splitting of a squarefree product of
// irreducibles all of degree d.
void equal_degree_factor(const Poly& f, unsigned d, u64 p, SplitMix& rng,
                         std::vector<Poly>& out) {
    if (degree(f) == static_cast<int>(d)) {
        out.push_back(make_monic(f, p));
        return;
    }
    Poly h;
    while (true) {
        Poly r = random_poly(rng, degree(f), p);
        if (degree(r) < 1) continue;
        Poly s;
        if (p == 2) {
            // trace map sum_{i<d} r^(2^i)
            s = poly_mod(r, f, p);
            Poly term = s;
            for (unsigned i = 1; i < d; ++i) {
                term = poly_mod(poly_mul(term, term, p), f, p);
                s = poly_sub(std::move(s), term, p);  // in F_2, sub == add
            }
        } else {
            exact::Int e = (boost::multiprecision::pow(exact::Int(p), d) - 1) / 2;
            s = poly_powmod(r, e, f, p);
            s = poly_sub(std::move(s), Poly{1}, p);
        }
        h = poly_gcd(s, f, p);
        if (degree(h) > 0 && degree(h) < degree(f)) break;
    }
    equal_degree_factor(h, d, p, rng, out);
    equal_degree_factor(poly_divexact(f, h, p), d, p, rng, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 mult_order(u64 q, u64 n) {
    if (n < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
    q %= n;
    if (std::gcd(q, n) != 1)
        throw std::invalid_argument("mult_order: arguments are not coprime");
    u64 d = 1;
    u64 x = q;
    while (x != 1) {
        x = mulmod(x, q, n);
        ++d;
    }
    return d;
}

SplittingReport cyclotomic_factor_degrees(unsigned m, u64 p) {
    if (m < 3 || !is_prime_u64(m)) throw std::invalid_argument("m must be an odd prime");
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (p % m == 0)
        throw std::invalid_argument("p divides m: ramified case unsupported");

    SplittingReport rep;
    rep.m = m;
    rep.p = p;
    rep.order_formula_d = static_cast<unsigned>(mult_order(p % m, m));

    // Phi_m = 1 + X + ... + X^{m-1} for prime m
    Poly phi(m, 1);
    const unsigned n = m - 1;

    // distinct-degree probe: first j with gcd(X^{p^j} - X, Phi_m) != 1
    Poly h{0, 1};  // X
    unsigned d = 0;
    for (unsigned j = 1; j <= n; ++j) {
        h = poly_powmod(h, exact::Int(p), phi, p);
        Poly g = poly_gcd(poly_sub(h, Poly{0, 1}, p), phi, p);
        if (degree(g) > 0) {
            if (degree(g) != static_cast<int>(n))
                throw std::logic_error("cyclotomic factors of unequal degree");
            d = j;
            break;
        }
    }
    if (d == 0) throw std::logic_error("distinct-degree probe found no factor");
    if (d != rep.order_formula_d)
        throw std::logic_error("factorization degree disagrees with the order formula");

    rep.d = d;
    rep.g = n / d;
    rep.completely_split = (d == 1 && rep.g == n);

    SplitMix rng{0x5743424C41420000ull ^ (u64(m) << 32) ^ p};
    equal_degree_factor(make_monic(phi, p), d, p, rng, rep.factors);
    std::sort(rep.factors.begin(), rep.factors.end());
    if (rep.factors.size() != rep.g)
        throw std::logic_error("equal-degree factorization produced wrong count");
    return rep;
}

bool gaussian_prime_check(const exact::BaseScalar& z) {
    if (z.ring != exact::Ring::gaussian)
        throw std::invalid_argument("gaussian_prime_check: wrong ring");
    if (z.is_zero()) throw std::invalid_argument("gaussian_prime_check: zero input");
    const bool re0 = z.re == 0;
    const bool im0 = z.im == 0;
    if (re0 || im0) {
        exact::Int c = boost::multiprecision::abs(re0 ? z.im : z.re);
        if (c > std::numeric_limits<u64>::max()) throw std::invalid_argument("input too large");
        u64 q = c.convert_to<u64>();
        return is_prime_u64(q) && q % 4 == 3;
    }
    exact::Int nrm = z.norm_sq();
    if (nrm > std::numeric_limits<u64>::max()) throw std::invalid_argument("input too large");
    return is_prime_u64(nrm.convert_to<u64>());
}

bool eisenstein_prime_check(const exact::BaseScalar& z) {
    if (z.ring != exact::Ring::eisenstein)
        throw std::invalid_argument("eisenstein_prime_check: wrong ring");
    if (z.is_zero()) throw std::invalid_argument("eisenstein_prime_check: zero input");
    const bool re0 = z.re == 0;
    const bool im0 = z.im == 0;
    if (re0 || im0) {
        exact::Int c = boost::multiprecision::abs(re0 ? z.im : z.re);
        if (c > std::numeric_limits<u64>::max()) throw std::invalid_argument("input too large");
        u64 q = c.convert_to<u64>();
        return is_prime_u64(q) && q % 3 == 2;
    }
    exact::Int nrm = z.norm_sq();
    if (nrm > std::numeric_limits<u64>::max()) throw std::invalid_argument("input too large");
    return is_prime_u64(nrm.convert_to<u64>());
}

namespace {

// Finds z in the base ring with norm p (p splits) via direct search.
exact::BaseScalar find_split_prime(u64 p, exact::Ring ring) {
    for (u64 a = 0; a * a <= 4 * p; ++a) {
        if (ring == exact::Ring::gaussian) {
            u64 aa = a * a;
            if (aa > p) break;
            u64 rem = p - aa;
            u64 b = static_cast<u64>(std::sqrt(static_cast<double>(rem)));
            for (u64 bb = (b > 1 ? b - 1 : 0); bb <= b + 1; ++bb)
                if (bb * bb == rem)
                    return {ring, exact::Int(a), exact::Int(bb)};
        } else {
            // a^2 - a*b + b^2 == p for some integer b
            for (u64 b = 0; b * b <= 4 * p; ++b) {
                exact::Int nrm = exact::Int(a) * a - exact::Int(a) * b + exact::Int(b) * b;
                if (nrm == p) return {ring, exact::Int(a), exact::Int(b)};
            }
        }
    }
    throw std::logic_error("find_split_prime: no representation found");
}

}  // namespace

EfgReport efg_report(unsigned m, u64 p, exact::Ring base) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (p % m == 0) throw std::invalid_argument("p divides m: ramified case unsupported");
    if (base == exact::Ring::gaussian && p == 2)
        throw std::invalid_argument("p = 2 is ramified in Z[i]: unsupported");
    if (base == exact::Ring::eisenstein && p == 3)
        throw std::invalid_argument("p = 3 is ramified in Z[omega]: unsupported");

    EfgReport rep;
    rep.m = m;
    rep.p = p;
    rep.base = base;
    rep.cyclotomic = cyclotomic_factor_degrees(m, p);
    rep.n = m - 1;

    if (base == exact::Ring::gaussian) {
        rep.base_splits = (p % 4 == 1);
    } else {
        rep.base_splits = (p % 3 == 1);
    }
    rep.base_f = rep.base_splits ? 1 : 2;
    rep.base_prime = rep.base_splits ? find_split_prime(p, base)
                                     : exact::BaseScalar{base, exact::Int(p), exact::Int(0)};

    // Inertia degrees are multiplicative in the tower Q < F < K and the
    // compositum K is abelian over Q, so the absolute inertia degree is
    // lcm(order of p in the base quadratic part, order of p mod m).
    unsigned f_abs = static_cast<unsigned>(std::lcm<u64>(rep.base_f, rep.cyclotomic.d));
    rep.rel_f = f_abs / rep.base_f;
    rep.rel_g = rep.n / rep.rel_f;
    rep.completely_split_rel = (rep.rel_f == 1);
    rep.rational_completely_split = (f_abs == 1);
    return rep;
}

}  // namespace stbc::nt
