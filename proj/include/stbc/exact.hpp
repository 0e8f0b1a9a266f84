#ifndef STBC_EXACT_HPP
#define STBC_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic in Z[i], Z[omega] and the relative cyclotomic rings
// Z[i, zeta_m] / Z[omega, zeta_m] for prime m, in the power basis
// {1, zeta_m, ..., zeta_m^{m-2}}. All values are immutable; operations are
// pure functions and safe to call from any thread.
namespace stbc::exact {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Ring { gaussian, eisenstein };

const char* ring_name(Ring r);

struct NotInBaseField : std::runtime_error {
    explicit NotInBaseField(const std::string& what) : std::runtime_error(what) {}
};

// a + b*i (gaussian) or a + b*omega (eisenstein), arbitrary-precision parts.
struct BaseScalar {
    Ring ring = Ring::gaussian;
    Int re;  // coefficient of 1
    Int im;  // coefficient of i or omega

    BaseScalar() = default;
    BaseScalar(Ring r, Int a, Int b) : ring(r), re(std::move(a)), im(std::move(b)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    // |z|^2 as an exact integer: a^2+b^2 (gaussian), a^2-ab+b^2 (eisenstein).
    Int norm_sq() const;

    // Complex conjugate, stays in the same ring.
    BaseScalar conj() const;

    std::complex<double> embed() const;
    std::string str() const;
};

BaseScalar operator+(const BaseScalar& x, const BaseScalar& y);
BaseScalar operator-(const BaseScalar& x, const BaseScalar& y);
BaseScalar operator-(const BaseScalar& x);
BaseScalar operator*(const BaseScalar& x, const BaseScalar& y);
bool operator==(const BaseScalar& x, const BaseScalar& y);

// Element of the degree-(m-1) cyclotomic extension over the base ring,
// held as coefficients over the power basis {zeta_m^0 .. zeta_m^{m-2}}.
// m must be an odd prime; the reduction rule after every product is
// zeta^{m-1} = -(1 + zeta + ... + zeta^{m-2}).
class CycElement {
  public:
    CycElement() = default;
    CycElement(Ring ring, unsigned m);
    CycElement(Ring ring, unsigned m, std::vector<BaseScalar> coeffs);

    static CycElement zero(Ring ring, unsigned m);
    static CycElement one(Ring ring, unsigned m);
    // zeta_m^e reduced to the power basis (any integer exponent).
    static CycElement root_power(Ring ring, unsigned m, long e);
    static CycElement from_base(unsigned m, const BaseScalar& c);

    Ring ring() const { return ring_; }
    unsigned m() const { return m_; }
    unsigned degree() const { return m_ - 1; }
    const std::vector<BaseScalar>& coeffs() const { return coeffs_; }
    const BaseScalar& coeff(unsigned j) const { return coeffs_[j]; }

    bool is_zero() const;
    // True when all power-basis coefficients above index 0 vanish.
    bool is_base() const;
    // coeffs[0] when is_base(); otherwise throws NotInBaseField.
    BaseScalar to_base() const;

    std::complex<double> embed() const;
    std::string str() const;

    friend CycElement operator+(const CycElement& x, const CycElement& y);
    friend CycElement operator-(const CycElement& x, const CycElement& y);
    friend CycElement operator-(const CycElement& x);
    friend CycElement operator*(const CycElement& x, const CycElement& y);
    friend CycElement operator*(const BaseScalar& c, const CycElement& x);
    friend bool operator==(const CycElement& x, const CycElement& y);

  private:
    void check_compatible(const CycElement& other) const;

    Ring ring_ = Ring::gaussian;
    unsigned m_ = 5;
    std::vector<BaseScalar> coeffs_;
};

// Galois automorphism zeta_m -> zeta_m^k; k must be coprime to m.
// Base-ring coefficients are fixed.
CycElement apply_tau(const CycElement& x, unsigned k);

// Exact determinant of a square matrix of CycElement (row-major), via
// cofactor expansion over row subsets. No floating point is involved.
CycElement exact_det(const std::vector<CycElement>& matrix, unsigned n);

// Relative norm N(a) = prod_{j=0}^{n-1} tau^j(a) with tau: zeta -> zeta^k.
CycElement relative_norm(const CycElement& x, unsigned tau_exp);

std::complex<double> embed_root(unsigned m, long e);

}  // namespace stbc::exact

#endif
