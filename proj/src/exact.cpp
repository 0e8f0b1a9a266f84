#include "stbc/exact.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace stbc::exact {

namespace {

bool is_odd_prime(unsigned m) {
    if (m < 3 || m % 2 == 0) return false;
    for (unsigned d = 3; d * d <= m; d += 2)
        if (m % d == 0) return false;
    return true;
}

void check_same_ring(const BaseScalar& x, const BaseScalar& y) {
    if (x.ring != y.ring)
        throw std::invalid_argument("BaseScalar ring mismatch: " +
                                    std::string(ring_name(x.ring)) + " vs " +
                                    std::string(ring_name(y.ring)));
}

}  // namespace

const char* ring_name(Ring r) {
    return r == Ring::gaussian ? "gaussian" : "eisenstein";
}

Int BaseScalar::norm_sq() const {
    if (ring == Ring::gaussian) return re * re + im * im;
    return re * re - re * im + im * im;
}

BaseScalar BaseScalar::conj() const {
    if (ring == Ring::gaussian) return {ring, re, -im};
    // conj(omega) = omega^2 = -1 - omega
    return {ring, re - im, -im};
}

std::complex<double> BaseScalar::embed() const {
    double a = static_cast<double>(re);
    double b = static_cast<double>(im);
    if (ring == Ring::gaussian) return {a, b};
    // omega = exp(2*pi*i/3)
    return {a - 0.5 * b, b * std::numbers::sqrt3 / 2.0};
}

std::string BaseScalar::str() const {
    std::ostringstream os;
    os << re;
    if (im != 0) {
        os << (im < 0 ? "-" : "+") << boost::multiprecision::abs(im)
           << (ring == Ring::gaussian ? "i" : "w");
    }
    return os.str();
}

BaseScalar operator+(const BaseScalar& x, const BaseScalar& y) {
    check_same_ring(x, y);
    return {x.ring, x.re + y.re, x.im + y.im};
}

BaseScalar operator-(const BaseScalar& x, const BaseScalar& y) {
    check_same_ring(x, y);
    return {x.ring, x.re - y.re, x.im - y.im};
}

BaseScalar operator-(const BaseScalar& x) { return {x.ring, -x.re, -x.im}; }

BaseScalar operator*(const BaseScalar& x, const BaseScalar& y) {
    check_same_ring(x, y);
    Int ac = x.re * y.re;
    Int bd = x.im * y.im;
    Int cross = x.re * y.im + x.im * y.re;
    if (x.ring == Ring::gaussian) return {x.ring, ac - bd, std::move(cross)};
    // omega^2 = -1 - omega
    return {x.ring, ac - bd, cross - bd};
}

bool operator==(const BaseScalar& x, const BaseScalar& y) {
    return x.ring == y.ring && x.re == y.re && x.im == y.im;
}

CycElement::CycElement(Ring ring, unsigned m) : ring_(ring), m_(m) {
    if (!is_odd_prime(m)) throw std::invalid_argument("cyclotomic order must be an odd prime");
    coeffs_.assign(m - 1, BaseScalar{ring, 0, 0});
}

CycElement::CycElement(Ring ring, unsigned m, std::vector<BaseScalar> coeffs)
    : ring_(ring), m_(m), coeffs_(std::move(coeffs)) {
    if (!is_odd_prime(m)) throw std::invalid_argument("cyclotomic order must be an odd prime");
    if (coeffs_.size() != m - 1)
        throw std::invalid_argument("coefficient vector must have length m-1");
    for (const auto& c : coeffs_)
        if (c.ring != ring) throw std::invalid_argument("coefficient ring mismatch");
}

CycElement CycElement::zero(Ring ring, unsigned m) { return CycElement(ring, m); }

CycElement CycElement::one(Ring ring, unsigned m) {
    CycElement r(ring, m);
    r.coeffs_[0] = BaseScalar{ring, 1, 0};
    return r;
}

CycElement CycElement::root_power(Ring ring, unsigned m, long e) {
    CycElement r(ring, m);
    long red = e % static_cast<long>(m);
    if (red < 0) red += m;
    if (red == static_cast<long>(m) - 1) {
        for (auto& c : r.coeffs_) c = BaseScalar{ring, -1, 0};
    } else {
        r.coeffs_[static_cast<unsigned>(red)] = BaseScalar{ring, 1, 0};
    }
    return r;
}

CycElement CycElement::from_base(unsigned m, const BaseScalar& c) {
    CycElement r(c.ring, m);
    r.coeffs_[0] = c;
    return r;
}

bool CycElement::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycElement::is_base() const {
    for (unsigned j = 1; j < coeffs_.size(); ++j)
        if (!coeffs_[j].is_zero()) return false;
    return true;
}

BaseScalar CycElement::to_base() const {
    if (!is_base())
        throw NotInBaseField("element has a nonzero coefficient above the base field: " + str());
    return coeffs_[0];
}

std::complex<double> CycElement::embed() const {
    std::complex<double> acc{0.0, 0.0};
    for (unsigned j = 0; j < coeffs_.size(); ++j)
        acc += coeffs_[j].embed() * embed_root(m_, j);
    return acc;
}

std::string CycElement::str() const {
    std::ostringstream os;
    os << "(";
    for (unsigned j = 0; j < coeffs_.size(); ++j) {
        if (j) os << ", ";
        os << coeffs_[j].str();
    }
    os << ")";
    return os.str();
}

void CycElement::check_compatible(const CycElement& other) const {
    if (ring_ != other.ring_ || m_ != other.m_)
        throw std::invalid_argument("CycElement ring/order mismatch");
}

CycElement operator+(const CycElement& x, const CycElement& y) {
    x.check_compatible(y);
    CycElement r(x.ring_, x.m_);
    for (unsigned j = 0; j < r.coeffs_.size(); ++j)
        r.coeffs_[j] = x.coeffs_[j] + y.coeffs_[j];
    return r;
}

CycElement operator-(const CycElement& x, const CycElement& y) {
    x.check_compatible(y);
    CycElement r(x.ring_, x.m_);
    for (unsigned j = 0; j < r.coeffs_.size(); ++j)
        r.coeffs_[j] = x.coeffs_[j] - y.coeffs_[j];
    return r;
}

CycElement operator-(const CycElement& x) {
    CycElement r(x.ring_, x.m_);
    for (unsigned j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] = -x.coeffs_[j];
    return r;
}

CycElement operator*(const CycElement& x, const CycElement& y) {
    x.check_compatible(y);
    const unsigned m = x.m_;
    const unsigned n = m - 1;
    // Accumulate with exponents folded mod m (zeta^m = 1), then eliminate
    // the zeta^{m-1} slot via the minimal polynomial.
    std::vector<BaseScalar> acc(m, BaseScalar{x.ring_, 0, 0});
    for (unsigned j = 0; j < n; ++j) {
        if (x.coeffs_[j].is_zero()) continue;
        for (unsigned k = 0; k < n; ++k) {
            if (y.coeffs_[k].is_zero()) continue;
            unsigned e = (j + k) % m;
            acc[e] = acc[e] + x.coeffs_[j] * y.coeffs_[k];
        }
    }
    CycElement r(x.ring_, m);
    for (unsigned j = 0; j < n; ++j) r.coeffs_[j] = acc[j] - acc[n];
    return r;
}

CycElement operator*(const BaseScalar& c, const CycElement& x) {
    CycElement r(x.ring_, x.m_);
    for (unsigned j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] = c * x.coeffs_[j];
    return r;
}

bool operator==(const CycElement& x, const CycElement& y) {
    if (x.ring_ != y.ring_ || x.m_ != y.m_) return false;
    for (unsigned j = 0; j < x.coeffs_.size(); ++j)
        if (!(x.coeffs_[j] == y.coeffs_[j])) return false;
    return true;
}

CycElement apply_tau(const CycElement& x, unsigned k) {
    const unsigned m = x.m();
    if (std::gcd(k, m) != 1)
        throw std::invalid_argument("automorphism exponent must be coprime to m");
    std::vector<BaseScalar> acc(m, BaseScalar{x.ring(), 0, 0});
    for (unsigned j = 0; j < x.degree(); ++j) {
        unsigned e = static_cast<unsigned>((static_cast<unsigned long>(j) * k) % m);
        acc[e] = acc[e] + x.coeff(j);
    }
    std::vector<BaseScalar> out(x.degree(), BaseScalar{x.ring(), 0, 0});
    for (unsigned j = 0; j < x.degree(); ++j) out[j] = acc[j] - acc[m - 1];
    return CycElement(x.ring(), m, std::move(out));
}

CycElement exact_det(const std::vector<CycElement>& matrix, unsigned n) {
    if (n == 0 || matrix.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("exact_det requires a non-empty square matrix");
    const Ring ring = matrix[0].ring();
    const unsigned m = matrix[0].m();
    for (const auto& e : matrix)
        if (e.ring() != ring || e.m() != m)
            throw std::invalid_argument("exact_det requires uniform ring and order");

    // minor[mask] = det of the submatrix on columns 0..popcount(mask)-1 and
    // rows in mask; expansion along the last of those columns.
    const std::size_t total = std::size_t(1) << n;
    std::vector<CycElement> minor(total, CycElement::zero(ring, m));
    minor[0] = CycElement::one(ring, m);
    for (std::size_t mask = 1; mask < total; ++mask) {
        const unsigned col = static_cast<unsigned>(std::popcount(mask)) - 1;
        CycElement acc = CycElement::zero(ring, m);
        unsigned pos = 0;  // row position within the subset
        for (unsigned r = 0; r < n; ++r) {
            if (!(mask & (std::size_t(1) << r))) continue;
            const CycElement& entry = matrix[std::size_t(r) * n + col];
            if (!entry.is_zero()) {
                CycElement term = entry * minor[mask ^ (std::size_t(1) << r)];
                // cofactor sign (-1)^{pos+col} for expansion along the
                // last column of the submatrix
                acc = (((pos + col) & 1u) == 0) ? acc + term : acc - term;
            }
            ++pos;
        }
        minor[mask] = std::move(acc);
    }
    return minor[total - 1];
}

CycElement relative_norm(const CycElement& x, unsigned tau_exp) {
    CycElement acc = x;
    CycElement conj = x;
    const unsigned n = x.degree();
    for (unsigned j = 1; j < n; ++j) {
        conj = apply_tau(conj, tau_exp);
        acc = acc * conj;
    }
    return acc;
}

std::complex<double> embed_root(unsigned m, long e) {
    long red = e % static_cast<long>(m);
    if (red < 0) red += m;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(red) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace stbc::exact
