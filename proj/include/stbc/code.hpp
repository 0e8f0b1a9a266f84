#ifndef STBC_CODE_HPP
#define STBC_CODE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "stbc/exact.hpp"
#include "stbc/linalg.hpp"

namespace stbc {

enum class ConstellationKind { qam, hex };

const char* constellation_name(ConstellationKind k);

// M-QAM (a+ib) or M-HEX (a+wb) with a,b drawn from sqrt(M)-PAM, M = 4^t.
struct Constellation {
    ConstellationKind kind = ConstellationKind::qam;
    unsigned M = 4;
    std::vector<int> pam;                     // sqrt(M)-PAM levels, ascending
    std::vector<exact::BaseScalar> points;    // all M exact lattice points
    exact::Rational avg_energy;               // E = 2(M-1)/3, exact

    exact::Ring ring() const {
        return kind == ConstellationKind::qam ? exact::Ring::gaussian
                                              : exact::Ring::eisenstein;
    }

    static Constellation make(ConstellationKind kind, unsigned M);
};

// One block of n_t x n_t information symbols; row i = layer, column j = basis.
struct SymbolBlock {
    unsigned nt = 0;
    std::vector<exact::BaseScalar> s;

    SymbolBlock() = default;
    SymbolBlock(exact::Ring ring, unsigned n)
        : nt(n), s(static_cast<std::size_t>(n) * n, exact::BaseScalar{ring, 0, 0}) {}

    exact::BaseScalar& at(unsigned layer, unsigned basis) { return s[layer * nt + basis]; }
    const exact::BaseScalar& at(unsigned layer, unsigned basis) const {
        return s[layer * nt + basis];
    }
    bool is_zero() const;
};

// Full parameter bundle of one CDA-based construction. Basis elements are
// integer-coefficient combinations of powers of zeta_m so external
// definitions are not limited to pure powers.
struct CodeDefinition {
    std::string name;
    unsigned nt = 0;        // antennas = block length = extension degree
    exact::Ring ring = exact::Ring::gaussian;
    unsigned m = 0;         // root-of-unity order
    unsigned tau_exp = 0;   // tau: zeta -> zeta^tau_exp
    exact::BaseScalar gamma;
    std::vector<std::vector<exact::BaseScalar>> basis;  // basis[j][e] = coeff of zeta^e
    exact::Rational lambda; // layer-generator normalizer (R carries 1/sqrt(lambda))
    ConstellationKind constellation = ConstellationKind::qam;

    // The exact path needs the power-basis reduction, available for odd
    // prime m. External codes over composite m use the complex path only.
    bool exact_supported() const;

    // tau_exp^r mod m
    unsigned tau_power(unsigned r) const;
    // embed of tau^r(theta_j)
    cxd basis_embed(unsigned j, unsigned r) const;
    exact::CycElement basis_exact(unsigned j) const;

    void validate() const;  // throws std::invalid_argument on any violation
};

CodeDefinition builtin_code(std::string_view name);  // "C4" or "C6"

CodeDefinition load_code_definition(const std::string& json_text);
CodeDefinition load_code_file(const std::string& path);
std::string code_definition_to_json(const CodeDefinition& code);

// Exact codeword matrix (row-major n_t x n_t), no lambda scaling.
std::vector<exact::CycElement> assemble_exact(const CodeDefinition& code,
                                              const SymbolBlock& s);

// Complex embedding of the codeword matrix, scaled by 1/sqrt(lambda).
ComplexMatrix assemble_complex(const CodeDefinition& code, const SymbolBlock& s);

// Layer generator R[r][c] = embed(tau^r(theta_c)) / sqrt(lambda).
ComplexMatrix layer_generator_R(const CodeDefinition& code);

// D_i = diag(1,..,1,gamma,..,gamma) with i trailing gamma entries.
ComplexMatrix layer_scaler_D(const CodeDefinition& code, unsigned i);

// n_t^2 weight matrices, row-major by (layer, basis).
std::vector<ComplexMatrix> weight_matrices(const CodeDefinition& code);

// Generator matrix: column (i,j) = vec(A_(i,j)).
ComplexMatrix stbc_generator_G(const CodeDefinition& code);

// beta with E(||beta * exact codeword||^2) = T, i.e. 1/sqrt(lambda*n_t*E).
double energy_normalizer_beta(const CodeDefinition& code, double E);
exact::Rational energy_normalizer_beta_sq(const CodeDefinition& code,
                                          const exact::Rational& E);

}  // namespace stbc

#endif
