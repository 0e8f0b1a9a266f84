#ifndef STBC_ANALYSIS_HPP
#define STBC_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "stbc/code.hpp"

namespace stbc::analysis {

// Everything determinant-valued is exact rational; floating point appears
// only in the shaping/capacity reports.

struct MinDetCertificate {
    std::string code_name;
    unsigned M = 0;
    ConstellationKind kind = ConstellationKind::qam;
    exact::Rational avg_energy;

    exact::Rational analytic_bound;   // normalized lower bound
    exact::Rational achieved;         // normalized minimum over the searched set
    exact::Int achieved_unscaled;     // exact |det|^2 before normalization
    SymbolBlock witness;              // difference block achieving the minimum
    unsigned support_limit = 1;
    std::size_t determinants_evaluated = 0;
    bool exhaustive = true;   // search completed within budget
    bool certified = false;   // exhaustive and achieved == analytic_bound

    std::string to_json() const;
};

// (4 / (lambda * n_t * E))^{n_t}: symbol differences are multiples of 2 and
// the unscaled determinant-squared of an integer block is at least 1.
exact::Rational min_det_analytic_bound(const CodeDefinition& code,
                                       const exact::Rational& E);

// Exhaustive |det|^2 minimization over difference blocks with at most
// support_limit nonzero entries, each ranging over the nonzero difference
// constellation. Throws when support_limit == 0.
MinDetCertificate min_det_search(const CodeDefinition& code, const Constellation& constellation,
                                 unsigned support_limit,
                                 std::size_t budget = 2'000'000);

// Table-of-constants for the reference codes this library compares against.
// "perfect4" is exact; "perfect6" is only known as an interval.
struct MinDetInterval {
    exact::Rational lo, hi;  // lo == hi when the value is exact
    bool exact() const { return lo == hi; }
};
MinDetInterval baseline_min_det(std::string_view name, const exact::Rational& E);

struct ShapingReport {
    std::vector<double> row_norms, col_norms;   // of R
    double unitarity_residual = 0.0;            // ||R^H R - I||_F
    RealMatrix per_antenna_energy;              // E|S_rc|^2 per unit symbol energy
    double energy_spread = 0.0;                 // max - min of the above
    bool satisfies_C31_C32_C4 = false;          // at tolerance 1e-9
};
ShapingReport shaping_report(const CodeDefinition& code);

struct SamplingReport {
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::string first_failure;  // description of the lowest failing sample
    bool passed() const { return failures == 0; }
};

// Random nonzero integer symbol blocks: exact |det|^2 >= 1 and the
// determinant reduces to the base ring.
SamplingReport nvd_sampling_test(const CodeDefinition& code, std::size_t n_samples,
                                 long coeff_bound, std::uint64_t seed, unsigned threads = 0);

// Random nonzero a in O_K: the relative norm N(a) differs from gamma^t for
// every t = 1..n_t-1.
SamplingReport norm_nonrepresentability_sample(const CodeDefinition& code,
                                               std::size_t n_samples, long coeff_bound,
                                               std::uint64_t seed, unsigned threads = 0);

// log2 det(I + (rho/n_t) H H^H)
double gaussian_capacity(const ComplexMatrix& H, double rho);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

// Constellation-constrained mutual information, Monte Carlo. Uncoded when
// code == nullptr (model y = sqrt(beta) H s with per-receive-antenna SNR
// rho); with a code the vectorized model through G is used and the result
// carries the 1/T prefactor. Enumeration beyond 10^6 points throws.
McEstimate cc_mutual_info_mc(const ComplexMatrix& H, const CodeDefinition* code,
                             const Constellation& constellation, double rho,
                             std::size_t n_mc, std::uint64_t seed);

}  // namespace stbc::analysis

#endif
