#ifndef STBC_SIM_HPP
#define STBC_SIM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stbc/code.hpp"
#include "stbc/rng.hpp"

namespace stbc::sim {

// i.i.d. circularly symmetric complex Gaussian entries, zero mean, unit
// variance (real/imag each variance 1/2).
ComplexMatrix sample_channel(std::size_t nr, std::size_t nt, PhiloxRng& rng);
ComplexMatrix sample_noise(std::size_t nr, std::size_t T, PhiloxRng& rng);

// Real-valued model of vec(Y) = sqrt(rho) (I_T (x) H) G s + vec(N): maps the
// 2k PAM coordinates (re/im pair per complex symbol, interleaved, with the
// omega skew folded in for HEX) to the realified received-signal mean.
struct RealLatticeModel {
    RealMatrix B;            // 2*nr*T rows, 2*k columns
    std::vector<int> pam;    // per-coordinate alphabet, ascending
    unsigned k = 0;          // complex symbols
    unsigned nr = 0, T = 0;
};

RealLatticeModel build_real_lattice(const CodeDefinition& code, const ComplexMatrix& H,
                                    double rho, const Constellation& constellation);

// Exact ML search over the finite coordinate box: QR plus depth-first
// Schnorr-Euchner enumeration with radius shrinking, first leaf setting the
// radius. Ties in the metric resolve to the lexicographically smallest
// coordinate vector. Throws on a rank-deficient model.
std::vector<int> sphere_decode(const RealLatticeModel& model, const std::vector<double>& y);

// Brute-force argmin with the same tie-break; refuses codebooks beyond 1e6.
std::vector<int> exhaustive_ml_decode(const RealLatticeModel& model,
                                      const std::vector<double>& y);

enum class DecoderKind { sphere, exhaustive };

struct SimConfig {
    CodeDefinition code;
    unsigned M = 4;
    unsigned nr = 1;
    std::vector<double> snr_db;
    std::size_t target_errors = 100;
    std::size_t max_trials = 1'000'000;
    std::uint64_t seed = 0;
    DecoderKind decoder = DecoderKind::sphere;
    unsigned threads = 0;  // 0 = auto (STBC_LAB_THREADS caps either way)

    void validate() const;
};

struct CerPoint {
    double snr_db = 0.0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double cer = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 0.0;
    double measured_energy = 0.0;  // average ||S||^2 / T, should be 1
};

struct CerCurve {
    std::string code_name;
    unsigned M = 4;
    ConstellationKind kind = ConstellationKind::qam;
    unsigned nr = 1;
    std::uint64_t seed = 0;
    std::vector<CerPoint> points;

    std::string to_csv() const;
    std::string to_json() const;
};

// Monte Carlo CER curve. Trials use counter-based substreams keyed by
// (seed, point, trial) and stop at whole chunk boundaries, so the result is
// identical for any worker count. A point ends at min(target error events,
// max trials).
CerCurve run_cer(const SimConfig& config,
                 const std::function<void(const CerPoint&)>& on_point = {});

}  // namespace stbc::sim

#endif
