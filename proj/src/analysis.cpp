#include "stbc/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "stbc/rng.hpp"
#include "stbc/threads.hpp"

namespace stbc::analysis {

using exact::BaseScalar;
using exact::CycElement;
using exact::Int;
using exact::Rational;

namespace {

Rational rational_pow(Rational base, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

Rational min_det_analytic_bound(const CodeDefinition& code, const Rational& E) {
    if (E <= 0) throw std::invalid_argument("average energy must be positive");
    if (code.gamma.norm_sq() != 1)
        throw std::invalid_argument("analytic bound requires |gamma| = 1 with gamma integral");
    return rational_pow(Rational(4) / (code.lambda * code.nt * E), code.nt);
}

std::string MinDetCertificate::to_json() const {
    nlohmann::json j;
    j["code"] = code_name;
    j["constellation"] = {{"kind", constellation_name(kind)},
                          {"M", M},
                          {"avg_energy", rational_str(avg_energy)}};
    j["analytic_bound"] = rational_str(analytic_bound);
    j["achieved"] = rational_str(achieved);
    j["achieved_value"] = achieved.convert_to<double>();
    j["achieved_unscaled_detsq"] = achieved_unscaled.str();
    j["support_limit"] = support_limit;
    j["determinants_evaluated"] = determinants_evaluated;
    j["exhaustive"] = exhaustive;
    j["certified"] = certified;
    nlohmann::json w = nlohmann::json::array();
    for (unsigned i = 0; i < witness.nt; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (unsigned jj = 0; jj < witness.nt; ++jj) row.push_back(witness.at(i, jj).str());
        w.push_back(std::move(row));
    }
    j["witness"] = std::move(w);
    j["search_scope"] = "difference blocks with support <= " + std::to_string(support_limit);
    return j.dump(2);
}

MinDetCertificate min_det_search(const CodeDefinition& code, const Constellation& constellation,
                                 unsigned support_limit, std::size_t budget) {
    if (support_limit == 0)
        throw std::invalid_argument("min_det_search: support limit must be >= 1");
    if (constellation.ring() != code.ring)
        throw std::invalid_argument("min_det_search: constellation ring mismatch");

    // nonzero Minkowski differences of the constellation
    std::set<std::pair<long long, long long>> seen;
    std::vector<BaseScalar> diffs;
    for (const auto& p : constellation.points)
        for (const auto& q : constellation.points) {
            BaseScalar d = p - q;
            if (d.is_zero()) continue;
            auto key = std::make_pair(d.re.convert_to<long long>(), d.im.convert_to<long long>());
            if (seen.insert(key).second) diffs.push_back(d);
        }

    MinDetCertificate cert;
    cert.code_name = code.name;
    cert.M = constellation.M;
    cert.kind = constellation.kind;
    cert.avg_energy = constellation.avg_energy;
    cert.analytic_bound = min_det_analytic_bound(code, constellation.avg_energy);
    cert.support_limit = support_limit;
    cert.witness = SymbolBlock(code.ring, code.nt);

    const unsigned cells = code.nt * code.nt;
    bool have_min = false;
    Int best;
    SymbolBlock block(code.ring, code.nt);

    std::vector<unsigned> positions;
    bool budget_hit = false;

    auto evaluate = [&]() {
        if (cert.determinants_evaluated >= budget) {
            budget_hit = true;
            return;
        }
        ++cert.determinants_evaluated;
        auto matrix = assemble_exact(code, block);
        Int detsq = exact_det(matrix, code.nt).to_base().norm_sq();
        if (!have_min || detsq < best) {
            have_min = true;
            best = detsq;
            cert.witness = block;
        }
    };

    // choose `size` cells, then sweep every assignment of nonzero diffs
    auto assign = [&](auto&& self, std::size_t pos_idx) -> void {
        if (budget_hit) return;
        if (pos_idx == positions.size()) {
            evaluate();
            return;
        }
        unsigned cell = positions[pos_idx];
        for (const auto& d : diffs) {
            block.s[cell] = d;
            self(self, pos_idx + 1);
            if (budget_hit) break;
        }
        block.s[cell] = BaseScalar{code.ring, 0, 0};
    };
    auto choose = [&](auto&& self, unsigned start, unsigned remaining) -> void {
        if (budget_hit) return;
        if (remaining == 0) {
            assign(assign, 0);
            return;
        }
        for (unsigned c = start; c + remaining <= cells; ++c) {
            positions.push_back(c);
            self(self, c + 1, remaining - 1);
            positions.pop_back();
            if (budget_hit) break;
        }
    };
    for (unsigned size = 1; size <= support_limit && !budget_hit; ++size)
        choose(choose, 0, size);

    cert.exhaustive = !budget_hit;
    cert.achieved_unscaled = best;
    cert.achieved =
        Rational(best) * rational_pow(energy_normalizer_beta_sq(code, constellation.avg_energy),
                                      code.nt);
    cert.certified = cert.exhaustive && cert.achieved == cert.analytic_bound;
    return cert;
}

MinDetInterval baseline_min_det(std::string_view name, const Rational& E) {
    if (E <= 0) throw std::invalid_argument("average energy must be positive");
    auto pow_int = [](Int b, unsigned e) {
        Int r = 1;
        for (unsigned i = 0; i < e; ++i) r *= b;
        return r;
    };
    if (name == "perfect4") {
        Rational v = Rational(1) / (Rational(1125) * rational_pow(E, 4));
        return {v, v};
    }
    if (name == "perfect6") {
        Rational lo = Rational(1) / (Rational(pow_int(3, 6) * pow_int(7, 5)) * rational_pow(E, 6));
        Rational hi = Rational(1) / (Rational(pow_int(3, 6) * pow_int(7, 4)) * rational_pow(E, 6));
        return {lo, hi};
    }
    if (name == "C4") {
        Rational v = Rational(1) / (Rational(256) * rational_pow(E, 4));
        return {v, v};
    }
    if (name == "C6") {
        Rational v = Rational(1) / (Rational(pow_int(3, 12)) * rational_pow(E, 6));
        return {v, v};
    }
    throw std::invalid_argument("no stored minimum determinant for \"" + std::string(name) +
                                "\"");
}

ShapingReport shaping_report(const CodeDefinition& code) {
    ShapingReport rep;
    const unsigned n = code.nt;
    ComplexMatrix R = layer_generator_R(code);

    rep.row_norms.resize(n);
    rep.col_norms.resize(n);
    for (unsigned r = 0; r < n; ++r) {
        double s = 0;
        for (unsigned c = 0; c < n; ++c) s += std::norm(R(r, c));
        rep.row_norms[r] = std::sqrt(s);
    }
    for (unsigned c = 0; c < n; ++c) {
        double s = 0;
        for (unsigned r = 0; r < n; ++r) s += std::norm(R(r, c));
        rep.col_norms[c] = std::sqrt(s);
    }
    rep.unitarity_residual = (R.adjoint() * R - ComplexMatrix::identity(n)).frobenius_norm();

    rep.per_antenna_energy = RealMatrix(n, n);
    for (const auto& A : weight_matrices(code))
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < n; ++c) rep.per_antenna_energy.at(r, c) += std::norm(A(r, c));
    double lo = rep.per_antenna_energy.at(0, 0), hi = lo;
    for (double v : rep.per_antenna_energy.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.energy_spread = hi - lo;

    constexpr double tol = 1e-9;
    bool ok = rep.energy_spread <= tol;
    for (double v : rep.row_norms) ok = ok && std::abs(v - 1.0) <= tol;
    for (double v : rep.col_norms) ok = ok && std::abs(v - 1.0) <= tol;
    rep.satisfies_C31_C32_C4 = ok;
    return rep;
}

namespace {

BaseScalar random_scalar(PhiloxRng& rng, exact::Ring ring, long bound) {
    const std::uint32_t span = static_cast<std::uint32_t>(2 * bound + 1);
    long re = static_cast<long>(rng.below(span)) - bound;
    long im = static_cast<long>(rng.below(span)) - bound;
    return BaseScalar{ring, re, im};
}

// Shards [0, n_samples) across workers; sample i uses stream (seed, i), so
// the outcome does not depend on the worker count.
SamplingReport run_sampling(std::size_t n_samples, unsigned threads, std::uint64_t seed,
                            const std::function<std::string(PhiloxRng&)>& check_one) {
    const unsigned workers =
        std::max(1u, std::min<unsigned>(resolve_threads(threads),
                                        static_cast<unsigned>(std::max<std::size_t>(n_samples, 1))));
    std::atomic<std::size_t> failures{0};
    std::mutex witness_mutex;
    std::size_t first_bad = n_samples;
    std::string first_msg;

    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < n_samples; i += workers) {
            PhiloxRng rng(seed, i);
            std::string msg = check_one(rng);
            if (!msg.empty()) {
                failures.fetch_add(1, std::memory_order_relaxed);
                std::lock_guard<std::mutex> lock(witness_mutex);
                if (i < first_bad) {
                    first_bad = i;
                    first_msg = "sample " + std::to_string(i) + ": " + msg;
                }
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    SamplingReport rep;
    rep.samples = n_samples;
    rep.failures = failures.load();
    rep.first_failure = first_msg;
    return rep;
}

}  // namespace

SamplingReport nvd_sampling_test(const CodeDefinition& code, std::size_t n_samples,
                                 long coeff_bound, std::uint64_t seed, unsigned threads) {
    if (coeff_bound < 1) throw std::invalid_argument("coefficient bound must be >= 1");
    if (!code.exact_supported())
        throw std::invalid_argument("NVD sampling requires the exact path (odd prime m)");

    return run_sampling(n_samples, threads, seed, [&](PhiloxRng& rng) -> std::string {
        SymbolBlock s(code.ring, code.nt);
        do {
            for (auto& v : s.s) v = random_scalar(rng, code.ring, coeff_bound);
        } while (s.is_zero());
        CycElement det = exact_det(assemble_exact(code, s), code.nt);
        if (!det.is_base()) return "determinant not in the base ring: " + det.str();
        Int detsq = det.to_base().norm_sq();
        if (detsq < 1) return "determinant-squared " + detsq.str() + " below 1";
        return {};
    });
}

SamplingReport norm_nonrepresentability_sample(const CodeDefinition& code,
                                               std::size_t n_samples, long coeff_bound,
                                               std::uint64_t seed, unsigned threads) {
    if (coeff_bound < 1) throw std::invalid_argument("coefficient bound must be >= 1");
    if (!code.exact_supported())
        throw std::invalid_argument("norm sampling requires the exact path (odd prime m)");

    // gamma^t, t = 1..n-1
    std::vector<BaseScalar> gamma_powers;
    BaseScalar g = code.gamma;
    for (unsigned t = 1; t < code.nt; ++t) {
        gamma_powers.push_back(g);
        g = g * code.gamma;
    }

    return run_sampling(n_samples, threads, seed, [&](PhiloxRng& rng) -> std::string {
        CycElement a = CycElement::zero(code.ring, code.m);
        do {
            std::vector<BaseScalar> coeffs(code.nt, BaseScalar{code.ring, 0, 0});
            for (auto& c : coeffs) c = random_scalar(rng, code.ring, coeff_bound);
            a = CycElement(code.ring, code.m, std::move(coeffs));
        } while (a.is_zero());
        CycElement nrm = relative_norm(a, code.tau_exp);
        if (!nrm.is_base()) return "norm not in the base ring for a = " + a.str();
        BaseScalar v = nrm.to_base();
        for (unsigned t = 1; t < code.nt; ++t)
            if (v == gamma_powers[t - 1])
                return "norm of " + a.str() + " equals gamma^" + std::to_string(t);
        return {};
    });
}

double gaussian_capacity(const ComplexMatrix& H, double rho) {
    if (rho < 0) throw std::invalid_argument("rho must be nonnegative");
    const std::size_t nt = H.cols();
    ComplexMatrix gram = H * H.adjoint();
    ComplexMatrix arg = ComplexMatrix::identity(H.rows()) + (cxd(rho / double(nt), 0.0) * gram);
    return log2_det_hermitian(arg);
}

McEstimate cc_mutual_info_mc(const ComplexMatrix& H, const CodeDefinition* code,
                             const Constellation& constellation, double rho,
                             std::size_t n_mc, std::uint64_t seed) {
    if (rho < 0) throw std::invalid_argument("rho must be nonnegative");
    if (n_mc < 2) throw std::invalid_argument("need at least two Monte Carlo samples");
    const std::size_t nr = H.rows();
    const std::size_t nt = H.cols();
    const unsigned M = constellation.M;
    const double E = constellation.avg_energy.convert_to<double>();

    // effective mean map W: y = W s + n with s running over the enumeration
    std::size_t k;       // independent symbols
    std::size_t dim;     // complex receive dimension
    unsigned T = 1;
    ComplexMatrix W;
    if (code == nullptr) {
        k = nt;
        dim = nr;
        double hnorm2 = 0;
        for (const auto& z : H.data()) hnorm2 += std::norm(z);
        double beta = (hnorm2 > 0) ? rho * double(nr) / (E * hnorm2) : 0.0;
        W = cxd(std::sqrt(beta), 0.0) * H;
    } else {
        if (code->nt != nt) throw std::invalid_argument("channel columns must equal code antennas");
        T = code->nt;
        k = static_cast<std::size_t>(code->nt) * code->nt;
        dim = nr * T;
        ComplexMatrix G = stbc_generator_G(*code);
        // I_T (x) H applied to G, scaled so E||Gs||^2 = T
        ComplexMatrix WG(dim, k);
        const double scale = std::sqrt(rho) / std::sqrt(double(code->nt) * E);
        for (unsigned t = 0; t < T; ++t)
            for (std::size_t r = 0; r < nr; ++r)
                for (std::size_t col = 0; col < k; ++col) {
                    cxd acc{0, 0};
                    for (std::size_t c = 0; c < nt; ++c)
                        acc += H(r, c) * G(t * nt + c, col);
                    WG(t * nr + r, col) = acc * scale;
                }
        W = std::move(WG);
    }

    // full enumeration of the input alphabet
    double count_d = std::pow(double(M), double(k));
    if (count_d > 1e6)
        throw std::invalid_argument(
            "constellation enumeration of size " + std::to_string(count_d) +
            " exceeds the 1e6 desk-scale limit");
    const std::size_t count = static_cast<std::size_t>(std::llround(count_d));

    std::vector<cxd> pts(M);
    for (unsigned i = 0; i < M; ++i) pts[i] = constellation.points[i].embed();

    std::vector<cxd> means(count * dim);
    {
        std::vector<unsigned> idx(k, 0);
        for (std::size_t s = 0; s < count; ++s) {
            cxd* mu = &means[s * dim];
            for (std::size_t r = 0; r < dim; ++r) {
                cxd acc{0, 0};
                for (std::size_t j = 0; j < k; ++j) acc += W(r, j) * pts[idx[j]];
                mu[r] = acc;
            }
            for (std::size_t j = 0; j < k; ++j) {
                if (++idx[j] < M) break;
                idx[j] = 0;
            }
        }
    }

    const double log2pi = std::log2(std::numbers::pi);
    const double log2e = std::numbers::log2e;
    const double log2count = std::log2(double(count));

    double sum = 0, sumsq = 0;
    std::vector<cxd> y(dim);
    std::vector<double> expo(count);
    for (std::size_t it = 0; it < n_mc; ++it) {
        PhiloxRng rng(seed, it);
        std::size_t s0 = rng.below(static_cast<std::uint32_t>(count));
        for (std::size_t r = 0; r < dim; ++r) {
            double nre = rng.normal() / std::numbers::sqrt2;
            double nim = rng.normal() / std::numbers::sqrt2;
            y[r] = means[s0 * dim + r] + cxd(nre, nim);
        }
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < count; ++s) {
            double d2 = 0;
            const cxd* mu = &means[s * dim];
            for (std::size_t r = 0; r < dim; ++r) d2 += std::norm(y[r] - mu[r]);
            expo[s] = -d2;
            mx = std::max(mx, expo[s]);
        }
        double acc = 0;
        for (std::size_t s = 0; s < count; ++s) acc += std::exp(expo[s] - mx);
        double log2sum = mx * log2e + std::log2(acc);
        double val = -(log2sum - log2count - double(dim) * log2pi) -
                     double(dim) * (log2pi + log2e);
        val /= double(T);
        sum += val;
        sumsq += val * val;
    }

    McEstimate est;
    est.samples = n_mc;
    est.value = sum / double(n_mc);
    double var = std::max(0.0, sumsq / double(n_mc) - est.value * est.value);
    est.std_error = std::sqrt(var / double(n_mc));
    return est;
}

}  // namespace stbc::analysis
