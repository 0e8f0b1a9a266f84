#include "stbc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "stbc/kernels.hpp"
#include "stbc/threads.hpp"

namespace stbc::sim {

ComplexMatrix sample_channel(std::size_t nr, std::size_t nt, PhiloxRng& rng) {
    if (nr == 0 || nt == 0) throw std::invalid_argument("channel dimensions must be positive");
    ComplexMatrix H(nr, nt);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nt; ++c)
            H(r, c) = cxd(rng.normal() / std::numbers::sqrt2,
                          rng.normal() / std::numbers::sqrt2);
    return H;
}

ComplexMatrix sample_noise(std::size_t nr, std::size_t T, PhiloxRng& rng) {
    return sample_channel(nr, T, rng);
}

namespace {

// Fills the realified model from a precomputed generator matrix; reuses the
// storage already present in `model`. The complex map is
// sqrt(rho) (I_T (x) H) G / sqrt(n_t E), one column per information symbol.
void fill_real_lattice(const ComplexMatrix& G, unsigned nt, const Constellation& constellation,
                       const ComplexMatrix& H, double rho, RealLatticeModel& model) {
    const std::size_t T = nt;
    const std::size_t nr = H.rows();
    if (H.cols() != nt) throw std::invalid_argument("channel columns must equal code antennas");
    const std::size_t k = G.cols();
    const std::size_t D = nr * T;
    const double E = constellation.avg_energy.convert_to<double>();
    const double scale = std::sqrt(rho) / std::sqrt(double(nt) * E);
    const cxd u = (constellation.kind == ConstellationKind::qam)
                      ? cxd(0.0, 1.0)
                      : cxd(-0.5, std::numbers::sqrt3 / 2.0);

    model.pam = constellation.pam;
    model.k = static_cast<unsigned>(k);
    model.nr = static_cast<unsigned>(nr);
    model.T = static_cast<unsigned>(T);
    model.B.rows = 2 * D;
    model.B.cols = 2 * k;
    model.B.data.assign(4 * D * k, 0.0);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t r = 0; r < nr; ++r) {
            const std::size_t row = t * nr + r;
            for (std::size_t col = 0; col < k; ++col) {
                cxd acc{0, 0};
                for (std::size_t c = 0; c < nt; ++c) acc += H(r, c) * G(t * nt + c, col);
                cxd wa = acc * scale;
                cxd wb = u * wa;
                model.B.at(row, 2 * col) = wa.real();
                model.B.at(D + row, 2 * col) = wa.imag();
                model.B.at(row, 2 * col + 1) = wb.real();
                model.B.at(D + row, 2 * col + 1) = wb.imag();
            }
        }
}

}  // namespace

RealLatticeModel build_real_lattice(const CodeDefinition& code, const ComplexMatrix& H,
                                    double rho, const Constellation& constellation) {
    if (constellation.ring() != code.ring)
        throw std::invalid_argument("constellation ring does not match the code");
    RealLatticeModel model;
    fill_real_lattice(stbc_generator_G(code), code.nt, constellation, H, rho, model);
    return model;
}

namespace {

struct DecodeWorkspace {
    QrScratch qr;
    std::vector<double> r_upper;  // n x n row-major upper triangular
    std::vector<double> qty;
    std::vector<int> x;        // candidate values per level
    std::vector<int> best_x;
    std::vector<double> partial;  // partial metric entering each level
    std::vector<double> center;
    std::vector<unsigned> order;     // candidate ordering, q entries per level
    std::vector<unsigned> cand_pos;  // next candidate index per level
};

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

const std::vector<int>& sphere_decode_impl(const RealLatticeModel& model,
                                           const std::vector<double>& y, DecodeWorkspace& ws) {
    const std::size_t n = model.B.cols;
    const unsigned q = static_cast<unsigned>(model.pam.size());
    if (y.size() != model.B.rows) throw std::invalid_argument("received vector length mismatch");

    if (!qr_reduce(model.B, y.data(), ws.r_upper, ws.qty, ws.qr))
        throw std::runtime_error("sphere decoder: model matrix is rank deficient");
    const double* R = ws.r_upper.data();

    ws.x.assign(n, 0);
    ws.best_x.assign(n, 0);
    ws.partial.assign(n + 1, 0.0);
    ws.center.assign(n, 0.0);
    ws.order.assign(n * q, 0);
    ws.cand_pos.assign(n, 0);

    double best = std::numeric_limits<double>::infinity();
    bool have_best = false;

    auto enter_level = [&](std::size_t lvl) {
        // center = (qty[lvl] - sum_{j>lvl} R[lvl][j] x_j) / R[lvl][lvl]
        double acc = ws.qty[lvl];
        const double* row = R + lvl * n;
        if (lvl + 1 < n) {
            // x holds integer alphabet values; fold them in directly
            for (std::size_t j = lvl + 1; j < n; ++j) acc -= row[j] * ws.x[j];
        }
        double c = acc / row[lvl];
        ws.center[lvl] = c;
        // candidates sorted by |value - center| (zig-zag from the nearest)
        unsigned* ord = &ws.order[lvl * q];
        for (unsigned i = 0; i < q; ++i) ord[i] = i;
        std::sort(ord, ord + q, [&](unsigned a, unsigned b) {
            double da = std::abs(model.pam[a] - c);
            double db = std::abs(model.pam[b] - c);
            if (da != db) return da < db;
            return model.pam[a] < model.pam[b];
        });
        ws.cand_pos[lvl] = 0;
    };

    std::size_t lvl = n - 1;
    enter_level(lvl);
    while (true) {
        bool moved_down = false;
        while (ws.cand_pos[lvl] < q) {
            unsigned ci = ws.order[lvl * q + ws.cand_pos[lvl]++];
            int value = model.pam[ci];
            double step = (R[lvl * n + lvl]) * (value - ws.center[lvl]);
            double metric = ws.partial[lvl + 1] + step * step;
            if (have_best && metric > best) {
                // ordered candidates only get farther; skip the rest
                ws.cand_pos[lvl] = q;
                break;
            }
            ws.x[lvl] = value;
            if (lvl == 0) {
                if (!have_best || metric < best ||
                    (metric == best && lex_less(ws.x, ws.best_x))) {
                    best = metric;
                    have_best = true;
                    ws.best_x = ws.x;
                }
            } else {
                ws.partial[lvl] = metric;
                --lvl;
                enter_level(lvl);
                moved_down = true;
                break;
            }
        }
        if (!moved_down) {
            if (lvl == n - 1) break;
            ++lvl;
        }
    }
    return ws.best_x;
}

}  // namespace

std::vector<int> sphere_decode(const RealLatticeModel& model, const std::vector<double>& y) {
    DecodeWorkspace ws;
    return sphere_decode_impl(model, y, ws);
}

std::vector<int> exhaustive_ml_decode(const RealLatticeModel& model,
                                      const std::vector<double>& y) {
    const std::size_t n = model.B.cols;
    const std::size_t rows = model.B.rows;
    const unsigned q = static_cast<unsigned>(model.pam.size());
    if (y.size() != rows) throw std::invalid_argument("received vector length mismatch");
    double total = std::pow(double(q), double(n));
    if (total > 1e6) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "exhaustive ML refused: codebook of %.4g candidates exceeds 1e6", total);
        throw std::invalid_argument(msg);
    }

    std::vector<unsigned> idx(n, 0);
    std::vector<int> x(n), best_x;
    std::vector<double> resid(rows);
    double best = std::numeric_limits<double>::infinity();
    const std::size_t count = static_cast<std::size_t>(std::llround(total));
    for (std::size_t it = 0; it < count; ++it) {
        for (std::size_t j = 0; j < n; ++j) x[j] = model.pam[idx[j]];
        for (std::size_t r = 0; r < rows; ++r) {
            double acc = y[r];
            const double* row = &model.B.data[r * n];
            for (std::size_t j = 0; j < n; ++j) acc -= row[j] * x[j];
            resid[r] = acc;
        }
        double metric = kernels::sum_sq(resid.data(), rows);
        // lex-ascending enumeration: strict < keeps the lex-smallest tie
        if (metric < best) {
            best = metric;
            best_x = x;
        }
        // odometer with the last coordinate fastest
        for (std::size_t j = n; j-- > 0;) {
            if (++idx[j] < q) break;
            idx[j] = 0;
        }
    }
    return best_x;
}

void SimConfig::validate() const {
    if (nr < 1) throw std::invalid_argument("need at least one receive antenna");
    if (snr_db.empty()) throw std::invalid_argument("SNR list must be nonempty");
    if (target_errors == 0) throw std::invalid_argument("target error count must be positive");
    if (max_trials < target_errors)
        throw std::invalid_argument("max trials must be at least the target error count");
}

namespace {

void wilson_interval(std::size_t errors, std::size_t trials, double& lo, double& hi) {
    constexpr double z = 1.959963984540054;  // 95%
    if (trials == 0) {
        lo = 0.0;
        hi = 1.0;
        return;
    }
    double n = double(trials);
    double phat = double(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

struct TrialOutcome {
    bool error = false;
    double energy = 0.0;  // ||S||^2 / T for this trial
};

struct TrialScratch {
    DecodeWorkspace decode;
    RealLatticeModel model;
    std::vector<int> x_true;
    std::vector<double> xd, y;
};

// Immutable per-run state; every mutable buffer lives in the worker scratch.
class TrialRunner {
  public:
    TrialRunner(const SimConfig& cfg, const Constellation& constellation)
        : cfg_(cfg), constellation_(constellation),
          G_(stbc_generator_G(cfg.code)),
          E_(constellation.avg_energy.convert_to<double>()) {}

    TrialOutcome run(std::uint64_t stream, double rho, TrialScratch& ts) const {
        PhiloxRng rng(cfg_.seed, stream);
        const unsigned nt = cfg_.code.nt;
        ComplexMatrix H = sample_channel(cfg_.nr, nt, rng);
        fill_real_lattice(G_, nt, constellation_, H, rho, ts.model);

        const std::size_t ncoord = ts.model.B.cols;
        const unsigned q = static_cast<unsigned>(ts.model.pam.size());
        ts.x_true.resize(ncoord);
        for (auto& v : ts.x_true) v = ts.model.pam[rng.below(q)];

        ts.xd.assign(ts.x_true.begin(), ts.x_true.end());
        ts.y.resize(ts.model.B.rows);
        kernels::matvec(ts.model.B.data.data(), ts.model.B.rows, ts.model.B.cols, ts.xd.data(),
                        ts.y.data());
        for (auto& v : ts.y) v += rng.normal() / std::numbers::sqrt2;

        TrialOutcome out;
        if (cfg_.decoder == DecoderKind::sphere) {
            out.error = (sphere_decode_impl(ts.model, ts.y, ts.decode) != ts.x_true);
        } else {
            out.error = (exhaustive_ml_decode(ts.model, ts.y) != ts.x_true);
        }
        out.energy = transmit_energy(ts.x_true) / double(nt);
        return out;
    }

  private:
    // ||S||^2 = ||beta G_unscaled s||^2, via the energy-normalized map
    double transmit_energy(const std::vector<int>& coords) const {
        const unsigned nt = cfg_.code.nt;
        const std::size_t k = G_.cols();
        const cxd u = (constellation_.kind == ConstellationKind::qam)
                          ? cxd(0.0, 1.0)
                          : cxd(-0.5, std::numbers::sqrt3 / 2.0);
        double acc = 0.0;
        const double scale2 = 1.0 / (double(nt) * E_);
        for (std::size_t r = 0; r < G_.rows(); ++r) {
            cxd v{0, 0};
            for (std::size_t j = 0; j < k; ++j) {
                cxd s = cxd(coords[2 * j], 0.0) + u * cxd(coords[2 * j + 1], 0.0);
                v += G_(r, j) * s;
            }
            acc += std::norm(v) * scale2;
        }
        return acc;
    }

    const SimConfig& cfg_;
    const Constellation& constellation_;
    ComplexMatrix G_;
    double E_;
};

}  // namespace

CerCurve run_cer(const SimConfig& config, const std::function<void(const CerPoint&)>& on_point) {
    config.validate();
    Constellation constellation = Constellation::make(config.code.constellation, config.M);
    if (config.nr < config.code.nt && config.decoder == DecoderKind::sphere)
        throw std::invalid_argument(
            "sphere decoding needs nr >= nt for a full-rank lattice model");

    CerCurve curve;
    curve.code_name = config.code.name;
    curve.M = config.M;
    curve.kind = config.code.constellation;
    curve.nr = config.nr;
    curve.seed = config.seed;

    const unsigned workers = resolve_threads(config.threads);
    constexpr std::size_t kChunk = 1024;  // stopping decisions at chunk boundaries only

    TrialRunner runner(config, constellation);

    for (std::size_t point = 0; point < config.snr_db.size(); ++point) {
        const double rho = std::pow(10.0, config.snr_db[point] / 10.0);
        std::size_t trials = 0, errors = 0;
        double energy_sum = 0.0;

        while (trials < config.max_trials && errors < config.target_errors) {
            std::size_t chunk = std::min(kChunk, config.max_trials - trials);
            std::vector<std::size_t> worker_errors(workers, 0);
            std::vector<double> worker_energy(workers, 0.0);
            auto work = [&](unsigned w) {
                TrialScratch ts;
                for (std::size_t t = w; t < chunk; t += workers) {
                    std::uint64_t trial_index = trials + t;
                    std::uint64_t stream = (std::uint64_t(point) << 40) | trial_index;
                    TrialOutcome out = runner.run(stream, rho, ts);
                    worker_errors[w] += out.error ? 1 : 0;
                    worker_energy[w] += out.energy;
                }
            };
            if (workers == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
                for (auto& th : pool) th.join();
            }
            trials += chunk;
            // ordered reduction keeps the outcome independent of scheduling
            for (unsigned w = 0; w < workers; ++w) {
                errors += worker_errors[w];
                energy_sum += worker_energy[w];
            }
        }

        CerPoint pt;
        pt.snr_db = config.snr_db[point];
        pt.trials = trials;
        pt.errors = errors;
        pt.cer = trials ? double(errors) / double(trials) : 0.0;
        wilson_interval(errors, trials, pt.ci_low, pt.ci_high);
        pt.measured_energy = trials ? energy_sum / double(trials) : 0.0;
        curve.points.push_back(pt);
        if (on_point) on_point(pt);
    }
    return curve;
}

std::string CerCurve::to_csv() const {
    std::ostringstream os;
    os << "code,constellation,nr,snr_db,trials,errors,cer,ci_low,ci_high\n";
    char buf[256];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%u,%.10g,%zu,%zu,%.10g,%.10g,%.10g\n",
                      code_name.c_str(), constellation_name(kind), nr, p.snr_db, p.trials,
                      p.errors, p.cer, p.ci_low, p.ci_high);
        os << buf;
    }
    return os.str();
}

std::string CerCurve::to_json() const {
    nlohmann::json j;
    j["code"] = code_name;
    j["constellation"] = constellation_name(kind);
    j["M"] = M;
    j["nr"] = nr;
    j["seed"] = seed;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        pts.push_back({{"snr_db", p.snr_db},
                       {"trials", p.trials},
                       {"errors", p.errors},
                       {"cer", p.cer},
                       {"ci_low", p.ci_low},
                       {"ci_high", p.ci_high},
                       {"measured_energy", p.measured_energy}});
    }
    j["points"] = std::move(pts);
    return j.dump(2);
}

}  // namespace stbc::sim
