#include "stbc/code.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "stbc/nt.hpp"

namespace stbc {

using exact::BaseScalar;
using exact::CycElement;
using exact::Int;
using exact::Rational;
using exact::Ring;
using nlohmann::json;

const char* constellation_name(ConstellationKind k) {
    return k == ConstellationKind::qam ? "qam" : "hex";
}

Constellation Constellation::make(ConstellationKind kind, unsigned M) {
    // M = 4^t so that sqrt(M)-PAM exists with an even power-of-two size
    unsigned root = static_cast<unsigned>(std::lround(std::sqrt(double(M))));
    bool pow4 = M >= 4 && root * root == M && (root & (root - 1)) == 0;
    if (!pow4)
        throw std::invalid_argument("constellation size must be 4^t, got " + std::to_string(M));

    Constellation c;
    c.kind = kind;
    c.M = M;
    for (int v = -static_cast<int>(root) + 1; v <= static_cast<int>(root) - 1; v += 2)
        c.pam.push_back(v);
    Ring ring = c.ring();
    for (int a : c.pam)
        for (int b : c.pam) c.points.push_back(BaseScalar{ring, a, b});
    c.avg_energy = Rational(2 * (Int(M) - 1), 3);
    return c;
}

bool SymbolBlock::is_zero() const {
    for (const auto& v : s)
        if (!v.is_zero()) return false;
    return true;
}

bool CodeDefinition::exact_supported() const {
    if (m < 3 || m % 2 == 0) return false;
    for (unsigned d = 3; d * d <= m; d += 2)
        if (m % d == 0) return false;
    return true;
}

unsigned CodeDefinition::tau_power(unsigned r) const {
    unsigned long k = 1;
    for (unsigned i = 0; i < r; ++i) k = (k * tau_exp) % m;
    return static_cast<unsigned>(k);
}

cxd CodeDefinition::basis_embed(unsigned j, unsigned r) const {
    const unsigned k = tau_power(r);
    cxd acc{0.0, 0.0};
    for (unsigned e = 0; e < basis[j].size(); ++e) {
        if (basis[j][e].is_zero()) continue;
        acc += basis[j][e].embed() * exact::embed_root(m, static_cast<long>(e) * k);
    }
    return acc;
}

CycElement CodeDefinition::basis_exact(unsigned j) const {
    if (!exact_supported())
        throw std::invalid_argument("exact arithmetic unavailable: order " + std::to_string(m) +
                                    " is not an odd prime");
    CycElement acc = CycElement::zero(ring, m);
    for (unsigned e = 0; e < basis[j].size(); ++e) {
        if (basis[j][e].is_zero()) continue;
        acc = acc + basis[j][e] * CycElement::root_power(ring, m, static_cast<long>(e));
    }
    return acc;
}

void CodeDefinition::validate() const {
    if (nt < 2) throw std::invalid_argument("invalid code: nt must be >= 2");
    if (m < 3) throw std::invalid_argument("invalid code: m must be >= 3");
    if (gamma.ring != ring) throw std::invalid_argument("invalid code: gamma ring mismatch");
    if (gamma.norm_sq() != 1)
        throw std::invalid_argument("invalid code: |gamma|^2 != 1 (got " +
                                    gamma.norm_sq().str() + ")");
    if ((ring == Ring::gaussian) != (constellation == ConstellationKind::qam))
        throw std::invalid_argument("invalid code: constellation kind does not match base ring");
    if (std::gcd(tau_exp, m) != 1)
        throw std::invalid_argument("invalid code: tau exponent not coprime to m");
    if (::stbc::nt::mult_order(tau_exp, m) != nt)
        throw std::invalid_argument("invalid code: order of tau_exp mod m must equal nt");
    if (basis.size() != nt)
        throw std::invalid_argument("invalid code: basis must have nt elements");
    for (unsigned j = 0; j < nt; ++j) {
        if (basis[j].empty() || basis[j].size() > m)
            throw std::invalid_argument("invalid code: basis coefficient list length out of range");
        bool nonzero = false;
        for (const auto& c : basis[j]) {
            if (c.ring != ring) throw std::invalid_argument("invalid code: basis ring mismatch");
            nonzero = nonzero || !c.is_zero();
        }
        if (!nonzero) throw std::invalid_argument("invalid code: zero basis element");
        for (unsigned i = 0; i < j; ++i)
            if (basis[i] == basis[j])
                throw std::invalid_argument("invalid code: duplicate basis elements");
    }
    if (lambda <= 0) throw std::invalid_argument("invalid code: lambda must be positive");
}

namespace {

std::vector<BaseScalar> pure_power(Ring ring, unsigned e) {
    std::vector<BaseScalar> v(e + 1, BaseScalar{ring, 0, 0});
    v[e] = BaseScalar{ring, 1, 0};
    return v;
}

}  // namespace

CodeDefinition builtin_code(std::string_view name) {
    CodeDefinition c;
    if (name == "C4") {
        c.name = "C4";
        c.nt = 4;
        c.ring = Ring::gaussian;
        c.m = 5;
        c.tau_exp = 2;
        c.gamma = BaseScalar{Ring::gaussian, 0, 1};  // i
        for (unsigned e = 0; e < 4; ++e) c.basis.push_back(pure_power(c.ring, e));
        c.lambda = 4;
        c.constellation = ConstellationKind::qam;
    } else if (name == "C6") {
        c.name = "C6";
        c.nt = 6;
        c.ring = Ring::eisenstein;
        c.m = 7;
        c.tau_exp = 3;
        c.gamma = BaseScalar{Ring::eisenstein, 0, -1};  // -omega
        for (unsigned e = 0; e < 6; ++e) c.basis.push_back(pure_power(c.ring, e));
        c.lambda = 6;
        c.constellation = ConstellationKind::hex;
    } else {
        throw std::invalid_argument("unknown code \"" + std::string(name) +
                                    "\" (built-ins: C4, C6)");
    }
    c.validate();
    return c;
}

namespace {

BaseScalar scalar_from_json(const json& v, Ring ring, const char* where) {
    if (!v.is_object() || !v.contains("re") || !v.contains("im") ||
        !v["re"].is_number_integer() || !v["im"].is_number_integer())
        throw std::invalid_argument(std::string("schema violation: ") + where +
                                    " must be {\"re\": int, \"im\": int}");
    return BaseScalar{ring, Int(v["re"].get<long long>()), Int(v["im"].get<long long>())};
}

}  // namespace

CodeDefinition load_code_definition(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("schema violation: not valid JSON: ") + e.what());
    }
    for (const char* key :
         {"name", "nt", "ring", "m", "tau_exp", "gamma", "basis", "lambda", "constellation"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("schema violation: missing field \"") + key +
                                        "\"");

    CodeDefinition c;
    c.name = doc["name"].get<std::string>();
    c.nt = doc["nt"].get<unsigned>();
    std::string ring = doc["ring"].get<std::string>();
    if (ring == "gaussian")
        c.ring = Ring::gaussian;
    else if (ring == "eisenstein")
        c.ring = Ring::eisenstein;
    else
        throw std::invalid_argument("schema violation: ring must be gaussian or eisenstein");
    c.m = doc["m"].get<unsigned>();
    c.tau_exp = doc["tau_exp"].get<unsigned>();
    c.gamma = scalar_from_json(doc["gamma"], c.ring, "gamma");
    if (!doc["basis"].is_array())
        throw std::invalid_argument("schema violation: basis must be an array");
    for (const auto& elem : doc["basis"]) {
        if (!elem.is_array())
            throw std::invalid_argument("schema violation: basis element must be an array");
        std::vector<BaseScalar> coeffs;
        for (const auto& v : elem) coeffs.push_back(scalar_from_json(v, c.ring, "basis entry"));
        c.basis.push_back(std::move(coeffs));
    }
    if (doc["lambda"].is_number_integer())
        c.lambda = Rational(Int(doc["lambda"].get<long long>()));
    else if (doc["lambda"].is_number())
        c.lambda = Rational(doc["lambda"].get<double>());
    else
        throw std::invalid_argument("schema violation: lambda must be a number");
    std::string kind = doc["constellation"].get<std::string>();
    if (kind == "qam")
        c.constellation = ConstellationKind::qam;
    else if (kind == "hex")
        c.constellation = ConstellationKind::hex;
    else
        throw std::invalid_argument("schema violation: constellation must be qam or hex");
    c.validate();
    return c;
}

CodeDefinition load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open code definition file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_code_definition(buf.str());
}

std::string code_definition_to_json(const CodeDefinition& code) {
    json doc;
    doc["name"] = code.name;
    doc["nt"] = code.nt;
    doc["ring"] = ring_name(code.ring);
    doc["m"] = code.m;
    doc["tau_exp"] = code.tau_exp;
    doc["gamma"] = {{"re", code.gamma.re.convert_to<long long>()},
                    {"im", code.gamma.im.convert_to<long long>()}};
    json basis = json::array();
    for (const auto& theta : code.basis) {
        json elem = json::array();
        for (const auto& coeff : theta)
            elem.push_back({{"re", coeff.re.convert_to<long long>()},
                            {"im", coeff.im.convert_to<long long>()}});
        basis.push_back(std::move(elem));
    }
    doc["basis"] = std::move(basis);
    if (boost::multiprecision::denominator(code.lambda) == 1)
        doc["lambda"] = boost::multiprecision::numerator(code.lambda).convert_to<long long>();
    else
        doc["lambda"] = code.lambda.convert_to<double>();
    doc["constellation"] = constellation_name(code.constellation);
    return doc.dump(2);
}

std::vector<CycElement> assemble_exact(const CodeDefinition& code, const SymbolBlock& s) {
    const unsigned n = code.nt;
    if (s.nt != n) throw std::invalid_argument("symbol block size mismatch");
    for (const auto& v : s.s)
        if (v.ring != code.ring) throw std::invalid_argument("symbol ring mismatch");

    std::vector<CycElement> layer(n, CycElement::zero(code.ring, code.m));
    std::vector<CycElement> theta(n, CycElement::zero(code.ring, code.m));
    for (unsigned j = 0; j < n; ++j) theta[j] = code.basis_exact(j);
    for (unsigned i = 0; i < n; ++i) {
        CycElement a = CycElement::zero(code.ring, code.m);
        for (unsigned j = 0; j < n; ++j) {
            if (s.at(i, j).is_zero()) continue;
            a = a + s.at(i, j) * theta[j];
        }
        layer[i] = std::move(a);
    }

    std::vector<CycElement> out(static_cast<std::size_t>(n) * n,
                                CycElement::zero(code.ring, code.m));
    for (unsigned c = 0; c < n; ++c) {
        const unsigned k = code.tau_power(c);
        for (unsigned r = 0; r < n; ++r) {
            const unsigned i = (r + n - c) % n;
            if (layer[i].is_zero()) continue;
            CycElement entry = apply_tau(layer[i], k);
            if (r < c) entry = code.gamma * entry;
            out[static_cast<std::size_t>(r) * n + c] = std::move(entry);
        }
    }
    return out;
}

ComplexMatrix assemble_complex(const CodeDefinition& code, const SymbolBlock& s) {
    const unsigned n = code.nt;
    if (s.nt != n) throw std::invalid_argument("symbol block size mismatch");
    const double scale = 1.0 / std::sqrt(code.lambda.convert_to<double>());

    // a_i under tau^c, computed through the numeric embedding so composite-m
    // external definitions take the same path as the built-ins
    std::vector<cxd> conj_a(static_cast<std::size_t>(n) * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned c = 0; c < n; ++c) {
            cxd acc{0.0, 0.0};
            for (unsigned j = 0; j < n; ++j) {
                if (s.at(i, j).is_zero()) continue;
                acc += s.at(i, j).embed() * code.basis_embed(j, c);
            }
            conj_a[i * n + c] = acc;
        }

    const cxd gamma = code.gamma.embed();
    ComplexMatrix out(n, n);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) {
            const unsigned i = (r + n - c) % n;
            cxd entry = conj_a[i * n + c];
            if (r < c) entry *= gamma;
            out(r, c) = entry * scale;
        }
    return out;
}

ComplexMatrix layer_generator_R(const CodeDefinition& code) {
    const unsigned n = code.nt;
    const double scale = 1.0 / std::sqrt(code.lambda.convert_to<double>());
    ComplexMatrix R(n, n);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) R(r, c) = code.basis_embed(c, r) * scale;
    return R;
}

ComplexMatrix layer_scaler_D(const CodeDefinition& code, unsigned i) {
    if (i >= code.nt)
        throw std::invalid_argument("layer index " + std::to_string(i) + " out of range");
    ComplexMatrix D(code.nt, code.nt);
    const cxd gamma = code.gamma.embed();
    for (unsigned r = 0; r < code.nt; ++r) D(r, r) = (r + i >= code.nt) ? gamma : cxd{1.0, 0.0};
    return D;
}

std::vector<ComplexMatrix> weight_matrices(const CodeDefinition& code) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(code.nt) * code.nt);
    for (unsigned i = 0; i < code.nt; ++i)
        for (unsigned j = 0; j < code.nt; ++j) {
            SymbolBlock s(code.ring, code.nt);
            s.at(i, j) = BaseScalar{code.ring, 1, 0};
            out.push_back(assemble_complex(code, s));
        }
    return out;
}

ComplexMatrix stbc_generator_G(const CodeDefinition& code) {
    const auto weights = weight_matrices(code);
    const std::size_t k = weights.size();
    const std::size_t rows = static_cast<std::size_t>(code.nt) * code.nt;
    ComplexMatrix G(rows, k);
    for (std::size_t col = 0; col < k; ++col) {
        auto v = weights[col].vec();
        for (std::size_t r = 0; r < rows; ++r) G(r, col) = v[r];
    }
    return G;
}

double energy_normalizer_beta(const CodeDefinition& code, double E) {
    if (E <= 0) throw std::invalid_argument("average energy must be positive");
    return 1.0 / std::sqrt(code.lambda.convert_to<double>() * code.nt * E);
}

Rational energy_normalizer_beta_sq(const CodeDefinition& code, const Rational& E) {
    if (E <= 0) throw std::invalid_argument("average energy must be positive");
    return Rational(1) / (code.lambda * code.nt * E);
}

}  // namespace stbc
