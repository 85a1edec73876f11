#include "qserre/solutions.hpp"

#include <sstream>

#include "json.hpp"

namespace qserre {

BiSeries basis_P(int n, const QScalar& c) {
    if (n < 1) throw invalid_input("basis_P: n must be >= 1");
    if (c.is_zero()) throw invalid_input("basis_P: c must be nonzero");
    std::map<std::int64_t, QScalar> t;
    t[n] = QScalar(1);
    t[-n] += c;
    QScalar c2m1 = c * c - QScalar(1);
    for (int p = 1 - n; p <= -1; ++p) t[p] += c.pow(p + n - 1) * c2m1;
    t[0] += -(c.pow(n - 1) * (c + QScalar(1)));
    return BiSeries::from_finite(std::move(t));
}

BiSeries basis_Q(int n, const QScalar& c) {
    return basis_P(n, c.inverted()).reversed();
}

namespace {

// (z - c) G(z^-1) - (c z - 1) F(z); products are finite x series, always defined.
BiSeries exchange_defect(const BiSeries& F_ij, const BiSeries& F_ji, const QScalar& c) {
    BiSeries zc = BiSeries::term(1, QScalar(1)) - BiSeries::term(0, c);
    BiSeries cz1 = BiSeries::term(1, c) - BiSeries::term(0, QScalar(1));
    BiSeries lhs = BiSeries::mul(zc, F_ji.reversed(), BiSeries::Mode::Exact);
    BiSeries rhs = BiSeries::mul(cz1, F_ij, BiSeries::Mode::Exact);
    return lhs - rhs;
}

bool window_zero(const BiSeries& s, std::int64_t window) {
    for (const auto& [d, v] : s.truncate(-window, window))
        if (!v.is_zero()) return false;
    return true;
}

} // namespace

bool check_equation_c(const BiSeries& F, const QScalar& c, std::int64_t window) {
    BiSeries defect = exchange_defect(F, F, c);
    if (F.is_finite()) return defect.is_zero();
    return window_zero(defect, window);
}

bool check_system1_pair(const BiSeries& F_ij, const BiSeries& F_ji, std::int64_t b_ij,
                        std::int64_t window) {
    BiSeries defect = exchange_defect(F_ij, F_ji, QScalar::q_power(static_cast<std::int32_t>(b_ij)));
    if (F_ij.is_finite() && F_ji.is_finite()) return defect.is_zero();
    return window_zero(defect, window);
}

BiSeries taylor_entry(std::int64_t d_i, std::int64_t d_j, std::int64_t b_ij, std::int64_t n_ij,
                      std::int64_t n_ji) {
    QScalar c0 = QScalar::q_power(static_cast<std::int32_t>(d_j * n_ij));
    QScalar qb = QScalar::q_power(static_cast<std::int32_t>(b_ij));
    QScalar c1 = qb * c0 - QScalar::q_power(static_cast<std::int32_t>(d_i * n_ji));
    BiSeries s = BiSeries::term(0, c0);
    if (!c1.is_zero())
        s = s + BiSeries::string(DegreePoly(c1 * qb.inverted()), qb, Ray::upper(1));
    return s;
}

TaylorPair taylor_solution(std::int64_t d_i, std::int64_t d_j, std::int64_t b_ij,
                           std::int64_t n_ij, std::int64_t n_ji) {
    return {taylor_entry(d_i, d_j, b_ij, n_ij, n_ji), taylor_entry(d_j, d_i, b_ij, n_ji, n_ij)};
}

std::optional<int> epsilon_constraint(std::int64_t d_i, std::int64_t d_j, std::int64_t b_ij,
                                      std::int64_t n_ij, std::int64_t n_ji) {
    if (b_ij == 0) throw invalid_input("epsilon_constraint: b_ij must be nonzero");
    const std::int64_t v = d_i * n_ji - d_j * n_ij;
    if (v == b_ij) return 1;
    if (v == -b_ij) return -1;
    return std::nullopt;
}

namespace {

// z^n (c - z)/(1 - c z): finite {n: c} plus the geometric tail from n+1 up.
BiSeries shifted_tail(int n, const QScalar& c) {
    BiSeries s = BiSeries::term(n, c);
    QScalar u = c.pow(-n - 1) * (c * c - QScalar(1));
    if (!u.is_zero()) s = s + BiSeries::string(DegreePoly(u), c, Ray::upper(n + 1));
    return s;
}

// z/(1 - c z) = sum_{m>=1} c^(m-1) z^m.
BiSeries geometric_from_one(const QScalar& c) {
    return BiSeries::string(DegreePoly(c.inverted()), c, Ray::upper(1));
}

} // namespace

BiSeries phi_psi(int n, const QScalar& c, PhiPsi which) {
    if (n < 0) throw invalid_input("phi_psi: n must be >= 0");
    if (c.is_zero()) throw invalid_input("phi_psi: c must be nonzero");
    if (which == PhiPsi::Psi) return phi_psi(n, c.inverted(), PhiPsi::Phi).reversed();
    if (n == 0) {
        // (1 - z)/(1 - c z)
        BiSeries s = BiSeries::term(0, QScalar(1));
        QScalar u = (c - QScalar(1)) * c.inverted();
        if (!u.is_zero()) s = s + BiSeries::string(DegreePoly(u), c, Ray::upper(1));
        return s;
    }
    return BiSeries::term(-n, QScalar(1)) + shifted_tail(n, c);
}

OffdiagPair general_offdiag(const std::map<std::int64_t, QScalar>& coeffs, const QScalar& C,
                            std::int64_t b_ij) {
    OffdiagPair pair;
    std::map<std::int64_t, QScalar> fin;
    for (const auto& [n, v] : coeffs)
        if (!v.is_zero()) fin[n] = v;
    pair.F_ij = BiSeries::from_finite(std::move(fin));

    const QScalar qb = QScalar::q_power(static_cast<std::int32_t>(b_ij));
    const QScalar qbi = qb.inverted();
    BiSeries f;
    if (!C.is_zero()) f = f + BiSeries::delta(qb).scaled(C);
    for (const auto& [n, v] : coeffs) {
        if (v.is_zero()) continue;
        if (n == 0) {
            // -C^0 ( z/(1 - q^b z) + z^-1/(1 - q^-b z^-1) )
            f = f - (geometric_from_one(qb) + geometric_from_one(qbi).reversed()).scaled(v);
        } else if (n < 0) {
            // C^-m z^m (q^b - z)/(1 - q^b z) with m = -n >= 1
            f = f + shifted_tail(static_cast<int>(-n), qb).scaled(v);
        } else {
            // C^m z^-m (q^-b - z^-1)/(1 - q^-b z^-1)
            f = f + shifted_tail(static_cast<int>(n), qbi).reversed().scaled(v);
        }
    }
    pair.F_ji = std::move(f);
    return pair;
}

// ---------------------------------------------------------------- families

FamilyDescriptor FamilyDescriptor::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed family JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw invalid_input("family JSON must be an object with a \"kind\" string");
    FamilyDescriptor d;
    d.kind = j["kind"].get<std::string>();
    if (j.contains("n")) d.n = j["n"].get<int>();
    if (j.contains("which")) d.which = j["which"].get<std::string>();
    if (j.contains("n_matrix")) {
        for (const auto& row : j["n_matrix"]) {
            std::vector<std::int64_t> r;
            for (const auto& v : row) r.push_back(v.get<std::int64_t>());
            d.n_matrix.push_back(std::move(r));
        }
    }
    if (j.contains("coeffs")) {
        for (const auto& [key, val] : j["coeffs"].items())
            d.coeffs[std::stoll(key)] = QScalar::parse(val.get<std::string>());
    }
    if (j.contains("C")) d.C = QScalar::parse(j["C"].get<std::string>());
    return d;
}

std::string FamilyDescriptor::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    if (kind == "p-basis" || kind == "q-basis" || kind == "phi-psi" || kind == "general-offdiag")
        j["n"] = n;
    if (kind == "phi-psi") j["which"] = which;
    if (kind == "taylor") j["n_matrix"] = n_matrix;
    if (kind == "phi-psi" || kind == "general-offdiag") {
        nlohmann::json co = nlohmann::json::object();
        for (const auto& [k, v] : coeffs) co[std::to_string(k)] = v.to_string();
        j["coeffs"] = co;
        j["C"] = C.to_string();
    }
    return j.dump();
}

const BiSeries& SolutionFamily::entry(int k, int l) const {
    auto it = entries_.find({k, l});
    if (it == entries_.end()) {
        std::ostringstream os;
        os << "family has no entry (" << k << "," << l << "): a_kl is zero or out of range";
        throw invalid_input(os.str());
    }
    return it->second;
}

bool SolutionFamily::all_polynomial() const {
    for (const auto& [kl, f] : entries_)
        if (!f.is_finite()) return false;
    return true;
}

SolutionFamily SolutionFamily::make(const CartanData& cartan, const FamilyDescriptor& desc,
                                    std::int64_t window) {
    SolutionFamily fam;
    fam.cartan_ = cartan;
    fam.desc_ = desc;
    const int l = cartan.rank();
    auto qb = [&cartan](int k, int m) {
        return QScalar::q_power(
            static_cast<std::int32_t>(cartan.b[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]));
    };

    const std::string& kind = desc.kind;
    bool check = true;
    if (kind == "p-basis" || kind == "q-basis") {
        for (int k = 0; k < l; ++k)
            for (int m = 0; m < l; ++m)
                if (cartan.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] != 0)
                    fam.entries_[{k, m}] = kind == "p-basis" ? basis_P(desc.n, qb(k, m))
                                                             : basis_Q(desc.n, qb(k, m));
    } else if (kind == "taylor") {
        IntMatrix nm = desc.n_matrix;
        if (nm.empty())
            nm.assign(static_cast<std::size_t>(l), std::vector<std::int64_t>(static_cast<std::size_t>(l), 0));
        if (static_cast<int>(nm.size()) != l)
            throw invalid_input("taylor family: n_matrix rank mismatch");
        for (int k = 0; k < l; ++k)
            for (int m = 0; m < l; ++m)
                if (cartan.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] != 0)
                    fam.entries_[{k, m}] = taylor_entry(
                        cartan.d[static_cast<std::size_t>(k)], cartan.d[static_cast<std::size_t>(m)],
                        cartan.b[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)],
                        nm[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)],
                        nm[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]);
    } else if (kind == "phi-psi" || kind == "general-offdiag") {
        PhiPsi which = PhiPsi::Phi;
        if (kind == "phi-psi") {
            if (desc.which == "psi")
                which = PhiPsi::Psi;
            else if (desc.which != "phi")
                throw invalid_input("phi-psi family: which must be phi or psi");
        }
        std::map<std::int64_t, QScalar> coeffs = desc.coeffs;
        if (coeffs.empty())
            coeffs[which == PhiPsi::Phi ? -1 : 1] = QScalar(1);
        for (int k = 0; k < l; ++k) fam.entries_[{k, k}] = phi_psi(desc.n, qb(k, k), which);
        for (int k = 0; k < l; ++k)
            for (int m = k + 1; m < l; ++m)
                if (cartan.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] != 0) {
                    OffdiagPair pr = general_offdiag(
                        coeffs, desc.C,
                        cartan.b[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]);
                    fam.entries_[{k, m}] = pr.F_ij;
                    fam.entries_[{m, k}] = pr.F_ji;
                }
    } else if (kind == "constant-ones") {
        for (int k = 0; k < l; ++k)
            for (int m = 0; m < l; ++m)
                if (cartan.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] != 0)
                    fam.entries_[{k, m}] = BiSeries::constant(QScalar(1));
        check = false; // deliberate non-solution used for negative testing
    } else {
        throw invalid_input("unknown family kind: " + kind);
    }

    if (check) {
        for (int k = 0; k < l; ++k)
            for (int m = k; m < l; ++m) {
                if (cartan.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] == 0) continue;
                const std::int64_t b =
                    cartan.b[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
                if (!check_system1_pair(fam.entry(k, m), fam.entry(m, k), b, window)) {
                    std::ostringstream os;
                    os << "family construction: pair (" << k << "," << m
                       << ") does not solve the exchange system";
                    throw invalid_input(os.str());
                }
            }
        fam.validated_ = true;
    }
    return fam;
}

} // namespace qserre
