#include "qserre/cartan.hpp"

#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace qserre {

void validate_gcm(const IntMatrix& a) {
    const std::size_t l = a.size();
    if (l == 0) throw invalid_input("GCM: empty matrix");
    for (const auto& row : a)
        if (row.size() != l) throw invalid_input("GCM: matrix is not square");
    for (std::size_t i = 0; i < l; ++i) {
        if (a[i][i] != 2) {
            std::ostringstream os;
            os << "GCM: a[" << i << "][" << i << "] = " << a[i][i] << ", expected 2";
            throw invalid_input(os.str());
        }
        for (std::size_t j = 0; j < l; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0) {
                std::ostringstream os;
                os << "GCM: a[" << i << "][" << j << "] = " << a[i][j]
                   << " is positive off the diagonal";
                throw invalid_input(os.str());
            }
            if ((a[i][j] == 0) != (a[j][i] == 0)) {
                std::ostringstream os;
                os << "GCM: zero symmetry broken at (" << i << "," << j << "): a[" << i << "]["
                   << j << "] = " << a[i][j] << " but a[" << j << "][" << i << "] = " << a[j][i];
                throw invalid_input(os.str());
            }
        }
    }
}

CartanData symmetrize(const IntMatrix& a) {
    validate_gcm(a);
    const int l = static_cast<int>(a.size());

    // Propagate d_i a_ij = d_j a_ji as rational ratios over each connected
    // component, checking consistency on cross edges.
    std::vector<BigRat> ratio(static_cast<std::size_t>(l), 0); // d_i relative to component root
    std::vector<int> comp(static_cast<std::size_t>(l), -1);
    std::vector<int> parent(static_cast<std::size_t>(l), -1);
    int ncomp = 0;
    for (int root = 0; root < l; ++root) {
        if (comp[static_cast<std::size_t>(root)] >= 0) continue;
        const int c = ncomp++;
        comp[static_cast<std::size_t>(root)] = c;
        ratio[static_cast<std::size_t>(root)] = 1;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (int j = 0; j < l; ++j) {
                if (j == i || a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0)
                    continue;
                // d_i a_ij = d_j a_ji  =>  d_j = d_i * a_ij / a_ji
                BigRat dj = ratio[static_cast<std::size_t>(i)] *
                            BigRat(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                            BigRat(a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
                if (comp[static_cast<std::size_t>(j)] < 0) {
                    comp[static_cast<std::size_t>(j)] = c;
                    ratio[static_cast<std::size_t>(j)] = dj;
                    parent[static_cast<std::size_t>(j)] = i;
                    queue.push_back(j);
                } else if (ratio[static_cast<std::size_t>(j)] != dj) {
                    // walk both tree paths up to the root to exhibit the cycle
                    std::vector<int> cycle;
                    for (int v = j; v >= 0; v = parent[static_cast<std::size_t>(v)])
                        cycle.push_back(v);
                    std::ostringstream os;
                    os << "GCM is not symmetrizable: edge (" << i << "," << j
                       << ") closes an inconsistent cycle: ";
                    os << j << "<-" << i;
                    for (int v = i; parent[static_cast<std::size_t>(v)] >= 0;
                         v = parent[static_cast<std::size_t>(v)])
                        os << "<-" << parent[static_cast<std::size_t>(v)];
                    os << " vs " << j;
                    for (int v = j; parent[static_cast<std::size_t>(v)] >= 0;
                         v = parent[static_cast<std::size_t>(v)])
                        os << "<-" << parent[static_cast<std::size_t>(v)];
                    throw invalid_input(os.str());
                }
            }
        }
    }

    // Clear denominators per component and reduce to coprime positive integers.
    std::vector<std::int64_t> d(static_cast<std::size_t>(l), 1);
    for (int c = 0; c < ncomp; ++c) {
        BigInt lcm = 1;
        for (int i = 0; i < l; ++i)
            if (comp[static_cast<std::size_t>(i)] == c) {
                BigInt den = boost::multiprecision::denominator(ratio[static_cast<std::size_t>(i)]);
                lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
            }
        BigInt g = 0;
        std::vector<std::pair<int, BigInt>> vals;
        for (int i = 0; i < l; ++i)
            if (comp[static_cast<std::size_t>(i)] == c) {
                BigRat v = ratio[static_cast<std::size_t>(i)] * BigRat(lcm);
                BigInt n = boost::multiprecision::numerator(v);
                vals.emplace_back(i, n);
                g = boost::multiprecision::gcd(g, n);
            }
        for (auto& [i, n] : vals) {
            BigInt red = n / g;
            if (red <= 0) throw invalid_input("GCM symmetrizer: nonpositive entry");
            d[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(red);
        }
    }

    CartanData cd;
    cd.a = a;
    cd.d = std::move(d);
    cd.b.assign(static_cast<std::size_t>(l), std::vector<std::int64_t>(static_cast<std::size_t>(l), 0));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            cd.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cd.d[static_cast<std::size_t>(i)] *
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (cd.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                cd.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw invalid_input("GCM symmetrizer: b is not symmetric after propagation");
    return cd;
}

IntMatrix load_cartan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open Cartan file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input("malformed Cartan JSON in " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("a") || !j["a"].is_array())
        throw invalid_input("Cartan JSON must be an object with an \"a\" matrix");
    IntMatrix a;
    for (const auto& row : j["a"]) {
        if (!row.is_array()) throw invalid_input("Cartan JSON: \"a\" rows must be arrays");
        std::vector<std::int64_t> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw invalid_input("Cartan JSON: entries must be integers");
            r.push_back(v.get<std::int64_t>());
        }
        a.push_back(std::move(r));
    }
    return a;
}

} // namespace qserre
