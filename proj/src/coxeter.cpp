#include "catchi/coxeter.hpp"

#include "catchi/model_geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

namespace catchi {

std::string ade_label(AdeType type, int rank)
{
    const char* letter = type == AdeType::A ? "A" : type == AdeType::D ? "D" : "E";
    return letter + std::to_string(rank);
}

std::pair<AdeType, int> parse_ade(const std::string& label)
{
    if (label.size() < 2) throw DomainError("bad root system label \"" + label + "\"");
    AdeType type;
    switch (label[0]) {
    case 'A': case 'a': type = AdeType::A; break;
    case 'D': case 'd': type = AdeType::D; break;
    case 'E': case 'e': type = AdeType::E; break;
    default: throw DomainError("only A, D and E root systems are supported, got \"" + label + "\"");
    }
    int rank = 0;
    try {
        std::size_t used = 0;
        rank = std::stoi(label.substr(1), &used);
        if (used != label.size() - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw DomainError("bad root system label \"" + label + "\"");
    }
    cartan_matrix(type, rank);
    return {type, rank};
}

GramLattice cartan_matrix(AdeType type, int rank)
{
    const bool ok = (type == AdeType::A && rank >= 1) || (type == AdeType::D && rank >= 4) ||
                    (type == AdeType::E && rank >= 6 && rank <= 8);
    if (!ok) throw DomainError("no root system " + ade_label(type, rank));
    const auto n = static_cast<std::size_t>(rank);
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
    auto bond = [&](std::size_t i, std::size_t j) { m(i, j) = m(j, i) = -1; };
    switch (type) {
    case AdeType::A:
        for (std::size_t i = 0; i + 1 < n; ++i) bond(i, i + 1);
        break;
    case AdeType::D:
        for (std::size_t i = 0; i + 2 < n; ++i) bond(i, i + 1);
        bond(n - 3, n - 1);
        break;
    case AdeType::E:
        bond(0, 2);
        for (std::size_t i = 2; i + 1 < n; ++i) bond(i, i + 1);
        bond(1, 3);
        break;
    }
    std::vector<std::string> labels;
    for (int i = 1; i <= rank; ++i) labels.push_back("a" + std::to_string(i));
    return GramLattice(std::move(m), std::move(labels));
}

std::size_t expected_root_count(AdeType type, int rank)
{
    const auto n = static_cast<std::size_t>(rank);
    switch (type) {
    case AdeType::A: return n * (n + 1);
    case AdeType::D: return 2 * n * (n - 1);
    case AdeType::E: return rank == 6 ? 72 : rank == 7 ? 126 : 240;
    }
    return 0;
}

LatticeVector reflect(const GramLattice& g, const LatticeVector& root, const LatticeVector& v)
{
    const Rational rr = norm(g, root);
    if (rr.is_zero()) throw DomainError("cannot reflect in an isotropic or zero vector");
    const Rational f = 2 * inner(g, v, root) / rr;
    LatticeVector out = v;
    if (!f.is_zero())
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= f * root[i];
    return out;
}

namespace {

using IntVector = std::vector<long long>;

bool small_integer(const Rational& x)
{
    return boost::multiprecision::denominator(x) == 1 && abs(x) < Rational(1'000'000);
}

std::optional<IntVector> to_small_ints(const LatticeVector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!small_integer(v[i])) return std::nullopt;
        out[i] = static_cast<long long>(boost::multiprecision::numerator(v[i]));
    }
    return out;
}

// Same test in machine integers; nullopt if the data are not small integers.
std::optional<bool> integral_reflection_closed(const GramLattice& g, const std::vector<LatticeVector>& roots)
{
    const std::size_t n = g.rank();
    std::vector<IntVector> gram;
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = g(i, j);
        auto r = to_small_ints(row);
        if (!r) return std::nullopt;
        gram.push_back(std::move(*r));
    }
    std::vector<IntVector> rs;
    for (const auto& r : roots) {
        if (r.size() != n) throw DimensionError("vector length does not match the Gram matrix");
        auto v = to_small_ints(r);
        if (!v) return std::nullopt;
        rs.push_back(std::move(*v));
    }
    const std::set<IntVector> set(rs.begin(), rs.end());
    for (const auto& a : rs) {
        IntVector ga(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ga[i] += gram[i][j] * a[j];
        long long aa = 0;
        for (std::size_t i = 0; i < n; ++i) aa += a[i] * ga[i];
        if (aa == 0) throw DomainError("cannot reflect in an isotropic or zero vector");
        for (const auto& b : rs) {
            long long ab = 0;
            for (std::size_t i = 0; i < n; ++i) ab += ga[i] * b[i];
            if (ab == 0) continue;
            if ((2 * ab) % aa != 0) return false;
            const long long f = 2 * ab / aa;
            IntVector w = b;
            for (std::size_t i = 0; i < n; ++i) w[i] -= f * a[i];
            if (!set.count(w)) return false;
        }
    }
    return true;
}

}  // namespace

bool reflection_closed(const GramLattice& g, const std::vector<LatticeVector>& roots)
{
    if (const auto fast = integral_reflection_closed(g, roots)) return *fast;

    const std::set<LatticeVector> set(roots.begin(), roots.end());
    const std::size_t n = g.rank();
    for (const auto& a : roots) {
        if (a.size() != n) throw DimensionError("vector length does not match the Gram matrix");
        LatticeVector ga(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!g(i, j).is_zero() && !a[j].is_zero()) ga[i] += g(i, j) * a[j];
        Rational aa = 0;
        for (std::size_t i = 0; i < n; ++i) aa += a[i] * ga[i];
        if (aa.is_zero()) throw DomainError("cannot reflect in an isotropic or zero vector");
        for (const auto& b : roots) {
            Rational ab = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (!ga[i].is_zero() && !b[i].is_zero()) ab += ga[i] * b[i];
            if (ab.is_zero()) continue;
            const Rational f = 2 * ab / aa;
            LatticeVector w = b;
            for (std::size_t i = 0; i < n; ++i) w[i] -= f * a[i];
            if (!set.count(w)) return false;
        }
    }
    return true;
}

namespace {

std::size_t span_rank(const std::vector<LatticeVector>& vs, std::size_t dim)
{
    if (vs.empty()) return 0;
    RationalMatrix m(vs.size(), dim);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
    return dim - null_space(m).size();
}

}  // namespace

RootSystem generate_roots(AdeType type, int rank)
{
    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    rs.label = ade_label(type, rank);
    rs.cartan = cartan_matrix(type, rank);
    const auto n = static_cast<std::size_t>(rank);
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector e(n);
        e[i] = 1;
        rs.simple.push_back(std::move(e));
    }

    std::set<LatticeVector> seen(rs.simple.begin(), rs.simple.end());
    std::deque<LatticeVector> queue(rs.simple.begin(), rs.simple.end());
    while (!queue.empty()) {
        const LatticeVector v = queue.front();
        queue.pop_front();
        for (const auto& s : rs.simple) {
            LatticeVector w = reflect(rs.cartan, s, v);
            if (seen.insert(w).second) queue.push_back(std::move(w));
        }
    }
    rs.roots.assign(seen.begin(), seen.end());
    return rs;
}

RootSystem local_subsystem(const RootSystem& rs, const LatticeVector& x)
{
    if (x.size() != rs.cartan.rank()) throw DimensionError("point dimension does not match the root system");
    RootSystem out;
    out.type = rs.type;
    out.label = "local(" + rs.label + ")";
    out.cartan = rs.cartan;
    for (const auto& a : rs.roots)
        if (inner(rs.cartan, a, x) == 0) out.roots.push_back(a);
    if (!reflection_closed(out.cartan, out.roots))
        throw InvariantViolation("roots orthogonal to a point are not reflection-closed");
    out.rank = static_cast<int>(span_rank(out.roots, rs.cartan.rank()));
    return out;
}

bool complex_mirror_membership(const GramLattice& g, const LatticeVector& root, const LatticeVector& re,
                               const LatticeVector& im)
{
    return inner(g, root, re) == 0 && inner(g, root, im) == 0;
}

EnumerationCrossCheck cross_check_with_enumeration(const RootSystem& rs)
{
    EnumerationCrossCheck out;
    out.closure_count = rs.roots.size();
    const auto bound = norm_box_bound(rs.cartan, 2);
    const auto found = enumerate_norm_vectors(rs.cartan, 2, bound);
    out.enumeration_count = found.vectors.size();
    out.enumeration_complete = found.complete;
    std::set<LatticeVector> a(rs.roots.begin(), rs.roots.end());
    std::set<LatticeVector> b;
    for (const auto& v : found.vectors) b.insert(to_rational(v));
    out.same_set = a == b;
    return out;
}

std::string root_system_to_json(const RootSystem& rs)
{
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : rs.roots) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : r) {
            if (boost::multiprecision::denominator(x) == 1)
                row.push_back(static_cast<long long>(boost::multiprecision::numerator(x)));
            else
                row.push_back(to_string(x));
        }
        roots.push_back(std::move(row));
    }
    return nlohmann::json{{"type", rs.label}, {"rank", rs.rank}, {"roots", roots}}.dump();
}

}  // namespace catchi
