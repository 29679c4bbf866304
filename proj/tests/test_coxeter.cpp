#include "catchi/coxeter.hpp"
#include "catchi/model_geometry.hpp"

#include <doctest.h>
#include <json.hpp>

#include <random>
#include <set>

using namespace catchi;

namespace {

std::vector<std::pair<AdeType, int>> all_types()
{
    std::vector<std::pair<AdeType, int>> out;
    for (int n = 1; n <= 8; ++n) out.emplace_back(AdeType::A, n);
    for (int n = 4; n <= 8; ++n) out.emplace_back(AdeType::D, n);
    for (int n = 6; n <= 8; ++n) out.emplace_back(AdeType::E, n);
    return out;
}

// Roots of A_n in simple-root coordinates: +-(a_i + ... + a_j).
std::set<LatticeVector> a_roots(int n)
{
    std::set<LatticeVector> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            LatticeVector v(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
            for (int k = i; k <= j; ++k) {
                v[static_cast<std::size_t>(k)] = 1;
                w[static_cast<std::size_t>(k)] = -1;
            }
            out.insert(v);
            out.insert(w);
        }
    return out;
}

Rational cartan_inner(const GramLattice& g, const LatticeVector& a, const LatticeVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * g(i, j) * b[j];
    return s;
}

// x with <a_i, x> = w_i, via the inverse Cartan matrix.
LatticeVector dual_point(const GramLattice& g, const std::vector<Rational>& w)
{
    const auto inv = inverse(g.gram());
    LatticeVector x(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) x[i] += inv(i, j) * w[j];
    return x;
}

}  // namespace

TEST_CASE("Cartan matrices")
{
    CHECK(determinant(cartan_matrix(AdeType::A, 4).gram()) == 5);
    CHECK(determinant(cartan_matrix(AdeType::D, 6).gram()) == 4);
    CHECK(determinant(cartan_matrix(AdeType::E, 6).gram()) == 3);
    CHECK(determinant(cartan_matrix(AdeType::E, 7).gram()) == 2);
    CHECK(cartan_matrix(AdeType::E, 8).gram() == e8_gram(1).gram());
    for (auto [t, n] : all_types()) CHECK(signature(cartan_matrix(t, n)) == Signature{n, 0, 0});

    CHECK_THROWS_AS(cartan_matrix(AdeType::A, 0), DomainError);
    CHECK_THROWS_AS(cartan_matrix(AdeType::D, 3), DomainError);
    CHECK_THROWS_AS(cartan_matrix(AdeType::E, 9), DomainError);
}

TEST_CASE("ADE labels")
{
    CHECK(parse_ade("E8") == std::pair{AdeType::E, 8});
    CHECK(parse_ade("D4") == std::pair{AdeType::D, 4});
    CHECK(ade_label(AdeType::A, 3) == "A3");
    CHECK_THROWS(parse_ade("E9"));
    CHECK_THROWS(parse_ade("F4"));
    CHECK_THROWS(parse_ade("A"));
    CHECK_THROWS(parse_ade("A3x"));
    CHECK_THROWS(parse_ade(""));
}

TEST_CASE("root counts")
{
    for (auto [t, n] : all_types()) {
        const auto rs = generate_roots(t, n);
        CHECK_MESSAGE(rs.roots.size() == expected_root_count(t, n), rs.label);
        CHECK(rs.rank == n);
        for (const auto& r : rs.roots) CHECK(norm(rs.cartan, r) == 2);
    }
    CHECK(expected_root_count(AdeType::A, 8) == 72u);
    CHECK(expected_root_count(AdeType::D, 5) == 40u);
    CHECK(expected_root_count(AdeType::E, 6) == 72u);
    CHECK(expected_root_count(AdeType::E, 7) == 126u);
    CHECK(expected_root_count(AdeType::E, 8) == 240u);
}

TEST_CASE("type A roots are the contiguous blocks")
{
    for (int n = 1; n <= 8; ++n) {
        const auto rs = generate_roots(AdeType::A, n);
        CHECK(std::set<LatticeVector>(rs.roots.begin(), rs.roots.end()) == a_roots(n));
    }
}

TEST_CASE("closure agrees with norm-2 enumeration")
{
    for (auto [t, n] : all_types()) {
        if (n > 7) continue;
        const auto x = cross_check_with_enumeration(generate_roots(t, n));
        CHECK(x.enumeration_complete);
        CHECK(x.same_set);
        CHECK(x.closure_count == x.enumeration_count);
    }
    const auto e8 = cross_check_with_enumeration(generate_roots(AdeType::E, 8));
    CHECK(e8.same_set);
    CHECK(e8.enumeration_count == 240u);
}

TEST_CASE("E8 highest root has height 29")
{
    const auto rs = generate_roots(AdeType::E, 8);
    LatticeVector best;
    Rational height = -100;
    for (const auto& r : rs.roots) {
        Rational h = 0;
        for (const auto& c : r) h += c;
        if (h > height) height = h, best = r;
    }
    CHECK(height == 29);
    CHECK(best == LatticeVector{2, 3, 4, 6, 5, 4, 3, 2});
}

TEST_CASE("reflections")
{
    const auto rs = generate_roots(AdeType::D, 5);
    const auto& g = rs.cartan;
    for (const auto& a : rs.roots) {
        LatticeVector neg = a;
        for (auto& c : neg) c = -c;
        CHECK(reflect(g, a, a) == neg);
    }
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int i = 0; i < 100; ++i) {
        LatticeVector v(5);
        for (auto& c : v) c = coeff(rng);
        const auto& a = rs.roots[rng() % rs.roots.size()];
        const auto w = reflect(g, a, v);
        CHECK(reflect(g, a, w) == v);
        CHECK(norm(g, w) == norm(g, v));
        if (cartan_inner(g, a, v).is_zero()) CHECK(w == v);
    }
    const auto perp = dual_point(g, {0, 1, 0, 0, 0});
    CHECK(reflect(g, rs.simple[0], perp) == perp);

    RationalMatrix h(2, 2);
    h(0, 1) = h(1, 0) = 1;
    const GramLattice iso(h);
    CHECK_THROWS_AS(reflect(iso, {1, 0}, {0, 1}), DomainError);
}

TEST_CASE("reflection closure, exhaustive for rank <= 4")
{
    for (auto [t, n] : all_types()) {
        if (n > 4) continue;
        const auto rs = generate_roots(t, n);
        const std::set<LatticeVector> all(rs.roots.begin(), rs.roots.end());
        for (const auto& a : rs.roots)
            for (const auto& b : rs.roots) CHECK(all.count(reflect(rs.cartan, a, b)) == 1u);
        CHECK(reflection_closed(rs.cartan, rs.roots));
        auto missing = rs.roots;
        missing.erase(missing.begin() + static_cast<std::ptrdiff_t>(missing.size() / 2));
        CHECK_FALSE(reflection_closed(rs.cartan, missing));
    }
    const auto e8 = generate_roots(AdeType::E, 8);
    CHECK(reflection_closed(e8.cartan, e8.roots));
}

TEST_CASE("local subsystems")
{
    const auto e8 = generate_roots(AdeType::E, 8);
    const auto full = local_subsystem(e8, LatticeVector(8));
    CHECK(full.roots.size() == 240u);
    CHECK(full.rank == 8);

    const auto generic = local_subsystem(e8, dual_point(e8.cartan, {1, 10, 100, 1000, 10000, 100000, 1000000, 10000000}));
    CHECK(generic.roots.empty());
    CHECK(generic.rank == 0);

    const auto one = local_subsystem(e8, dual_point(e8.cartan, {0, 10, 100, 1000, 10000, 100000, 1000000, 10000000}));
    CHECK(one.roots.size() == 2u);
    CHECK(one.rank == 1);

    // Orthogonal to a_1, a_3, a_4, which form an A3 chain.
    const auto a3 = local_subsystem(e8, dual_point(e8.cartan, {0, 7, 0, 0, 100, 1000, 10000, 100000}));
    CHECK(a3.roots.size() == 12u);
    CHECK(a3.rank == 3);

    const LatticeVector x{0, 1, 2, 3, 5, 7, 11, 13};
    const auto loc = local_subsystem(e8, x);
    std::size_t brute = 0;
    for (const auto& r : e8.roots) brute += cartan_inner(e8.cartan, r, x).is_zero();
    CHECK(loc.roots.size() == brute);
    CHECK(loc.roots.size() == 10u);
    CHECK(loc.rank == 4);
    CHECK(loc.label == "local(E8)");
    CHECK(reflection_closed(loc.cartan, loc.roots));

    CHECK_THROWS_AS(local_subsystem(e8, LatticeVector(7)), DimensionError);
}

TEST_CASE("complex mirror membership")
{
    const auto a2 = generate_roots(AdeType::A, 2);
    const auto on = dual_point(a2.cartan, {0, 1});
    const auto also_on = dual_point(a2.cartan, {0, -3});
    const auto off = dual_point(a2.cartan, {1, 1});
    CHECK(complex_mirror_membership(a2.cartan, a2.simple[0], on, also_on));
    CHECK_FALSE(complex_mirror_membership(a2.cartan, a2.simple[0], on, off));
    CHECK_FALSE(complex_mirror_membership(a2.cartan, a2.simple[0], off, on));
    CHECK(complex_mirror_membership(a2.cartan, a2.simple[0], LatticeVector(2), LatticeVector(2)));
}

TEST_CASE("root system JSON")
{
    const auto doc = nlohmann::json::parse(root_system_to_json(generate_roots(AdeType::D, 4)));
    CHECK(doc["type"] == "D4");
    CHECK(doc["rank"] == 4);
    CHECK(doc["roots"].size() == 24u);
    CHECK(doc["roots"][0].size() == 4u);
}
