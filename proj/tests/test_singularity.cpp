#include "catchi/model_geometry.hpp"
#include "catchi/singularity.hpp"

#include <doctest.h>
#include <json.hpp>

#include <chrono>
#include <map>
#include <random>
#include <set>

using namespace catchi;

namespace {

// The T-shaped diagram written out directly: ambient diag(1, -1, ..., -1),
// central root (1; 1, 0..; 1, 0..; 1, 0..), arm roots e_i - e_{i+1} style.
struct Model {
    std::vector<int> arms;
    std::vector<std::vector<Rational>> roots;
    std::vector<int> diag;
    std::map<int, std::size_t> end_of_arm;  // arm -> index of its end root
};

Model build_model(int p, int q, int r)
{
    Model m;
    m.arms = {p, q, r};
    const int dim = 1 + p + q + r;
    m.diag.assign(static_cast<std::size_t>(dim), -1);
    m.diag[0] = 1;
    std::vector<Rational> central(static_cast<std::size_t>(dim));
    central[0] = 1;
    int offset = 1;
    for (int a = 0; a < 3; ++a) {
        central[static_cast<std::size_t>(offset)] = 1;
        offset += m.arms[static_cast<std::size_t>(a)];
    }
    m.roots.push_back(central);
    offset = 1;
    for (int a = 0; a < 3; ++a) {
        const int len = m.arms[static_cast<std::size_t>(a)];
        for (int k = 0; k < len - 1; ++k) {
            std::vector<Rational> v(static_cast<std::size_t>(dim));
            v[static_cast<std::size_t>(offset + k)] = -1;
            v[static_cast<std::size_t>(offset + k + 1)] = 1;
            m.roots.push_back(v);
        }
        m.end_of_arm[a] = m.roots.size() - 1;
        offset += len;
    }
    return m;
}

Rational dot(const Model& m, const std::vector<Rational>& x, const std::vector<Rational>& y)
{
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += m.diag[i] * x[i] * y[i];
    return s;
}

// y in the root span with y.e_plus = 1, y.e_minus = -1, orthogonal to every
// other simple root. Plain Gauss-Jordan on the Gram matrix of the roots.
std::vector<Rational> projection(const Model& m, int plus, int minus)
{
    const std::size_t n = m.roots.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = dot(m, m.roots[i], m.roots[j]);
    a[m.end_of_arm.at(plus)][n] = 1;
    a[m.end_of_arm.at(minus)][n] = -1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (a[piv][col].is_zero()) ++piv;
        std::swap(a[piv], a[col]);
        const Rational inv = 1 / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    std::vector<Rational> y(m.diag.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += a[i][n] * m.roots[i][k];
    return y;
}

std::vector<std::int64_t> brute_alpha(const Rational& lo, const Rational& hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t a = -50; a <= 50; ++a)
        if (lo < a && a < hi) out.push_back(a);
    return out;
}

// Trace of prod [[c_i, -1], [1, 0]].
long long cycle_trace(const CycleSeq& c)
{
    long long a = 1, b = 0, cc = 0, d = 1;
    for (int x : c.entries) {
        const long long na = a * x + b, nb = -a, nc = cc * x + d, nd = -cc;
        a = na, b = nb, cc = nc, d = nd;
    }
    return a + d;
}

int excess(const CycleSeq& c)
{
    int s = 0;
    for (int x : c.entries) s += x - 2;
    return s;
}

}  // namespace

TEST_CASE("Y_{p,q,r} coordinate model")
{
    const auto y235 = ypqr_roots(2, 3, 5);
    CHECK(y235.roots.size() == 8u);
    CHECK(ypqr_roots(2, 3, 7).roots.size() == 10u);
    const auto y333 = ypqr_roots(3, 3, 3);
    CHECK(norm(y333.ambient, y333.roots[0]) == -2);
    CHECK(y333.ambient.rank() == 10u);

    // Matches the directly written model root for root.
    for (auto [p, q, r] : std::vector<std::array<int, 3>>{{2, 3, 7}, {4, 4, 4}, {3, 5, 6}}) {
        const auto y = ypqr_roots(p, q, r);
        const auto m = build_model(p, q, r);
        REQUIRE(y.roots.size() == m.roots.size());
        for (std::size_t i = 0; i < m.roots.size(); ++i) CHECK(y.roots[i] == m.roots[i]);
        CHECK(y.end_root(Arm::q) == m.end_of_arm.at(1));
    }

    CHECK_THROWS_AS(ypqr_roots(1, 3, 7), DomainError);
    CHECK_THROWS_AS(y333.arm_root(Arm::p, 2), DomainError);
}

TEST_CASE("Y_{2,3,5} is E8 up to sign and ordering")
{
    const auto g = ypqr_root_gram(ypqr_roots(2, 3, 5));
    CHECK(signature(g) == signature(e8_gram(-1)));
    CHECK(determinant(g.gram()) == determinant(e8_gram(-1).gram()));
    // Same degree sequence of the diagram.
    std::multiset<int> deg_y, deg_e;
    const auto e8 = e8_gram(-1);
    for (std::size_t i = 0; i < 8; ++i) {
        int a = 0, b = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            a += (i != j && g(i, j) != 0);
            b += (i != j && e8(i, j) != 0);
        }
        deg_y.insert(a);
        deg_e.insert(b);
    }
    CHECK(deg_y == deg_e);
}

TEST_CASE("Weyl signatures")
{
    CHECK(weyl_signature(2, 3, 7) == Signature{1, 0, 9});
    CHECK(weyl_signature(3, 3, 3) == Signature{0, 1, 6});
    CHECK(weyl_signature(2, 3, 5) == Signature{0, 0, 8});
    CHECK(weyl_signature(2, 4, 4) == Signature{0, 1, 7});
    for (int p = 2; p <= 5; ++p)
        for (int q = p; q <= 6; ++q)
            for (int r = q; r <= 8; ++r)
                if (reciprocal_sum(p, q, r) < 1) CHECK(weyl_signature(p, q, r) == Signature{1, 0, p + q + r - 3});
}

TEST_CASE("cores")
{
    const auto c444 = core_nodes(4, 4, 4);
    CHECK(c444.kind == CoreType::Kind::e6);
    CHECK(c444.free_ends.size() == 3u);
    CHECK(c444.nodes.size() == 7u);
    CHECK(to_string(c444.kind) == "E6~");

    const auto c237 = core_nodes(2, 3, 7);
    CHECK(c237.kind == CoreType::Kind::e8);
    REQUIRE(c237.free_ends.size() == 1u);
    CHECK(c237.free_ends[0] == Arm::r);
    CHECK(c237.nodes.size() == 9u);

    const auto c245 = core_nodes(2, 4, 5);
    CHECK(c245.kind == CoreType::Kind::e7);
    REQUIRE(c245.free_ends.size() == 1u);
    CHECK(c245.free_ends[0] == Arm::r);

    // Arms in any order.
    const auto c524 = core_nodes(5, 2, 4);
    CHECK(c524.kind == CoreType::Kind::e7);
    REQUIRE(c524.free_ends.size() == 1u);
    CHECK(c524.free_ends[0] == Arm::p);

    CHECK_THROWS_AS(core_nodes(2, 3, 5), DomainError);
    CHECK_FALSE(try_core_nodes(2, 3, 5).has_value());
    CHECK_FALSE(try_core_nodes(2, 2, 9).has_value());
}

TEST_CASE("E-set types")
{
    CHECK(eset_types(4, 4, 4).size() == 6u);
    CHECK(eset_types(2, 3, 7).empty());
    const auto t = eset_types(4, 4, 6);
    CHECK(std::find(t.begin(), t.end(), ETypePair{Arm::p, Arm::q}) != t.end());
    CHECK(to_string(ETypePair{Arm::p, Arm::q}) == "(p+,q-)");
    CHECK(same_type({Arm::p, Arm::q}, {Arm::q, Arm::p}));
    CHECK_FALSE(same_type({Arm::p, Arm::q}, {Arm::q, Arm::r}));
}

TEST_CASE("projections at (4,4,4)")
{
    const auto y = y_projection(4, 4, 4, {Arm::p, Arm::q});
    CHECK(y.cross_checked);
    CHECK(y.norm == Rational(-3, 2));
    const LatticeVector expected{0, Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(-3, 4),
                                 Rational(-1, 4), Rational(-1, 4), Rational(-1, 4), Rational(3, 4),
                                 0, 0, 0, 0};
    CHECK(y.y == expected);
    CHECK(y_projection_closed_form(4, 4, 4, {Arm::p, Arm::q}) == expected);

    const auto y2 = y_projection(4, 4, 4, {Arm::q, Arm::r});
    CHECK(inner(ypqr_roots(4, 4, 4).ambient, y.y, y2.y) == Rational(3, 4));
    CHECK(n_plus_2(4, 4, 4, {Arm::p, Arm::q}) == Rational(1, 2));
}

TEST_CASE("projections against an independent solve")
{
    for (int p = 2; p <= 8; ++p)
        for (int q = 2; q <= 8; ++q)
            for (int r = 2; r <= 8; ++r) {
                if (reciprocal_sum(p, q, r) >= 1 || p + q + r > 14) continue;
                const auto m = build_model(p, q, r);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        if (a == b) continue;
                        const ETypePair t{static_cast<Arm>(a), static_cast<Arm>(b)};
                        const auto ref = projection(m, a, b);
                        const auto y = y_projection(p, q, r, t);
                        REQUIRE(y.y == ref);
                        CHECK(y.norm == dot(m, ref, ref));
                        CHECK(n_plus_2(p, q, r, t) == 2 + dot(m, ref, ref));
                    }
            }
}

TEST_CASE("2 + N closed form")
{
    for (int p = 2; p <= 10; ++p)
        for (int r = 2; 2 * p + r <= 22; ++r) {
            if (reciprocal_sum(p, p, r) >= 1) continue;
            CHECK(n_plus_2(p, p, r, {Arm::p, Arm::q}) == Rational(2, p));
        }
    CHECK(n_plus_2(4, 5, 2, {Arm::p, Arm::q}) == Rational(1, 2));
    CHECK_THROWS_AS(n_plus_2(3, 3, 3, {Arm::p, Arm::q}), DomainError);
    CHECK_THROWS_AS(y_projection(4, 4, 4, {Arm::p, Arm::p}), DomainError);
}

TEST_CASE("alpha ranges")
{
    CHECK(integers_between(Rational(-2), Rational(1, 2)) == std::vector<std::int64_t>{-1, 0});
    CHECK(integers_between(Rational(3), Rational(3)).empty());
    CHECK(integers_between(Rational(-1, 3), Rational(2)) == std::vector<std::int64_t>{0, 1});

    CHECK(alpha_range_same_type(4, 4, 4, {Arm::p, Arm::q}).empty());
    CHECK(alpha_range_same_type(4, 5, 2, {Arm::p, Arm::q}).empty());
    // 2 + 2N = 4 when N = 1.
    CHECK(same_type_alpha_set(Rational(1)) == std::vector<std::int64_t>{-1, 0, 1, 2, 3});

    CHECK(alpha_range_cross_type(4, 4, 4, {Arm::p, Arm::q}, {Arm::q, Arm::r}) == std::vector<std::int64_t>{1});
    CHECK_THROWS_AS(alpha_range_cross_type(4, 4, 4, {Arm::p, Arm::q}, {Arm::q, Arm::p}), DomainError);
}

TEST_CASE("third type identity")
{
    const auto t = third_type_identity(4, 4, 4, {Arm::p, Arm::q}, {Arm::q, Arm::r});
    CHECK(t.third == ETypePair{Arm::r, Arm::p});
    CHECK(t.projection_matches);
    CHECK(t.norm_at_alpha_one == -2);
    CHECK_THROWS_AS(third_type_identity(4, 4, 4, {Arm::p, Arm::q}, {Arm::r, Arm::q}), DomainError);
}

TEST_CASE("alpha analysis against brute force")
{
    const auto report = verify_alpha_one(22);
    CHECK(report.all_ok());
    CHECK_FALSE(report.cases.empty());
    for (const auto& c : report.cases) {
        const auto m = build_model(c.p, c.q, c.r);
        std::map<std::pair<Arm, Arm>, std::vector<Rational>> cache;
        const auto proj = [&](const ETypePair& t) -> const std::vector<Rational>& {
            auto [it, fresh] = cache.try_emplace({t.plus, t.minus});
            if (fresh) it->second = projection(m, static_cast<int>(t.plus), static_cast<int>(t.minus));
            return it->second;
        };
        for (const auto& s : c.same_pairs) {
            const auto& y = proj(s.type);
            const Rational two_plus_n = 2 + dot(m, y, y);
            CHECK(two_plus_n > 0);
            CHECK(two_plus_n <= Rational(1, 2));
            CHECK(s.alpha == brute_alpha(Rational(-2), 2 + 2 * (two_plus_n - 2)));
        }
        for (const auto& x : c.cross_pairs) {
            const auto& y1 = proj(x.t1);
            const auto& y2 = proj(x.t2);
            const Rational a = -2 - dot(m, y1, y1), d = -2 - dot(m, y2, y2), prod = dot(m, y1, y2);
            CHECK(x.product == prod);
            std::vector<std::int64_t> ok;
            for (std::int64_t alpha = -50; alpha <= 50; ++alpha) {
                const Rational off = alpha - prod;
                if (a < 0 && a * d - off * off > 0) ok.push_back(alpha);
            }
            CHECK(x.alpha == ok);
            CHECK(ok == std::vector<std::int64_t>{1});
        }
    }
}

TEST_CASE("alpha report enumeration")
{
    const auto full = verify_alpha_one(22);
    const auto small = verify_alpha_one(12);
    std::set<std::array<int, 3>> big;
    for (const auto& c : full.cases) big.insert({c.p, c.q, c.r});
    for (const auto& c : small.cases) CHECK(big.count({c.p, c.q, c.r}) == 1u);
    CHECK(small.cases.size() < full.cases.size());

    const auto doc = nlohmann::json::parse(full.to_json());
    REQUIRE(doc.is_array());
    CHECK(doc.size() == full.cases.size());
    CHECK(doc[0].contains("cross_pairs"));
    CHECK(doc[0].contains("free_ends"));

    // Exceptional triples: (4,4,4) alone has all three ends free.
    int three_free = 0;
    for (const auto& e : table1()) {
        const auto& d = e.dolgachev;
        const auto core = try_core_nodes(d[0], d[1], d[2]);
        if (core && core->free_ends.size() == 3) {
            ++three_free;
            CHECK(d == std::array<int, 3>{4, 4, 4});
        }
    }
    CHECK(three_free == 1);

    const auto t0 = std::chrono::steady_clock::now();
    verify_alpha_one(22);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 10.0);
}

TEST_CASE("monomials")
{
    CHECK(parse_monomial("x^2z") == Monomial{2, 0, 1});
    CHECK(parse_monomial("xy^4") == Monomial{1, 4, 0});
    CHECK(parse_monomial("1") == Monomial{0, 0, 0});
    CHECK(parse_monomial("z^12") == Monomial{0, 0, 12});
    CHECK(to_string(Monomial{2, 0, 1}) == "x^2z");
    CHECK(parse_polynomial("x^2z+y^3+z^4").size() == 3u);
    CHECK_THROWS_AS(parse_monomial("w^2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_monomial("x^"), std::invalid_argument);
    CHECK_THROWS_AS(parse_monomial(""), std::invalid_argument);
}

TEST_CASE("quasihomogeneity of the exceptional table")
{
    const auto rows = table1();
    REQUIRE(rows.size() == 14u);
    CHECK(table1_version() == "1");
    for (const auto& e : rows) {
        const auto w = check_weights(e);
        CHECK_MESSAGE(w.ok, e.label);
        CHECK(w.lambda_degree > e.degree);
        for (const auto& m : e.f) CHECK(weighted_degree(m, e.weights) == e.degree);
    }
    const auto q10 = *std::find_if(rows.begin(), rows.end(), [](const auto& e) { return e.label == "Q10"; });
    CHECK(check_weights(q10).degrees == std::vector<int>{24, 24, 24});
    CHECK(check_weights(q10).lambda_degree == 26);
    const auto e12 = *std::find_if(rows.begin(), rows.end(), [](const auto& e) { return e.label == "E12"; });
    CHECK(check_weights(e12).lambda_degree == 44);

    auto bad = q10;
    bad.degree = 23;
    const auto w = check_weights(bad);
    CHECK_FALSE(w.ok);
    CHECK(w.offending.size() == 3u);

    auto no_weight = q10;
    no_weight.weights[1] = 0;
    CHECK_THROWS_AS(check_weights(no_weight), std::invalid_argument);
}

TEST_CASE("cycle basics")
{
    CHECK(CycleSeq({2, 3, 2}).normalized() == CycleSeq({2, 2, 3}));
    CHECK(rotation_equal(CycleSeq({3, 2}), CycleSeq({2, 3})));
    CHECK_FALSE(rotation_equal(CycleSeq({3, 2, 2}), CycleSeq({3, 2})));
    CHECK(to_string(CycleSeq({3, 2, 2})) == "(3,2,2)");

    CHECK(adjust_cycle(CycleSeq({1}), CycleAdjust::raw_to_zykel) == CycleSeq({3}));
    CHECK(adjust_cycle(CycleSeq({3}), CycleAdjust::zykelstar_to_d) == CycleSeq({1}));
    CHECK(adjust_cycle(CycleSeq({3, 2, 2}), CycleAdjust::raw_to_zykel) == CycleSeq({3, 2, 2}));
    CHECK_THROWS_AS(adjust_cycle(CycleSeq({2}), CycleAdjust::zykelstar_to_d), DomainError);
    CHECK_THROWS_AS(adjust_cycle(CycleSeq{}, CycleAdjust::raw_to_zykel), DomainError);
}

TEST_CASE("dual cycles")
{
    CHECK(dual_cycle(CycleSeq({3, 2, 2})) == CycleSeq({5}));
    for (int r = 8; r <= 12; ++r) {
        std::vector<int> c{3};
        c.insert(c.end(), static_cast<std::size_t>(r - 7), 2);
        CHECK(dual_cycle(CycleSeq(c)) == CycleSeq({r - 4}));
    }
    CHECK(rotation_equal(dual_cycle(CycleSeq({3, 3, 2})), CycleSeq({3, 4})));
    CHECK(rotation_equal(dual_cycle(CycleSeq({3, 3, 2, 3, 2, 2})), CycleSeq({3, 4, 5})));
    CHECK_THROWS_AS(dual_cycle(CycleSeq({2, 2, 2})), DomainError);
    CHECK_THROWS_AS(dual_cycle(CycleSeq({1, 3})), DomainError);
    CHECK_THROWS_AS(dual_cycle(CycleSeq{}), DomainError);
}

TEST_CASE("duality is an involution that swaps length and excess, exhaustive to length 7")
{
    std::size_t checked = 0;
    for (std::size_t len = 1; len <= 7; ++len) {
        std::vector<int> c(len, 2);
        while (true) {
            const CycleSeq seq(c);
            if (excess(seq) > 0 && seq.normalized() == seq) {
                const auto d = dual_cycle(seq);
                REQUIRE(dual_cycle(d) == seq);
                REQUIRE(static_cast<int>(d.size()) == excess(seq));
                REQUIRE(excess(d) == static_cast<int>(seq.size()));
                REQUIRE(cycle_trace(d) == cycle_trace(seq));
                ++checked;
            }
            std::size_t i = 0;
            while (i < len && c[i] == 9) c[i++] = 2;
            if (i == len) break;
            ++c[i];
        }
    }
    CHECK(checked > 100000u);
}

TEST_CASE("duality is an involution on random cycles of length 8 to 10")
{
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<int> entry(2, 9), len(8, 10);
    for (int trial = 0; trial < 20000; ++trial) {
        std::vector<int> c(static_cast<std::size_t>(len(rng)));
        for (auto& x : c) x = entry(rng);
        const CycleSeq seq(c);
        if (excess(seq) == 0) continue;
        const auto d = dual_cycle(seq);
        REQUIRE(rotation_equal(dual_cycle(d), seq));
        REQUIRE(cycle_trace(d) == cycle_trace(seq));
    }
}

TEST_CASE("cusp table rows")
{
    CHECK(table2_version() == "1");
    const auto r237 = cusp_row(2, 3, 7);
    CHECK(r237.c == CycleSeq({1}));
    CHECK(r237.c_prime == CycleSeq({3}));
    CHECK(r237.d_prime == CycleSeq({3}));
    CHECK(r237.d == CycleSeq({1}));
    CHECK(r237.single_entry);

    const auto r245 = cusp_row(2, 4, 5);
    CHECK(r245.c == CycleSeq({2}));
    CHECK(r245.c_prime == CycleSeq({4}));
    CHECK(rotation_equal(r245.d_prime, CycleSeq({2, 3})));
    CHECK(rotation_equal(r245.d, CycleSeq({2, 3})));

    const auto r334 = cusp_row(3, 3, 4);
    CHECK(r334.c == CycleSeq({3}));
    CHECK(r334.c_prime == CycleSeq({5}));
    CHECK(rotation_equal(r334.d_prime, CycleSeq({2, 2, 3})));

    const auto r456 = cusp_row(4, 5, 6);
    CHECK(r456.family == "p,q,r");
    CHECK(rotation_equal(r456.d_prime, CycleSeq({3, 4, 5})));
    CHECK(cusp_row(2, 3, 9).family == "2,3,r");
    CHECK(rotation_equal(cusp_row(2, 3, 9).d, CycleSeq({3})));

    CHECK_THROWS_AS(cusp_row(2, 3, 6), DomainError);
    CHECK_THROWS_AS(cusp_row(3, 2, 7), DomainError);
}

TEST_CASE("every cusp row with p + q + r <= 22 is consistent")
{
    int rows = 0, single = 0;
    for (int p = 2; 3 * p <= 22; ++p)
        for (int q = p; p + 2 * q <= 22; ++q)
            for (int r = q; p + q + r <= 22; ++r) {
                if (p + q + r < 7 || reciprocal_sum(p, q, r) >= 1) continue;
                const auto row = cusp_row(p, q, r);
                ++rows;
                single += row.single_entry;
                CHECK(rotation_equal(dual_cycle(row.d_prime), row.c_prime));
                CHECK(cycle_trace(row.d_prime) == cycle_trace(row.c_prime));
                // Raw cycle entries are at least 1; adjusted ones at least 2.
                for (int x : row.c_prime.entries) CHECK(x >= 2);
            }
    CHECK(rows > 100);
    CHECK(single >= 3);
}
