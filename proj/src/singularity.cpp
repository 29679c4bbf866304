#include "catchi/singularity.hpp"

#include "catchi/embedded_data.hpp"
#include "catchi/model_geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace catchi {

namespace {

constexpr std::array<Arm, 3> kArms{Arm::p, Arm::q, Arm::r};

std::size_t idx(Arm a) { return static_cast<std::size_t>(a); }

Integer floor_div(const Rational& x)
{
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    Integer q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

Integer ceil_div(const Rational& x) { return -floor_div(-x); }

}  // namespace

std::string to_string(Arm arm)
{
    switch (arm) {
    case Arm::p: return "p";
    case Arm::q: return "q";
    case Arm::r: return "r";
    }
    return "?";
}

// ---------------------------------------------------------------------------

std::size_t Ypqr::block_start(Arm a) const
{
    std::size_t start = 1;
    for (Arm b : kArms) {
        if (b == a) return start;
        start += static_cast<std::size_t>(arm_length(b));
    }
    return start;
}

std::size_t Ypqr::arm_root(Arm a, int k) const
{
    if (k < 0 || k > arm_length(a) - 2) throw DomainError("arm root index out of range");
    std::size_t index = 1;
    for (Arm b : kArms) {
        if (b == a) return index + static_cast<std::size_t>(k);
        index += static_cast<std::size_t>(arm_length(b) - 1);
    }
    return index;
}

Ypqr ypqr_roots(int p, int q, int r)
{
    if (p < 2 || q < 2 || r < 2) throw DomainError("Y_{p,q,r} needs p, q, r >= 2");
    Ypqr y;
    y.arms = {p, q, r};
    const std::size_t dim = static_cast<std::size_t>(1 + p + q + r);
    std::vector<Rational> diag(dim, Rational(-1));
    diag[0] = 1;
    y.ambient = diagonal_gram(diag);

    LatticeVector central(dim);
    central[0] = 1;
    for (Arm a : kArms) central[y.block_start(a)] = 1;
    y.roots.push_back(central);
    y.labels.push_back("c");
    for (Arm a : kArms) {
        const std::size_t start = y.block_start(a);
        for (int k = 0; k + 1 < y.arm_length(a); ++k) {
            LatticeVector v(dim);
            v[start + static_cast<std::size_t>(k)] = -1;
            v[start + static_cast<std::size_t>(k) + 1] = 1;
            y.roots.push_back(std::move(v));
            y.labels.push_back(to_string(a) + std::to_string(k + 1));
        }
    }

    // Diagram edges: center to the first root of each arm, and consecutive roots.
    const std::size_t n = y.roots.size();
    std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
    for (Arm a : kArms) {
        for (int k = 0; k + 2 < y.arm_length(a); ++k) {
            const auto i = y.arm_root(a, k), j = y.arm_root(a, k + 1);
            adjacent[i][j] = adjacent[j][i] = true;
        }
        if (y.arm_length(a) >= 2) {
            const auto j = y.arm_root(a, 0);
            adjacent[0][j] = adjacent[j][0] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Rational expected = i == j ? Rational(-2) : Rational(adjacent[i][j] ? 1 : 0);
            if (inner(y.ambient, y.roots[i], y.roots[j]) != expected)
                throw InvariantViolation("Y_{p,q,r} coordinate model has a wrong inner product at " +
                                         y.labels[i] + "." + y.labels[j]);
        }
    return y;
}

GramLattice ypqr_root_gram(const Ypqr& y)
{
    GramLattice g = restricted_gram(y.ambient, y.roots);
    return GramLattice(g.gram(), y.labels);
}

Signature weyl_signature(int p, int q, int r) { return signature(ypqr_root_gram(ypqr_roots(p, q, r))); }

Rational reciprocal_sum(int p, int q, int r) { return Rational(1, p) + Rational(1, q) + Rational(1, r); }

// ---------------------------------------------------------------------------

std::string to_string(CoreType::Kind kind)
{
    switch (kind) {
    case CoreType::Kind::e6: return "E6~";
    case CoreType::Kind::e7: return "E7~";
    case CoreType::Kind::e8: return "E8~";
    }
    return "?";
}

std::optional<CoreType> try_core_nodes(int p, int q, int r)
{
    const Ypqr y = ypqr_roots(p, q, r);
    std::array<Arm, 3> order = kArms;
    std::stable_sort(order.begin(), order.end(),
                     [&](Arm a, Arm b) { return y.arm_length(a) < y.arm_length(b); });
    const int s0 = y.arm_length(order[0]), s1 = y.arm_length(order[1]), s2 = y.arm_length(order[2]);

    CoreType core;
    std::array<int, 3> sorted_core{};
    if (s0 >= 3) {
        core.kind = CoreType::Kind::e6;
        sorted_core = {3, 3, 3};
    } else if (s1 >= 4) {
        core.kind = CoreType::Kind::e7;
        sorted_core = {2, 4, 4};
    } else if (s1 >= 3 && s2 >= 6) {
        core.kind = CoreType::Kind::e8;
        sorted_core = {2, 3, 6};
    } else {
        return std::nullopt;
    }
    for (std::size_t k = 0; k < 3; ++k) core.core_arms[idx(order[k])] = sorted_core[k];

    core.nodes.push_back(0);
    for (Arm a : kArms)
        for (int k = 0; k + 1 < core.core_arms[idx(a)]; ++k) core.nodes.push_back(y.arm_root(a, k));
    std::sort(core.nodes.begin(), core.nodes.end());
    for (Arm a : kArms)
        if (y.arm_length(a) > core.core_arms[idx(a)]) core.free_ends.push_back(a);
    return core;
}

CoreType core_nodes(int p, int q, int r)
{
    auto core = try_core_nodes(p, q, r);
    if (!core)
        throw DomainError("Y_{" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) +
                          "} contains no affine E6, E7 or E8 diagram");
    return *core;
}

std::string to_string(const ETypePair& t) { return "(" + to_string(t.plus) + "+," + to_string(t.minus) + "-)"; }

bool same_type(const ETypePair& a, const ETypePair& b)
{
    return (a.plus == b.plus && a.minus == b.minus) || (a.plus == b.minus && a.minus == b.plus);
}

std::vector<ETypePair> eset_types(int p, int q, int r)
{
    const CoreType core = core_nodes(p, q, r);
    std::vector<ETypePair> out;
    for (Arm e : core.free_ends)
        for (Arm f : core.free_ends)
            if (e != f) out.push_back({e, f});
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_type(const ETypePair& t)
{
    if (t.plus == t.minus) throw DomainError("an E-set type needs two distinct ends");
}

void require_hyperbolic(int p, int q, int r)
{
    if (reciprocal_sum(p, q, r) >= 1) throw DomainError("needs 1/p + 1/q + 1/r < 1");
}

Arm third_arm(Arm a, Arm b)
{
    for (Arm c : kArms)
        if (c != a && c != b) return c;
    throw DomainError("no third arm");
}

}  // namespace

namespace {

LatticeVector closed_form(const Ypqr& y, const ETypePair& type)
{
    require_type(type);
    const Rational sigma = reciprocal_sum(y.p(), y.q(), y.r());
    if (sigma == 1) throw DomainError("closed form undefined when 1/p + 1/q + 1/r = 1");
    const Arm zarm = third_arm(type.plus, type.minus);
    const int x = y.arm_length(type.plus), yy = y.arm_length(type.minus), z = y.arm_length(zarm);

    const Rational a = (Rational(1, x) - Rational(1, yy)) / (1 - sigma);
    const Rational b = (a + 1) / x;
    const Rational c = (a - 1) / yy;
    const Rational d = a / z;

    LatticeVector v(y.ambient.rank());
    v[0] = a;
    auto fill = [&](Arm arm, const Rational& value, const Rational& last_shift) {
        const std::size_t start = y.block_start(arm);
        const auto len = static_cast<std::size_t>(y.arm_length(arm));
        for (std::size_t k = 0; k < len; ++k) v[start + k] = value;
        v[start + len - 1] += last_shift;
    };
    fill(type.plus, b, -1);
    fill(type.minus, c, 1);
    fill(zarm, d, 0);
    return v;
}

}  // namespace

LatticeVector y_projection_closed_form(int p, int q, int r, const ETypePair& type)
{
    return closed_form(ypqr_roots(p, q, r), type);
}

namespace {

YProjection project(const Ypqr& y, const ETypePair& type)
{
    require_type(type);
    if (reciprocal_sum(y.p(), y.q(), y.r()) == 1)
        throw DomainError("projection undefined when 1/p + 1/q + 1/r = 1");

    std::vector<InnerTarget> targets;
    targets.reserve(y.roots.size());
    const std::size_t plus = y.end_root(type.plus), minus = y.end_root(type.minus);
    for (std::size_t i = 0; i < y.roots.size(); ++i) {
        const Rational value = i == plus ? Rational(1) : i == minus ? Rational(-1) : Rational(0);
        targets.push_back({y.roots[i], value});
    }
    YProjection out;
    out.y = solve_gram(y.ambient, targets);
    if (out.y != closed_form(y, type))
        throw InvariantViolation("linear solve and closed form disagree for type " + to_string(type));
    out.cross_checked = true;
    out.norm = norm(y.ambient, out.y);
    return out;
}

Rational n_plus_2_of(const Ypqr& y, const ETypePair& type, const YProjection& proj)
{
    const Rational ix(1, y.arm_length(type.plus));
    const Rational iy(1, y.arm_length(type.minus));
    const Rational closed = (ix - iy) * (ix - iy) / (1 - reciprocal_sum(y.p(), y.q(), y.r())) + ix + iy;
    const Rational direct = 2 + proj.norm;
    if (direct != closed) throw InvariantViolation("2 + N closed form disagrees with the projection norm");
    if (direct <= 0) throw InvariantViolation("2 + N is not positive for type " + to_string(type));
    return direct;
}

// Projections of one Y_{p,q,r}, computed once per ordered type.
class ProjectionCache {
public:
    ProjectionCache(int p, int q, int r) : y_(ypqr_roots(p, q, r)) {}

    const Ypqr& y() const { return y_; }

    const YProjection& get(const ETypePair& t)
    {
        auto& slot = cache_[idx(t.plus)][idx(t.minus)];
        if (!slot) slot = project(y_, t);
        return *slot;
    }

    Rational n_plus_2(const ETypePair& t)
    {
        require_hyperbolic(y_.p(), y_.q(), y_.r());
        return n_plus_2_of(y_, t, get(t));
    }

    std::vector<std::int64_t> cross(const ETypePair& t1, const ETypePair& t2)
    {
        require_type(t1);
        require_type(t2);
        if (same_type(t1, t2)) throw DomainError("cross-type analysis needs two different types");
        const Rational s1 = n_plus_2(t1);
        const Rational s2 = n_plus_2(t2);
        const Rational product = inner(y_.ambient, get(t1).y, get(t2).y);

        // Both diagonal entries -2-N are negative, so negative definiteness is
        // exactly (alpha - P)^2 < (2+N1)(2+N2).
        const Rational bound = s1 * s2;
        const Integer reach = boost::multiprecision::sqrt(ceil_div(bound)) + 1;
        std::vector<std::int64_t> out;
        for (Integer k = floor_div(product) - reach; k <= ceil_div(product) + reach; ++k) {
            const Rational off = Rational(k) - product;
            if (off * off < bound) out.push_back(static_cast<std::int64_t>(k));
        }
        return out;
    }

    ThirdType third(const ETypePair& t1, const ETypePair& t2)
    {
        if (t1.minus != t2.plus || t1.plus == t2.minus)
            throw DomainError("third-type identity needs types (A+,B-) and (B+,C-) with A, B, C distinct");
        ThirdType out;
        out.third = {t2.minus, t1.plus};
        const LatticeVector& y1 = get(t1).y;
        const LatticeVector& y2 = get(t2).y;
        const LatticeVector& y3 = get(out.third).y;
        LatticeVector sum(y1.size());
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = -y1[i] - y2[i];
        out.projection_matches = sum == y3;
        // (-y - y')^2 = y^2 + 2 y.y' + y'^2 with full norms -2 and alpha = 1.
        out.norm_at_alpha_one = Rational(-2) + 2 * Rational(1) + Rational(-2);
        return out;
    }

private:
    Ypqr y_;
    std::array<std::array<std::optional<YProjection>, 3>, 3> cache_;
};

}  // namespace

YProjection y_projection(int p, int q, int r, const ETypePair& type) { return project(ypqr_roots(p, q, r), type); }

Rational n_plus_2(int p, int q, int r, const ETypePair& type)
{
    require_hyperbolic(p, q, r);
    const Ypqr y = ypqr_roots(p, q, r);
    return n_plus_2_of(y, type, project(y, type));
}

std::vector<std::int64_t> integers_between(const Rational& a, const Rational& b)
{
    std::vector<std::int64_t> out;
    const Integer lo = floor_div(a) + 1;
    const Integer hi = ceil_div(b) - 1;
    for (Integer k = lo; k <= hi; ++k) out.push_back(static_cast<std::int64_t>(k));
    return out;
}

std::vector<std::int64_t> same_type_alpha_set(const Rational& n) { return integers_between(-2, 2 + 2 * n); }

std::vector<std::int64_t> alpha_range_same_type(int p, int q, int r, const ETypePair& type)
{
    return same_type_alpha_set(n_plus_2(p, q, r, type) - 2);
}

std::vector<std::int64_t> alpha_range_cross_type(int p, int q, int r, const ETypePair& t1, const ETypePair& t2)
{
    ProjectionCache cache(p, q, r);
    return cache.cross(t1, t2);
}

ThirdType third_type_identity(int p, int q, int r, const ETypePair& t1, const ETypePair& t2)
{
    ProjectionCache cache(p, q, r);
    return cache.third(t1, t2);
}

bool AlphaCase::ok() const
{
    for (const auto& c : cross_pairs)
        if (c.alpha != std::vector<std::int64_t>{1} || !c.third_type_ok) return false;
    for (const auto& s : same_pairs)
        if (!s.alpha.empty()) return false;
    return true;
}

bool AlphaReport::all_ok() const
{
    return std::all_of(cases.begin(), cases.end(), [](const AlphaCase& c) { return c.ok(); });
}

std::string AlphaReport::to_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json ends = nlohmann::json::array();
        for (Arm a : c.core.free_ends) ends.push_back("e_" + to_string(a));
        nlohmann::json cross = nlohmann::json::array();
        for (const auto& x : c.cross_pairs)
            cross.push_back({{"types", {to_string(x.t1), to_string(x.t2)}},
                             {"alpha_set", x.alpha},
                             {"product", to_string(x.product)},
                             {"third_type_ok", x.third_type_ok}});
        nlohmann::json same = nlohmann::json::array();
        for (const auto& s : c.same_pairs)
            same.push_back(
                {{"type", to_string(s.type)}, {"alpha_set", s.alpha}, {"n_plus_2", to_string(s.n_plus_2)}});
        out.push_back({{"p", c.p},
                       {"q", c.q},
                       {"r", c.r},
                       {"core", to_string(c.core.kind)},
                       {"free_ends", ends},
                       {"cross_pairs", cross},
                       {"same_pairs", same}});
    }
    return out.dump();
}

AlphaReport verify_alpha_one(int max_sum)
{
    AlphaReport report;
    report.max_sum = max_sum;
    for (int p = 2; 3 * p <= max_sum; ++p)
        for (int q = p; p + 2 * q <= max_sum; ++q)
            for (int r = q; p + q + r <= max_sum; ++r) {
                if (reciprocal_sum(p, q, r) >= 1) continue;
                const auto core = try_core_nodes(p, q, r);
                if (!core || core->free_ends.size() < 2) continue;

                AlphaCase c;
                c.p = p;
                c.q = q;
                c.r = r;
                c.core = *core;
                const auto& ends = core->free_ends;
                // Unordered types as (earlier end +, later end -).
                std::vector<ETypePair> types;
                for (std::size_t i = 0; i < ends.size(); ++i)
                    for (std::size_t j = i + 1; j < ends.size(); ++j) types.push_back({ends[i], ends[j]});
                ProjectionCache cache(p, q, r);
                for (const auto& t : types) {
                    const Rational s = cache.n_plus_2(t);
                    c.same_pairs.push_back({t, s, same_type_alpha_set(s - 2)});
                }
                for (std::size_t i = 0; i < types.size(); ++i)
                    for (std::size_t j = i + 1; j < types.size(); ++j) {
                        // Orient the pair as (A+,B-), (B+,C-) around the shared end B.
                        const ETypePair u = types[i], v = types[j];
                        const Arm shared = (u.plus == v.plus || u.plus == v.minus) ? u.plus : u.minus;
                        const Arm a = u.plus == shared ? u.minus : u.plus;
                        const Arm cc = v.plus == shared ? v.minus : v.plus;
                        const ETypePair t1{a, shared}, t2{shared, cc};
                        CrossPairResult x;
                        x.t1 = t1;
                        x.t2 = t2;
                        x.product = inner(cache.y().ambient, cache.get(t1).y, cache.get(t2).y);
                        x.alpha = cache.cross(t1, t2);
                        const ThirdType third = cache.third(t1, t2);
                        x.third_type_ok = third.projection_matches && third.norm_at_alpha_one == -2;
                        c.cross_pairs.push_back(std::move(x));
                    }
                report.cases.push_back(std::move(c));
            }
    return report;
}

// ---------------------------------------------------------------------------

Monomial parse_monomial(const std::string& s0)
{
    std::string s;
    for (char ch : s0)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty monomial");
    Monomial m{0, 0, 0};
    if (s == "1") return m;
    std::size_t i = 0;
    while (i < s.size()) {
        const char v = s[i++];
        if (v != 'x' && v != 'y' && v != 'z') throw std::invalid_argument("bad variable in monomial \"" + s0 + "\"");
        int e = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            const std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) throw std::invalid_argument("missing exponent in monomial \"" + s0 + "\"");
            e = std::stoi(s.substr(start, i - start));
        }
        m[static_cast<std::size_t>(v - 'x')] += e;
    }
    return m;
}

std::vector<Monomial> parse_polynomial(const std::string& s)
{
    std::vector<Monomial> out;
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, '+')) out.push_back(parse_monomial(term));
    return out;
}

std::string to_string(const Monomial& m)
{
    std::string out;
    for (std::size_t k = 0; k < 3; ++k) {
        if (m[k] == 0) continue;
        out += static_cast<char>('x' + k);
        if (m[k] != 1) out += "^" + std::to_string(m[k]);
    }
    return out.empty() ? "1" : out;
}

int weighted_degree(const Monomial& m, const std::array<int, 3>& w)
{
    return m[0] * w[0] + m[1] * w[1] + m[2] * w[2];
}

WeightCheck check_weights(const DolgachevEntry& e)
{
    if (e.f.empty()) throw std::invalid_argument("entry " + e.label + " has no monomials");
    for (int w : e.weights)
        if (w <= 0) throw std::invalid_argument("entry " + e.label + " has a nonpositive weight");
    WeightCheck out;
    for (const auto& m : e.f) {
        const int deg = weighted_degree(m, e.weights);
        out.degrees.push_back(deg);
        if (deg != e.degree) out.offending.push_back(to_string(m));
    }
    out.lambda_degree = weighted_degree(e.lambda, e.weights);
    if (out.lambda_degree <= e.degree) out.offending.push_back("lambda " + to_string(e.lambda));
    out.ok = out.offending.empty();
    return out;
}

std::vector<DolgachevEntry> table1()
{
    const auto doc = nlohmann::json::parse(data::table1_json);
    std::vector<DolgachevEntry> out;
    for (const auto& row : doc.at("rows")) {
        DolgachevEntry e;
        e.label = row.at("label").get<std::string>();
        e.f = parse_polynomial(row.at("f").get<std::string>());
        e.lambda = parse_monomial(row.at("lambda").get<std::string>());
        e.weights = row.at("weights").get<std::array<int, 3>>();
        e.degree = row.at("degree").get<int>();
        e.dolgachev = row.at("dolgachev").get<std::array<int, 3>>();
        out.push_back(std::move(e));
    }
    return out;
}

std::string table1_version() { return nlohmann::json::parse(data::table1_json).at("version").get<std::string>(); }

// ---------------------------------------------------------------------------

CycleSeq CycleSeq::normalized() const
{
    if (entries.empty()) return *this;
    std::vector<int> best = entries;
    std::vector<int> rot = entries;
    for (std::size_t k = 1; k < entries.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return CycleSeq(std::move(best));
}

bool rotation_equal(const CycleSeq& a, const CycleSeq& b) { return a.normalized() == b.normalized(); }

std::string to_string(const CycleSeq& c)
{
    std::string out = "(";
    for (std::size_t i = 0; i < c.entries.size(); ++i) out += (i ? "," : "") + std::to_string(c.entries[i]);
    return out + ")";
}

CycleSeq adjust_cycle(const CycleSeq& c, CycleAdjust direction)
{
    if (c.entries.empty()) throw DomainError("empty cycle");
    if (c.size() > 1) return c;
    const int shift = direction == CycleAdjust::raw_to_zykel ? 2 : -2;
    const int value = c.entries[0] + shift;
    if (value < 1) throw DomainError("adjusted cycle entry below 1");
    return CycleSeq({value});
}

CycleSeq dual_cycle(const CycleSeq& c)
{
    if (c.entries.empty()) throw DomainError("empty cycle");
    for (int e : c.entries)
        if (e < 2) throw DomainError("dual cycle needs entries >= 2, got " + to_string(c));
    const auto start = std::find_if(c.entries.begin(), c.entries.end(), [](int e) { return e >= 3; });
    if (start == c.entries.end()) throw DomainError("dual cycle undefined for an all-2 cycle");

    std::vector<int> rot(start, c.entries.end());
    rot.insert(rot.end(), c.entries.begin(), start);
    // Blocks (m_i + 3, 2^{k_i}).
    std::vector<int> m, k;
    for (int e : rot) {
        if (e >= 3) {
            m.push_back(e - 3);
            k.push_back(0);
        } else {
            ++k.back();
        }
    }
    std::vector<int> out;
    const std::size_t s = m.size();
    for (std::size_t i = 0; i < s; ++i) {
        out.push_back(k[i] + 3);
        out.insert(out.end(), static_cast<std::size_t>(m[(i + 1) % s]), 2);
    }
    return CycleSeq(std::move(out)).normalized();
}

namespace {

// Linear expression in p, q, r: integers and variables joined by + and -.
int eval_linear(const std::string& expr, int p, int q, int r)
{
    int total = 0;
    int sign = 1;
    bool expect_term = true;
    std::size_t i = 0;
    while (i < expr.size()) {
        const char ch = expr[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '+' || ch == '-') {
            if (expect_term && ch == '+') throw std::invalid_argument("bad expression \"" + expr + "\"");
            sign = expect_term ? -sign : (ch == '-' ? -1 : 1);
            expect_term = true;
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = i;
            while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) ++i;
            total += sign * std::stoi(expr.substr(start, i - start));
            sign = 1;
            expect_term = false;
        } else if (ch == 'p' || ch == 'q' || ch == 'r') {
            total += sign * (ch == 'p' ? p : ch == 'q' ? q : r);
            sign = 1;
            expect_term = false;
            ++i;
        } else {
            throw std::invalid_argument("bad character in expression \"" + expr + "\"");
        }
    }
    if (expect_term) throw std::invalid_argument("incomplete expression \"" + expr + "\"");
    return total;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

CycleSeq instantiate(const std::string& column, int p, int q, int r)
{
    std::vector<int> out;
    std::stringstream ss(column);
    std::string term;
    while (std::getline(ss, term, ',')) {
        term = trim(term);
        const auto caret = term.find('^');
        if (caret == std::string::npos) {
            out.push_back(eval_linear(term, p, q, r));
            continue;
        }
        const int value = eval_linear(term.substr(0, caret), p, q, r);
        std::string count = trim(term.substr(caret + 1));
        if (count.size() < 2 || count.front() != '(' || count.back() != ')')
            throw std::invalid_argument("repeat count must be parenthesized in \"" + term + "\"");
        const int n = eval_linear(count.substr(1, count.size() - 2), p, q, r);
        if (n < 0) throw InvariantViolation("negative repeat count in \"" + term + "\"");
        out.insert(out.end(), static_cast<std::size_t>(n), value);
    }
    if (out.empty()) throw InvariantViolation("table line produced an empty cycle");
    return CycleSeq(std::move(out));
}

const nlohmann::json& table2_doc()
{
    static const nlohmann::json doc = nlohmann::json::parse(data::table2_json);
    return doc;
}

}  // namespace

std::string table2_version() { return table2_doc().at("version").get<std::string>(); }

CuspRow cusp_row_table(int p, int q, int r)
{
    if (p < 2 || !(p <= q && q <= r)) throw DomainError("cusp rows need 2 <= p <= q <= r");
    if (reciprocal_sum(p, q, r) >= 1) throw DomainError("cusp rows need 1/p + 1/q + 1/r < 1");
    const std::array<std::pair<const char*, int>, 3> vars{{{"p", p}, {"q", q}, {"r", r}}};
    for (const auto& row : table2_doc().at("rows")) {
        bool match = true;
        for (const auto& [name, value] : vars)
            if (row.contains(name) && row.at(name).get<int>() != value) match = false;
        if (!match) continue;

        CuspRow out;
        out.family = row.at("family").get<std::string>();
        std::array<CycleSeq*, 4> cols{&out.c, &out.c_prime, &out.d_prime, &out.d};
        const std::array<const char*, 4> keys{"c", "c_prime", "d_prime", "d"};
        for (std::size_t k = 0; k < 4; ++k) {
            const auto text = row.at(keys[k]).get<std::string>();
            if (trim(text) == "<-") {
                if (k == 0) throw InvariantViolation("first column cannot copy from the left");
                *cols[k] = *cols[k - 1];
            } else {
                *cols[k] = instantiate(text, p, q, r);
            }
        }
        out.single_entry = out.c.size() == 1 || out.d_prime.size() == 1;
        return out;
    }
    throw InvariantViolation("no table line matches");
}

CuspRow cusp_row(int p, int q, int r)
{
    const CuspRow stored = cusp_row_table(p, q, r);
    CuspRow out;
    out.family = stored.family;
    out.c = stored.c;
    out.c_prime = adjust_cycle(out.c, CycleAdjust::raw_to_zykel);
    out.d_prime = dual_cycle(out.c_prime);
    out.d = adjust_cycle(out.d_prime, CycleAdjust::zykelstar_to_d);
    out.single_entry = out.c.size() == 1 || out.d_prime.size() == 1;
    const auto where = " at (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
    if (!rotation_equal(out.c_prime, stored.c_prime))
        throw InvariantViolation("c' " + to_string(out.c_prime) + " differs from the table" + where);
    if (!rotation_equal(out.d_prime, stored.d_prime))
        throw InvariantViolation("d' " + to_string(out.d_prime) + " differs from the table" + where);
    if (!rotation_equal(out.d, stored.d))
        throw InvariantViolation("d " + to_string(out.d) + " differs from the table" + where);
    return out;
}

}  // namespace catchi
