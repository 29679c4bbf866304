#pragma once

// Root lattices of the T-shaped diagrams Y_{p,q,r}, their affine cores, the
// projections of E-set vectors, and cusp cycle duality.

#include "catchi/lattice.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace catchi {

enum class Arm { p = 0, q = 1, r = 2 };
std::string to_string(Arm arm);

/// Y_{p,q,r} in the coordinate model: ambient form diag(1; -1 x p; -1 x q; -1 x r).
/// Roots are ordered central root first, then the p-arm, q-arm and r-arm
/// outward from the center. An arm of length p contributes p - 1 roots.
struct Ypqr {
    std::array<int, 3> arms{};
    GramLattice ambient;
    std::vector<LatticeVector> roots;
    std::vector<std::string> labels;

    int p() const { return arms[0]; }
    int q() const { return arms[1]; }
    int r() const { return arms[2]; }
    int arm_length(Arm a) const { return arms[static_cast<std::size_t>(a)]; }
    /// Index in `roots` of the k-th root along an arm (k = 0 is next to the center).
    std::size_t arm_root(Arm a, int k) const;
    std::size_t end_root(Arm a) const { return arm_root(a, arm_length(a) - 2); }
    /// Offset of the arm's coordinate block in the ambient space.
    std::size_t block_start(Arm a) const;
};

/// Throws DomainError unless p, q, r >= 2. Verifies the root norms and the
/// diagram adjacencies exactly (InvariantViolation otherwise).
Ypqr ypqr_roots(int p, int q, int r);

/// Gram matrix of the simple roots.
GramLattice ypqr_root_gram(const Ypqr& y);

Signature weyl_signature(int p, int q, int r);

/// 1/p + 1/q + 1/r.
Rational reciprocal_sum(int p, int q, int r);

struct CoreType {
    enum class Kind { e6, e7, e8 };
    Kind kind = Kind::e6;
    std::array<int, 3> core_arms{};  // arm lengths used by the core, per arm
    std::vector<std::size_t> nodes;  // root indices
    std::vector<Arm> free_ends;      // arm ends outside the core, in p, q, r order
};

std::string to_string(CoreType::Kind kind);

/// Throws DomainError when Y_{p,q,r} contains no affine E diagram.
CoreType core_nodes(int p, int q, int r);
std::optional<CoreType> try_core_nodes(int p, int q, int r);

/// y.e = +1 for the `plus` end, -1 for the `minus` end.
struct ETypePair {
    Arm plus = Arm::p;
    Arm minus = Arm::q;

    friend bool operator==(const ETypePair&, const ETypePair&) = default;
};

std::string to_string(const ETypePair& t);
/// Same unordered pair of ends.
bool same_type(const ETypePair& a, const ETypePair& b);

std::vector<ETypePair> eset_types(int p, int q, int r);

struct YProjection {
    LatticeVector y;        // ambient coordinates
    Rational norm;          // y.y
    bool cross_checked = false;
};

/// The component of an E-set vector in the root span: solved against all
/// simple roots and compared with the closed form.
YProjection y_projection(int p, int q, int r, const ETypePair& type);

/// Closed-form projection only.
LatticeVector y_projection_closed_form(int p, int q, int r, const ETypePair& type);

/// 2 + N for N the norm of the projection, by two routes; asserts 2 + N > 0.
Rational n_plus_2(int p, int q, int r, const ETypePair& type);

/// Integers strictly between a and b.
std::vector<std::int64_t> integers_between(const Rational& a, const Rational& b);

/// Integers in (-2, 2 + 2N).
std::vector<std::int64_t> same_type_alpha_set(const Rational& n);
std::vector<std::int64_t> alpha_range_same_type(int p, int q, int r, const ETypePair& type);

/// Integers alpha making diag(-2-N1, -2-N2) with off-diagonal alpha - y.y'
/// negative definite.
std::vector<std::int64_t> alpha_range_cross_type(int p, int q, int r, const ETypePair& t1, const ETypePair& t2);

struct ThirdType {
    ETypePair third;
    bool projection_matches = false;  // -y - y' equals the third type's projection
    Rational norm_at_alpha_one;       // (-y - y')^2 with y^2 = y'^2 = -2, y.y' = 1
};

/// For t1 = (A, B), t2 = (B, C): the vector -y - y' and the type (C, A).
ThirdType third_type_identity(int p, int q, int r, const ETypePair& t1, const ETypePair& t2);

struct CrossPairResult {
    ETypePair t1, t2;
    Rational product;  // y_Q . y'_Q
    std::vector<std::int64_t> alpha;
    bool third_type_ok = false;
};

struct SamePairResult {
    ETypePair type;
    Rational n_plus_2;
    std::vector<std::int64_t> alpha;
};

struct AlphaCase {
    int p = 0, q = 0, r = 0;
    CoreType core;
    std::vector<CrossPairResult> cross_pairs;
    std::vector<SamePairResult> same_pairs;

    bool ok() const;
};

struct AlphaReport {
    int max_sum = 0;
    std::vector<AlphaCase> cases;

    bool all_ok() const;
    std::string to_json() const;
};

/// Every p <= q <= r with 1/p + 1/q + 1/r < 1, p + q + r <= max_sum, an
/// affine core and at least two free ends.
AlphaReport verify_alpha_one(int max_sum = 22);

// ---------------------------------------------------------------------------
// Quasihomogeneous normal forms.

using Monomial = std::array<int, 3>;  // exponents of x, y, z

/// Parses "x^2z", "xy^4", "1". Throws std::invalid_argument.
Monomial parse_monomial(const std::string& s);
/// Parses "x^2z+y^3+z^4".
std::vector<Monomial> parse_polynomial(const std::string& s);
std::string to_string(const Monomial& m);

struct DolgachevEntry {
    std::string label;
    std::vector<Monomial> f;
    Monomial lambda{};
    std::array<int, 3> weights{};
    int degree = 0;
    std::array<int, 3> dolgachev{};
};

struct WeightCheck {
    bool ok = false;
    std::vector<int> degrees;
    int lambda_degree = 0;
    std::vector<std::string> offending;
};

int weighted_degree(const Monomial& m, const std::array<int, 3>& w);
WeightCheck check_weights(const DolgachevEntry& e);

/// The bundled exceptional-singularity table.
std::vector<DolgachevEntry> table1();
std::string table1_version();

// ---------------------------------------------------------------------------
// Cusp cycles.

/// A cyclic sequence compared up to rotation.
struct CycleSeq {
    std::vector<int> entries;

    CycleSeq() = default;
    explicit CycleSeq(std::vector<int> e) : entries(std::move(e)) {}

    std::size_t size() const { return entries.size(); }
    /// Lexicographically least rotation.
    CycleSeq normalized() const;
    friend bool operator==(const CycleSeq& a, const CycleSeq& b) { return a.entries == b.entries; }
};

bool rotation_equal(const CycleSeq& a, const CycleSeq& b);
std::string to_string(const CycleSeq& c);

enum class CycleAdjust { raw_to_zykel, zykelstar_to_d };

CycleSeq adjust_cycle(const CycleSeq& c, CycleAdjust direction);
CycleSeq dual_cycle(const CycleSeq& c);

struct CuspRow {
    CycleSeq c, c_prime, d_prime, d;
    std::string family;        // the table line that supplied c
    bool single_entry = false;  // a +-2 adjustment was applied
};

/// Stored table formulas instantiated at (p, q, r), earlier lines first.
CuspRow cusp_row_table(int p, int q, int r);

/// c from the table; c', d', d computed and compared with the table
/// (InvariantViolation on mismatch).
CuspRow cusp_row(int p, int q, int r);

std::string table2_version();

}  // namespace catchi
