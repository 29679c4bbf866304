#pragma once

// Exact rational bilinear-form algebra.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catchi {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p/q", or "p" for integers.
std::string to_string(const Rational& x);
/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument.
Rational parse_rational(const std::string& s);

using LatticeVector = std::vector<Rational>;

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two independent computations disagreed, or an asserted identity failed.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A symmetric bilinear form on Q^n in a fixed basis.
class GramLattice {
public:
    GramLattice() = default;
    explicit GramLattice(RationalMatrix gram, std::vector<std::string> labels = {});

    std::size_t rank() const { return gram_.rows(); }
    const RationalMatrix& gram() const { return gram_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

private:
    RationalMatrix gram_;
    std::vector<std::string> labels_;
};

struct Signature {
    int n_plus = 0;
    int n_zero = 0;
    int n_minus = 0;

    int rank() const { return n_plus + n_zero + n_minus; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

Rational inner(const GramLattice& g, const LatticeVector& v, const LatticeVector& w);
inline Rational norm(const GramLattice& g, const LatticeVector& v) { return inner(g, v, v); }

/// Exact congruence diagonalization of a symmetric matrix: returns D with
/// g = L D L^T. Only the diagonal is kept.
std::vector<Rational> congruence_diagonal(const RationalMatrix& g);

Signature signature(const GramLattice& g);
Rational determinant(const RationalMatrix& m);
/// Throws DimensionError when singular.
RationalMatrix inverse(const RationalMatrix& m);

GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
GramLattice scaled(const GramLattice& g, const Rational& factor);

/// Cartan matrix of E8 times sign; node order is the Bourbaki labeling
/// 1-3-4-5-6-7-8 along the long arm with node 2 attached to node 4.
GramLattice e8_gram(int sign = 1);
/// The hyperbolic plane U with basis e, f: e.e = f.f = 0, e.f = 1.
GramLattice u_gram();
/// (-1)E8 + (-1)E8 + U + U + U: signature (3, 19), norm -2 vectors are roots.
GramLattice k3_gram();
/// Diagonal form.
GramLattice diagonal_gram(const std::vector<Rational>& diag);

class SolveError : public std::runtime_error {
public:
    enum class Kind { inconsistent, underdetermined };
    SolveError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct InnerTarget {
    LatticeVector vector;
    Rational value;
};

/// The unique x in the span of the target vectors with x.v_i = c_i for all i.
/// Throws SolveError::inconsistent when no such x exists and
/// SolveError::underdetermined when it is not unique.
LatticeVector solve_gram(const GramLattice& g, const std::vector<InnerTarget>& targets);

/// Basis of { x in Q^n : x.v = 0 for all v in span }.
std::vector<LatticeVector> orthogonal_complement(const GramLattice& g, const std::vector<LatticeVector>& span);

/// Gram matrix of the given vectors.
GramLattice restricted_gram(const GramLattice& g, const std::vector<LatticeVector>& basis);

/// Row-reduced basis of the null space of m (as column vectors).
std::vector<LatticeVector> null_space(const RationalMatrix& m);

class IndefiniteError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct NormEnumeration {
    std::vector<std::vector<std::int64_t>> vectors;
    bool complete = false;  // the box contains every vector of that norm
};

/// Integer vectors of the given norm with all coordinates bounded by
/// coeff_bound in absolute value, for a definite form. Sorted lexicographically.
NormEnumeration enumerate_norm_vectors(const GramLattice& g, const Rational& norm, std::int64_t coeff_bound);

/// Smallest box half-width that provably contains every vector of this norm
/// (|x_i|^2 <= |norm| * |g^{-1}_ii| for definite g).
std::int64_t norm_box_bound(const GramLattice& g, const Rational& norm);

struct OmegaDiagnostics {
    bool member = false;
    double re_norm = 0.0;
    double im_norm = 0.0;
    double cross = 0.0;
};

/// Whether re + i*im spans a positive 2-plane (x.x = 0 and x.conj(x) > 0) for
/// a form of signature (2, 0, n). Relative tolerance for floating input.
OmegaDiagnostics omega_membership(const GramLattice& g, const std::vector<double>& re,
                                  const std::vector<double>& im, double tol = 1e-9);
/// Exact version.
bool omega_membership(const GramLattice& g, const LatticeVector& re, const LatticeVector& im);

/// {"gram": [["p/q", ...], ...], "labels": [...]}
std::string gram_to_json(const GramLattice& g);
GramLattice gram_from_json(const std::string& text);

LatticeVector to_rational(const std::vector<std::int64_t>& v);

}  // namespace catchi
