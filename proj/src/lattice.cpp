#include "catchi/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

namespace catchi {

std::string to_string(const Rational& x)
{
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s)
{
    static const std::regex format(R"(-?[0-9]+(/[0-9]+)?)");
    if (!std::regex_match(s, format)) throw std::invalid_argument("not a rational number: \"" + s + "\"");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        const Integer num(s.substr(0, slash));
        const Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational number: \"" + s + "\"");
    }
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

GramLattice::GramLattice(RationalMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels))
{
    if (gram_.rows() != gram_.cols()) throw DimensionError("Gram matrix must be square");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        for (std::size_t j = i + 1; j < gram_.cols(); ++j)
            if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix must be symmetric");
    if (labels_.empty())
        for (std::size_t i = 0; i < gram_.rows(); ++i) labels_.push_back("b" + std::to_string(i));
    if (labels_.size() != gram_.rows()) throw DimensionError("one label per basis vector");
}

std::string to_string(const Signature& s)
{
    std::ostringstream os;
    os << "(" << s.n_plus << "," << s.n_zero << "," << s.n_minus << ")";
    return os.str();
}

Rational inner(const GramLattice& g, const LatticeVector& v, const LatticeVector& w)
{
    const std::size_t n = g.rank();
    if (v.size() != n || w.size() != n) throw DimensionError("vector length does not match the Gram matrix");
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < n; ++j)
        if (!w[j].is_zero()) support.push_back(j);
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i].is_zero()) continue;
        Rational row = 0;
        for (std::size_t j : support)
            if (!g(i, j).is_zero()) row += g(i, j) * w[j];
        if (!row.is_zero()) total += v[i] * row;
    }
    return total;
}

// ---------------------------------------------------------------------------

std::vector<Rational> congruence_diagonal(const RationalMatrix& g0)
{
    if (g0.rows() != g0.cols()) throw DimensionError("congruence diagonalization needs a square matrix");
    RationalMatrix a = g0;
    const std::size_t n = a.rows();

    auto swap_index = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    };
    // Basis change e_i += e_j, applied on both sides.
    auto add_index = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
    };

    std::vector<Rational> diag;
    diag.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n && pivot == n; ++i)
            if (!a(i, i).is_zero()) pivot = i;
        if (pivot == n) {
            // Zero diagonal: a nonzero off-diagonal entry gives a non-isotropic
            // vector e_i + e_j, since (e_i + e_j)^2 = 2 a_ij.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!a(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) {
                for (std::size_t i = k; i < n; ++i) diag.push_back(0);
                return diag;
            }
            add_index(pi, pj);
            pivot = pi;
        }
        swap_index(k, pivot);
        const Rational p = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            const Rational f = a(i, k) / p;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = k; j < n; ++j) a(j, i) -= f * a(j, k);
        }
        diag.push_back(p);
    }
    return diag;
}

Signature signature(const GramLattice& g)
{
    Signature s;
    for (const auto& d : congruence_diagonal(g.gram())) {
        if (d > 0) ++s.n_plus;
        else if (d < 0) ++s.n_minus;
        else ++s.n_zero;
    }
    return s;
}

Rational determinant(const RationalMatrix& m0)
{
    if (m0.rows() != m0.cols()) throw DimensionError("determinant of a non-square matrix");
    RationalMatrix m = m0;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k).is_zero()) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            const Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(p, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(row, j).is_zero()) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Rational f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

RationalMatrix inverse(const RationalMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(aug, n);
    if (pivots.size() != n) throw DimensionError("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

std::vector<LatticeVector> null_space(const RationalMatrix& m0)
{
    RationalMatrix m = m0;
    const std::size_t n = m.cols();
    const auto pivots = rref(m, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<LatticeVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        LatticeVector v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------

GramLattice direct_sum(const GramLattice& a, const GramLattice& b)
{
    const std::size_t n = a.rank() + b.rank();
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) m(a.rank() + i, a.rank() + j) = b(i, j);
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return GramLattice(std::move(m), std::move(labels));
}

GramLattice scaled(const GramLattice& g, const Rational& factor)
{
    RationalMatrix m = g.gram();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= factor;
    return GramLattice(std::move(m), g.labels());
}

GramLattice e8_gram(int sign)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    RationalMatrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i) m(i, i) = 2 * sign;
    // Bourbaki nodes 1..8 at indices 0..7.
    const std::pair<std::size_t, std::size_t> bonds[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (auto [i, j] : bonds) m(i, j) = m(j, i) = -sign;
    std::vector<std::string> labels;
    for (int i = 1; i <= 8; ++i) labels.push_back("a" + std::to_string(i));
    return GramLattice(std::move(m), std::move(labels));
}

GramLattice u_gram()
{
    RationalMatrix m(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return GramLattice(std::move(m), {"e", "f"});
}

GramLattice k3_gram()
{
    GramLattice k = direct_sum(e8_gram(-1), e8_gram(-1));
    for (int i = 0; i < 3; ++i) k = direct_sum(k, u_gram());
    return k;
}

GramLattice diagonal_gram(const std::vector<Rational>& diag)
{
    RationalMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return GramLattice(std::move(m));
}

// ---------------------------------------------------------------------------

LatticeVector solve_gram(const GramLattice& g, const std::vector<InnerTarget>& targets)
{
    const std::size_t n = g.rank();
    const std::size_t k = targets.size();
    if (k == 0) return LatticeVector(n);
    for (const auto& t : targets)
        if (t.vector.size() != n) throw DimensionError("target vector length does not match the Gram matrix");

    // Coefficients a with sum_j a_j (v_i . v_j) = c_i.
    RationalMatrix aug(k, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) aug(i, j) = aug(j, i) = inner(g, targets[i].vector, targets[j].vector);
        aug(i, k) = targets[i].value;
    }
    RationalMatrix reduced = aug;
    const auto pivots = rref(reduced, k + 1);
    if (!pivots.empty() && pivots.back() == k)
        throw SolveError(SolveError::Kind::inconsistent, "prescribed inner products are inconsistent");

    LatticeVector coeff(k);
    for (std::size_t r = 0; r < pivots.size(); ++r) coeff[pivots[r]] = reduced(r, k);

    // x is unique iff every kernel direction of the coefficient system maps to
    // 0. The kernel is read off the same reduced matrix.
    std::vector<bool> is_pivot(k, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<LatticeVector> kernel;
    for (std::size_t free = 0; free < k; ++free) {
        if (is_pivot[free]) continue;
        LatticeVector kv(k);
        kv[free] = 1;
        for (std::size_t row = 0; row < pivots.size(); ++row) kv[pivots[row]] = -reduced(row, free);
        kernel.push_back(std::move(kv));
    }
    for (const auto& kv : kernel) {
        LatticeVector image(n);
        for (std::size_t j = 0; j < k; ++j)
            if (!kv[j].is_zero())
                for (std::size_t c = 0; c < n; ++c) image[c] += kv[j] * targets[j].vector[c];
        if (std::any_of(image.begin(), image.end(), [](const Rational& x) { return !x.is_zero(); }))
            throw SolveError(SolveError::Kind::underdetermined, "target vectors span a degenerate subspace");
    }

    LatticeVector x(n);
    for (std::size_t j = 0; j < k; ++j)
        if (!coeff[j].is_zero())
            for (std::size_t c = 0; c < n; ++c) x[c] += coeff[j] * targets[j].vector[c];
    return x;
}

std::vector<LatticeVector> orthogonal_complement(const GramLattice& g, const std::vector<LatticeVector>& span)
{
    const std::size_t n = g.rank();
    RationalMatrix rows(span.size(), n);
    for (std::size_t i = 0; i < span.size(); ++i) {
        if (span[i].size() != n) throw DimensionError("span vector length does not match the Gram matrix");
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) rows(i, j) += span[i][k] * g(k, j);
    }
    if (span.empty()) {
        std::vector<LatticeVector> basis;
        for (std::size_t i = 0; i < n; ++i) {
            LatticeVector e(n);
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    return null_space(rows);
}

GramLattice restricted_gram(const GramLattice& g, const std::vector<LatticeVector>& basis)
{
    RationalMatrix m(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) m(i, j) = m(j, i) = inner(g, basis[i], basis[j]);
    return GramLattice(std::move(m));
}

LatticeVector to_rational(const std::vector<std::int64_t>& v)
{
    LatticeVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// +1 for positive definite, -1 for negative definite; throws otherwise.
int definiteness(const GramLattice& g)
{
    const Signature s = signature(g);
    const int n = static_cast<int>(g.rank());
    if (s.n_plus == n) return 1;
    if (s.n_minus == n) return -1;
    throw IndefiniteError("short-vector enumeration needs a definite form, signature " + to_string(s));
}

std::int64_t floor_sqrt(const Rational& r)
{
    if (r <= 0) return 0;
    const Integer whole = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    return static_cast<std::int64_t>(boost::multiprecision::sqrt(whole));
}

}  // namespace

std::int64_t norm_box_bound(const GramLattice& g, const Rational& norm)
{
    const int sign = definiteness(g);
    const Rational target = norm * sign;
    if (target <= 0) return 0;
    const RationalMatrix inv = inverse(scaled(g, sign).gram());
    std::int64_t bound = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) bound = std::max(bound, floor_sqrt(target * inv(i, i)));
    return bound;
}

NormEnumeration enumerate_norm_vectors(const GramLattice& g, const Rational& norm, std::int64_t coeff_bound)
{
    if (coeff_bound < 0) throw std::invalid_argument("coefficient bound must be nonnegative");
    const int sign = definiteness(g);
    const std::size_t n = g.rank();
    const Rational target = norm * sign;

    NormEnumeration out;
    if (target < 0) {
        out.complete = true;
        return out;
    }
    const std::int64_t proven = norm_box_bound(g, norm);
    out.complete = coeff_bound >= proven;
    const std::int64_t box = std::min(coeff_bound, proven);
    if (target == 0) {
        out.vectors.push_back(std::vector<std::int64_t>(n, 0));
        return out;
    }

    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2, computed exactly then
    // rounded for the traversal. Leaves are checked exactly.
    RationalMatrix q = scaled(g, sign).gram();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) = q(i, j) / q(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
    }
    std::vector<double> diag(n);
    std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = q(i, i).convert_to<double>();
        for (std::size_t j = i + 1; j < n; ++j) mu[i][j] = q(i, j).convert_to<double>();
    }
    const double budget = target.convert_to<double>();
    const double slack = 1e-9 * std::max(1.0, budget);

    std::vector<std::int64_t> x(n, 0);
    const GramLattice positive = scaled(g, sign);
    auto recurse = [&](auto&& self, std::size_t level, double remaining) -> void {
        const std::size_t i = level - 1;
        double center = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) center -= mu[i][j] * static_cast<double>(x[j]);
        const double radius = std::sqrt(std::max(remaining, 0.0) / diag[i]);
        const auto lo = std::max<std::int64_t>(-box, static_cast<std::int64_t>(std::ceil(center - radius - slack)));
        const auto hi = std::min<std::int64_t>(box, static_cast<std::int64_t>(std::floor(center + radius + slack)));
        for (std::int64_t v = lo; v <= hi; ++v) {
            x[i] = v;
            const double offset = static_cast<double>(v) - center;
            const double rest = remaining - diag[i] * offset * offset;
            if (rest < -slack) continue;
            if (i == 0) {
                if (catchi::norm(positive, to_rational(x)) == target) out.vectors.push_back(x);
            } else {
                self(self, i, rest);
            }
        }
        x[i] = 0;
    };
    recurse(recurse, n, budget);
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_period_signature(const GramLattice& g)
{
    const Signature s = signature(g);
    if (s.n_plus != 2 || s.n_zero != 0)
        throw std::invalid_argument("period domain needs signature (2,0,n), got " + to_string(s));
}

}  // namespace

OmegaDiagnostics omega_membership(const GramLattice& g, const std::vector<double>& re,
                                  const std::vector<double>& im, double tol)
{
    require_period_signature(g);
    const std::size_t n = g.rank();
    if (re.size() != n || im.size() != n) throw DimensionError("vector length does not match the Gram matrix");
    auto dot = [&](const std::vector<double>& v, const std::vector<double>& w) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) total += v[i] * g(i, j).convert_to<double>() * w[j];
        return total;
    };
    OmegaDiagnostics d;
    d.re_norm = dot(re, re);
    d.im_norm = dot(im, im);
    d.cross = dot(re, im);
    const double scale = std::max({std::abs(d.re_norm), std::abs(d.im_norm), 1e-300});
    d.member = std::abs(d.re_norm - d.im_norm) <= tol * scale && std::abs(d.cross) <= tol * scale &&
               d.re_norm > tol * scale;
    return d;
}

bool omega_membership(const GramLattice& g, const LatticeVector& re, const LatticeVector& im)
{
    require_period_signature(g);
    const Rational rr = inner(g, re, re);
    return rr > 0 && rr == inner(g, im, im) && inner(g, re, im) == 0;
}

// ---------------------------------------------------------------------------

std::string gram_to_json(const GramLattice& g)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < g.rank(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < g.rank(); ++j) row.push_back(to_string(g(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"gram", rows}, {"labels", g.labels()}}.dump();
}

GramLattice gram_from_json(const std::string& text)
{
    const auto doc = nlohmann::json::parse(text);
    const auto& rows = doc.at("gram");
    const std::size_t n = rows.size();
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw DimensionError("Gram matrix rows must all have length " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            const auto& cell = rows[i][j];
            m(i, j) = cell.is_string() ? parse_rational(cell.get<std::string>()) : Rational(cell.get<std::int64_t>());
        }
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    return GramLattice(std::move(m), std::move(labels));
}

}  // namespace catchi
