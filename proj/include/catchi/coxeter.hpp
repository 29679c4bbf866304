#pragma once

// Finite ADE root systems in simple-root coordinates, reflections, and mirror
// incidence.

#include "catchi/lattice.hpp"

#include <string>
#include <vector>

namespace catchi {

enum class AdeType { A, D, E };

/// Roots are integer vectors in the basis of simple roots; the form is the
/// Cartan matrix (simple roots have norm 2).
struct RootSystem {
    std::string label;  // "A3", "E8", or "local(E8)"
    AdeType type = AdeType::A;
    int rank = 0;  // rank of the span of the roots
    GramLattice cartan;
    std::vector<LatticeVector> simple;
    std::vector<LatticeVector> roots;  // sorted
};

/// A_n (n >= 1), D_n (n >= 4), E_n (n = 6, 7, 8). Throws DomainError otherwise.
/// E_n uses Bourbaki node order, matching e8_gram.
GramLattice cartan_matrix(AdeType type, int rank);

/// Parses "A3", "D4", "E8".
std::pair<AdeType, int> parse_ade(const std::string& label);
std::string ade_label(AdeType type, int rank);

/// Closure of the simple roots under the simple reflections.
RootSystem generate_roots(AdeType type, int rank);

/// Standard count n(n+1), 2n(n-1), 72, 126, 240.
std::size_t expected_root_count(AdeType type, int rank);

/// v - 2 (v.root)/(root.root) root. Throws DomainError on an isotropic root.
LatticeVector reflect(const GramLattice& g, const LatticeVector& root, const LatticeVector& v);

/// Whether reflect(a, b) lies in the set for all a, b.
bool reflection_closed(const GramLattice& g, const std::vector<LatticeVector>& roots);

/// Roots orthogonal to x. Throws InvariantViolation if the result is not
/// reflection-closed.
RootSystem local_subsystem(const RootSystem& rs, const LatticeVector& x);

/// Whether re + i im lies on the complexified mirror of the root.
bool complex_mirror_membership(const GramLattice& g, const LatticeVector& root, const LatticeVector& re,
                               const LatticeVector& im);

struct EnumerationCrossCheck {
    std::size_t closure_count = 0;
    std::size_t enumeration_count = 0;
    bool enumeration_complete = false;
    bool same_set = false;
};

/// Compares the reflection closure with the norm-2 vectors of the Cartan form.
EnumerationCrossCheck cross_check_with_enumeration(const RootSystem& rs);

/// {"type": "E8", "rank": 8, "roots": [[...], ...]}
std::string root_system_to_json(const RootSystem& rs);

}  // namespace catchi
