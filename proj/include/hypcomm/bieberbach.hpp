#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypcomm/forms.hpp"
#include "hypcomm/rational.hpp"

namespace hypcomm {

/// The map x -> linear * x + translation.
struct AffineIsometry {
  MatrixQ linear;
  VectorQ translation;

  static AffineIsometry identity(int dimension);
  static AffineIsometry translation_by(const VectorQ& v);

  int dimension() const { return static_cast<int>(linear.rows()); }
  VectorQ apply(const VectorQ& x) const { return linear * x + translation; }

  /// Composition: (*this)(rhs(x)).
  AffineIsometry operator*(const AffineIsometry& rhs) const;
  /// Throws PreconditionError when the linear part is singular.
  AffineIsometry inverse() const;

  friend bool operator==(const AffineIsometry& a, const AffineIsometry& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
};

/// Generators of a candidate crystallographic group plus translations already
/// known to lie in it.
struct CrystalPresentation {
  int dimension = 0;
  std::vector<AffineIsometry> generators;
  /// Rows are lattice vectors known to be translations of the group (may be empty).
  MatrixQ seed_lattice;
};

/// Finite data of a crystallographic group: one coset per holonomy element.
struct GroupClosure {
  int dimension = 0;
  /// Identity first; each translation reduced into the half-open fundamental box of `lattice`.
  std::vector<AffineIsometry> cosets;
  /// Hermite-normal-form basis (rows) of the full translation lattice.
  MatrixQ lattice;

  std::size_t holonomy_order() const { return cosets.size(); }
  std::vector<MatrixQ> holonomy() const;
  const AffineIsometry* find(const MatrixQ& linear) const;
  /// Representative of v modulo the lattice inside the fundamental box.
  VectorQ reduce(const VectorQ& v) const;
};

/// Same holonomy, lattice and coset translations.
bool same_group(const GroupClosure& a, const GroupClosure& b);

struct ClosureOptions {
  /// Abort once more linear parts than this appear; 0 means 2^(dimension+2).
  std::size_t max_holonomy = 0;
};

/// Enumerates the holonomy group with coset representatives and the full
/// translation lattice.  Throws NotCrystallographicError when the holonomy
/// exceeds the guard or the translations fail to span a full-rank lattice.
GroupClosure closure(const CrystalPresentation& p, ClosureOptions options = {});

/// The unit-translation lattice Z^n.
CrystalPresentation torus(int dimension);

/// Im-Kim generators t_1..t_{n+1}, tau_1..tau_n, K of a flat (2n+1)-manifold group.
/// K negates the last n+1 coordinates for odd n and the last n for even n,
/// and translates by 1/2 along each of the first n+1 axes.
CrystalPresentation im_kim(int n);

struct TorsionReport {
  bool torsion_free = true;
  /// An element of finite order > 1, when one exists.
  std::optional<AffineIsometry> witness;
  /// A point it fixes.
  std::optional<VectorQ> fixed_point;
};

/// Decides torsion-freeness coset by coset: (A, v) contains an element with a
/// fixed point iff the projection of v onto ker(A - I) lies in the projection
/// of the lattice.
TorsionReport is_torsion_free(const GroupClosure& c);

bool is_orientable(const CrystalPresentation& p);
bool is_orientable(const GroupClosure& c);
/// Every holonomy matrix is diagonal with entries +-1.
bool is_diagonal_holonomy(const GroupClosure& c);
/// Rank r when the holonomy is elementary abelian of order 2^r.
std::optional<int> elementary_abelian_rank(const GroupClosure& c);
/// Orientable, diagonal holonomy, elementary abelian of rank dimension - 1.
bool is_ghw(const GroupClosure& c);

struct GhwSearchResult {
  std::optional<CrystalPresentation> presentation;
  /// Partial and complete translation assignments visited.
  std::uint64_t examined = 0;
};

inline constexpr std::uint64_t kDefaultGhwBound = 1'000'000;

/// Lexicographic search over translations in {0, 1/2}^n for generators whose
/// linear parts are diag(-1, .., +1 at i, .., -1), i < n-1.  Returns the first
/// presentation whose closure is torsion-free and GHW.  Throws
/// PreconditionError for even or small n.
GhwSearchResult ghw_search(int n, std::uint64_t bound = kDefaultGhwBound);

/// Block-extends every generator by a trivial last coordinate and adds the
/// unit translation along the new axis.
CrystalPresentation product_with_circle(const CrystalPresentation& p);

/// The circle factor split off again, when `c` is the closure of a product
/// with a circle.
std::optional<GroupClosure> split_circle_factor(const GroupClosure& c);

/// A^T diag(f) A == diag(f) for every generator.  Throws RankMismatchError.
bool preserves_form(const CrystalPresentation& p, const DiagonalForm& f);

/// Literature-backed facts about a recognized flat manifold.  Nothing here is
/// computed from cohomology; each entry records which cited result applies.
struct TopologyFlags {
  /// Recognized families, e.g. "im-kim(2)", "im-kim(2) x S^1", "ghw(5)".
  std::vector<std::string> families;
  /// n such that w_{2j} != 0 for 0 <= 2j <= n.
  std::optional<int> sw_nonvanishing_range;
  bool spinc_obstructed = false;
  std::vector<std::string> citations;
};

TopologyFlags topology_flags(const GroupClosure& c);

}  // namespace hypcomm
