#include "hypcomm/bieberbach.hpp"

#include <algorithm>
#include <map>

#include "hypcomm/error.hpp"
#include "hypcomm/lattice.hpp"
#include "hypcomm/linalg.hpp"

namespace hypcomm {

namespace {

const Rational kHalf(Integer(1), Integer(2));

bool is_identity(const MatrixQ& a) { return a == MatrixQ::Identity(a.rows(), a.cols()); }

VectorQ unit_vector(int dimension, int i) {
  VectorQ e = VectorQ::Zero(dimension);
  e(i) = 1;
  return e;
}

std::size_t linear_order(const MatrixQ& a, std::size_t limit) {
  MatrixQ power = a;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (is_identity(power)) return k;
    power = exact_product(power, a);
  }
  return 0;
}

void reduce_cosets(GroupClosure& c) {
  const auto inv = exact_inverse(c.lattice.transpose());
  if (!inv) throw NotCrystallographicError("translation lattice is not full rank");
  const MatrixQ basis = c.lattice.transpose();
  for (auto& g : c.cosets) {
    VectorQ coords = exact_product(*inv, g.translation);
    for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) -= Rational(coords(i).floor());
    g.translation = exact_product(basis, coords);
  }
}

MatrixQ append_rows(const MatrixQ& top, const MatrixQ& bottom) {
  MatrixQ out(top.rows() + bottom.rows(), top.cols());
  if (top.rows() > 0) out.topRows(top.rows()) = top;
  if (bottom.rows() > 0) out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace

AffineIsometry AffineIsometry::identity(int dimension) {
  return {MatrixQ::Identity(dimension, dimension), VectorQ::Zero(dimension)};
}

AffineIsometry AffineIsometry::translation_by(const VectorQ& v) {
  const auto n = v.size();
  return {MatrixQ::Identity(n, n), v};
}

AffineIsometry AffineIsometry::operator*(const AffineIsometry& rhs) const {
  return {exact_product(linear, rhs.linear), VectorQ(exact_product(linear, rhs.translation) + translation)};
}

AffineIsometry AffineIsometry::inverse() const {
  const auto inv = exact_inverse(linear);
  if (!inv) throw PreconditionError("affine map has a singular linear part");
  return {*inv, VectorQ(-exact_product(*inv, translation))};
}

std::vector<MatrixQ> GroupClosure::holonomy() const {
  std::vector<MatrixQ> out;
  out.reserve(cosets.size());
  for (const auto& g : cosets) out.push_back(g.linear);
  return out;
}

const AffineIsometry* GroupClosure::find(const MatrixQ& linear) const {
  for (const auto& g : cosets)
    if (g.linear == linear) return &g;
  return nullptr;
}

VectorQ GroupClosure::reduce(const VectorQ& v) const {
  const auto inv = exact_inverse(lattice.transpose());
  if (!inv) throw NotCrystallographicError("translation lattice is not full rank");
  VectorQ coords = exact_product(*inv, v);
  for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) -= Rational(coords(i).floor());
  return exact_product(lattice.transpose(), coords);
}

bool same_group(const GroupClosure& a, const GroupClosure& b) {
  if (a.dimension != b.dimension || a.holonomy_order() != b.holonomy_order() || a.lattice != b.lattice) return false;
  for (const auto& g : a.cosets) {
    const AffineIsometry* h = b.find(g.linear);
    if (!h || h->translation != g.translation) return false;
  }
  return true;
}

GroupClosure closure(const CrystalPresentation& p, ClosureOptions options) {
  const int n = p.dimension;
  if (n < 1) throw PreconditionError("presentation dimension must be positive");
  for (const auto& g : p.generators)
    if (g.linear.rows() != n || g.linear.cols() != n || g.translation.size() != n)
      throw RankMismatchError("generator size differs from presentation dimension " + std::to_string(n));
  if (p.seed_lattice.rows() > 0 && p.seed_lattice.cols() != n)
    throw RankMismatchError("seed lattice width differs from presentation dimension " + std::to_string(n));
  const std::size_t guard = options.max_holonomy != 0 ? options.max_holonomy : (std::size_t{1} << (n + 2));

  std::vector<AffineIsometry> reps{AffineIsometry::identity(n)};
  std::vector<MatrixQ> inverses{MatrixQ::Identity(n, n)};
  auto index_of = [&](const MatrixQ& a) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (reps[i].linear == a) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  std::vector<VectorQ> translations;
  for (Eigen::Index i = 0; i < p.seed_lattice.rows(); ++i) translations.push_back(p.seed_lattice.row(i).transpose());

  // Breadth-first transversal; each (generator, rep) product yields a Schreier translation.
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (const auto& g : p.generators) {
      const AffineIsometry product = g * reps[r];
      const auto j = index_of(product.linear);
      if (j < 0) {
        if (reps.size() >= guard)
          throw NotCrystallographicError("holonomy exceeds " + std::to_string(guard) + " elements");
        const auto inv = exact_inverse(product.linear);
        if (!inv) throw PreconditionError("affine map has a singular linear part");
        reps.push_back(product);
        inverses.push_back(*inv);
        continue;
      }
      const auto k = static_cast<std::size_t>(j);
      translations.push_back(exact_product(inverses[k], VectorQ(product.translation - reps[k].translation)));
    }
  }

  GroupClosure out;
  out.dimension = n;
  out.lattice = lattice_basis(stack_rows(translations, n));
  if (out.lattice.rows() != n)
    throw NotCrystallographicError("translations span a lattice of rank " + std::to_string(out.lattice.rows()) +
                                   " < " + std::to_string(n));
  out.cosets = std::move(reps);
  reduce_cosets(out);
  return out;
}

CrystalPresentation torus(int dimension) {
  if (dimension < 1) throw PreconditionError("torus dimension must be positive");
  CrystalPresentation p;
  p.dimension = dimension;
  for (int i = 0; i < dimension; ++i) p.generators.push_back(AffineIsometry::translation_by(unit_vector(dimension, i)));
  p.seed_lattice = MatrixQ::Identity(dimension, dimension);
  return p;
}

CrystalPresentation im_kim(int n) {
  if (n < 1) throw PreconditionError("im_kim needs n >= 1; got " + std::to_string(n));
  const int dim = 2 * n + 1;
  CrystalPresentation p;
  p.dimension = dim;
  for (int i = 0; i <= n; ++i) p.generators.push_back(AffineIsometry::translation_by(unit_vector(dim, i)));
  for (int j = 0; j < n; ++j) {
    AffineIsometry tau = AffineIsometry::identity(dim);
    tau.linear(j, j) = -1;
    tau.linear(j + 1, j + 1) = -1;
    tau.translation(j + 1 + n) = kHalf;
    p.generators.push_back(tau);
  }
  AffineIsometry k = AffineIsometry::identity(dim);
  const int negated = (n % 2 == 1) ? n + 1 : n;
  for (int i = dim - negated; i < dim; ++i) k.linear(i, i) = -1;
  for (int i = 0; i <= n; ++i) k.translation(i) = kHalf;
  p.generators.push_back(k);

  std::vector<VectorQ> seed;
  for (int i = 0; i <= n; ++i) seed.push_back(unit_vector(dim, i));
  for (std::size_t g = n + 1; g < p.generators.size(); ++g) {
    const AffineIsometry square = p.generators[g] * p.generators[g];
    seed.push_back(square.translation);
  }
  p.seed_lattice = stack_rows(seed, dim);
  return p;
}

TorsionReport is_torsion_free(const GroupClosure& c) {
  TorsionReport report;
  const int n = c.dimension;
  for (const auto& g : c.cosets) {
    if (is_identity(g.linear)) continue;
    const std::size_t k = linear_order(g.linear, c.holonomy_order());
    MatrixQ sum = MatrixQ::Zero(n, n);
    MatrixQ power = MatrixQ::Identity(n, n);
    for (std::size_t i = 0; i < k; ++i) {
      sum += power;
      power = exact_product(power, g.linear);
    }
    const MatrixQ projection = sum / Rational(static_cast<long>(k));

    // Look for l in L with P l = -P v; rows of `images` are P b_i.
    const MatrixQ images = exact_product(projection, c.lattice.transpose()).transpose();
    const LatticeEchelon echelon = lattice_echelon(images);
    const VectorQ target = -exact_product(projection, g.translation);
    const auto coeffs = lattice_coefficients(echelon.basis, target);
    if (!coeffs) continue;

    const VectorQ basis_coeffs = exact_product(echelon.transform.transpose(), *coeffs);
    const VectorQ l = exact_product(c.lattice.transpose(), basis_coeffs);
    AffineIsometry witness{g.linear, g.translation + l};
    VectorQ orbit_sum = VectorQ::Zero(n);
    VectorQ point = VectorQ::Zero(n);
    for (std::size_t i = 0; i < k; ++i) {
      orbit_sum += point;
      point = witness.apply(point);
    }
    report.torsion_free = false;
    report.fixed_point = orbit_sum / Rational(static_cast<long>(k));
    report.witness = std::move(witness);
    return report;
  }
  return report;
}

bool is_orientable(const CrystalPresentation& p) {
  return std::all_of(p.generators.begin(), p.generators.end(),
                     [](const AffineIsometry& g) { return exact_determinant(g.linear) == Rational(1); });
}

bool is_orientable(const GroupClosure& c) {
  return std::all_of(c.cosets.begin(), c.cosets.end(),
                     [](const AffineIsometry& g) { return exact_determinant(g.linear) == Rational(1); });
}

bool is_diagonal_holonomy(const GroupClosure& c) {
  for (const auto& g : c.cosets)
    for (Eigen::Index i = 0; i < g.linear.rows(); ++i)
      for (Eigen::Index j = 0; j < g.linear.cols(); ++j) {
        const Rational& x = g.linear(i, j);
        if (i == j ? x.abs() != Rational(1) : !x.is_zero()) return false;
      }
  return true;
}

std::optional<int> elementary_abelian_rank(const GroupClosure& c) {
  for (const auto& g : c.cosets)
    if (!is_identity(exact_product(g.linear, g.linear))) return std::nullopt;
  const std::size_t order = c.holonomy_order();
  if ((order & (order - 1)) != 0) return std::nullopt;
  int r = 0;
  while ((std::size_t{1} << r) < order) ++r;
  return r;
}

bool is_ghw(const GroupClosure& c) {
  if (!is_orientable(c) || !is_diagonal_holonomy(c)) return false;
  const auto r = elementary_abelian_rank(c);
  return r && *r == c.dimension - 1;
}

GhwSearchResult ghw_search(int n, std::uint64_t bound) {
  if (n < 3 || n % 2 == 0) throw PreconditionError("ghw_search needs odd n >= 3; got " + std::to_string(n));
  if (n > 15) throw PreconditionError("ghw_search supports n <= 15");
  const int gens = n - 1;
  const unsigned full = (1u << n) - 1;

  // Coordinate i maps to bit (n-1-i), so numeric order on masks is lexicographic order.
  auto bit = [n](int i) { return 1u << (n - 1 - i); };
  std::vector<unsigned> positive(static_cast<std::size_t>(1) << gens);
  for (unsigned s = 1; s < positive.size(); ++s) {
    unsigned negative = 0;
    for (int i = 0; i < gens; ++i)
      if (s & (1u << i)) negative ^= full ^ bit(i);
    positive[s] = full ^ negative;
  }

  auto build = [&](const std::vector<unsigned>& masks) {
    CrystalPresentation p = torus(n);
    for (int i = 0; i < gens; ++i) {
      AffineIsometry g = AffineIsometry::identity(n);
      for (int j = 0; j < n; ++j) {
        if (j != i) g.linear(j, j) = -1;
        if (masks[static_cast<std::size_t>(i)] & bit(j)) g.translation(j) = kHalf;
      }
      p.generators.push_back(g);
    }
    return p;
  };

  GhwSearchResult result;
  std::vector<unsigned> masks(static_cast<std::size_t>(gens), 0);
  std::vector<unsigned> xor_of(positive.size(), 0);
  bool exhausted = false;

  // Depth-first over generators; every subset product must move some fixed coordinate by 1/2 mod 1.
  auto dfs = [&](auto&& self, int depth) -> bool {
    if (depth == gens) {
      CrystalPresentation p = build(masks);
      const GroupClosure c = closure(p);
      if (is_torsion_free(c).torsion_free && is_ghw(c)) {
        result.presentation = std::move(p);
        return true;
      }
      return false;
    }
    const unsigned lo = 1u << depth;
    for (unsigned m = 0; m <= full; ++m) {
      if (result.examined >= bound) {
        exhausted = true;
        return false;
      }
      ++result.examined;
      bool ok = true;
      for (unsigned s = lo; s < 2 * lo && ok; ++s) {
        xor_of[s] = xor_of[s ^ lo] ^ m;
        if ((positive[s] & xor_of[s]) == 0) ok = false;
      }
      if (!ok) continue;
      masks[static_cast<std::size_t>(depth)] = m;
      if (self(self, depth + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  dfs(dfs, 0);
  return result;
}

CrystalPresentation product_with_circle(const CrystalPresentation& p) {
  const int n = p.dimension;
  CrystalPresentation out;
  out.dimension = n + 1;
  for (const auto& g : p.generators) {
    AffineIsometry e = AffineIsometry::identity(n + 1);
    e.linear.topLeftCorner(n, n) = g.linear;
    e.translation.head(n) = g.translation;
    out.generators.push_back(e);
  }
  out.generators.push_back(AffineIsometry::translation_by(unit_vector(n + 1, n)));
  MatrixQ seed = MatrixQ::Zero(p.seed_lattice.rows(), n + 1);
  if (p.seed_lattice.rows() > 0) seed.leftCols(n) = p.seed_lattice;
  out.seed_lattice = append_rows(seed, unit_vector(n + 1, n).transpose());
  return out;
}

std::optional<GroupClosure> split_circle_factor(const GroupClosure& c) {
  const int n = c.dimension - 1;
  if (n < 1) return std::nullopt;
  if (!lattice_contains(c.lattice, unit_vector(n + 1, n))) return std::nullopt;
  for (Eigen::Index i = 0; i < c.lattice.rows(); ++i)
    if (!c.lattice(i, n).is_integer()) return std::nullopt;
  for (const auto& g : c.cosets) {
    for (int i = 0; i < n; ++i)
      if (!g.linear(n, i).is_zero() || !g.linear(i, n).is_zero()) return std::nullopt;
    if (g.linear(n, n) != Rational(1) || !g.translation(n).is_zero()) return std::nullopt;
  }
  GroupClosure out;
  out.dimension = n;
  std::vector<VectorQ> rows;
  for (Eigen::Index i = 0; i < c.lattice.rows(); ++i) rows.push_back(c.lattice.row(i).head(n).transpose());
  out.lattice = lattice_basis(stack_rows(rows, n));
  for (const auto& g : c.cosets) out.cosets.push_back({g.linear.topLeftCorner(n, n), g.translation.head(n)});
  reduce_cosets(out);
  return out;
}

bool preserves_form(const CrystalPresentation& p, const DiagonalForm& f) {
  if (f.rank() != p.dimension)
    throw RankMismatchError("form rank " + std::to_string(f.rank()) + " differs from dimension " +
                            std::to_string(p.dimension));
  const MatrixQ d = f.matrix();
  return std::all_of(p.generators.begin(), p.generators.end(),
                     [&](const AffineIsometry& g) {
                       return exact_product(g.linear.transpose(), exact_product(d, g.linear)) == d;
                     });
}

TopologyFlags topology_flags(const GroupClosure& c) {
  TopologyFlags flags;
  auto cite = [&](const std::string& key) {
    if (std::find(flags.citations.begin(), flags.citations.end(), key) == flags.citations.end())
      flags.citations.push_back(key);
  };
  auto matches_im_kim = [](const GroupClosure& g) -> std::optional<int> {
    if (g.dimension < 3 || g.dimension % 2 == 0) return std::nullopt;
    const int n = (g.dimension - 1) / 2;
    static std::map<int, GroupClosure> reference;
    auto it = reference.find(n);
    if (it == reference.end()) it = reference.emplace(n, closure(im_kim(n))).first;
    if (same_group(g, it->second)) return n;
    return std::nullopt;
  };
  auto is_ghw_manifold = [](const GroupClosure& g) { return is_ghw(g) && is_torsion_free(g).torsion_free; };

  if (const auto n = matches_im_kim(c)) {
    flags.families.push_back("im-kim(" + std::to_string(*n) + ")");
    flags.sw_nonvanishing_range = *n;
    cite("ImKim");
  }
  if (is_ghw_manifold(c)) {
    flags.families.push_back("ghw(" + std::to_string(c.dimension) + ")");
    cite("RS");
    if (c.dimension > 3) {
      flags.spinc_obstructed = true;
      cite("LPS");
    }
  }
  if (const auto factor = split_circle_factor(c)) {
    if (const auto n = matches_im_kim(*factor)) {
      flags.families.push_back("im-kim(" + std::to_string(*n) + ") x S^1");
      flags.sw_nonvanishing_range = *n;
      cite("ImKim");
    }
    if (is_ghw_manifold(*factor)) {
      flags.families.push_back("ghw(" + std::to_string(factor->dimension) + ") x S^1");
      cite("RS");
      if (factor->dimension > 3) {
        flags.spinc_obstructed = true;
        cite("LPS");
      }
    }
  }
  return flags;
}

}  // namespace hypcomm
