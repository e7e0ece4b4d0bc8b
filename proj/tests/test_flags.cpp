#include "richkit/errors.hpp"
#include "richkit/flags.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace richkit;

namespace {

Matrix random_invertible(int d, const PrimeField& f, std::mt19937_64& rng) {
  while (true) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = static_cast<Residue>(rng() % static_cast<unsigned>(f.modulus()));
    if (rank(m, f) == d) return m;
  }
}

// Invertible B with B(i,j) = 0 unless j >= i: a change of adapted basis.
Matrix random_flag_preserving(int d, const PrimeField& f, std::mt19937_64& rng, bool invertible = true) {
  Matrix b = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) b(i, j) = static_cast<Residue>(rng() % static_cast<unsigned>(f.modulus()));
  if (invertible)
    for (int i = 0; i < d; ++i)
      if (b(i, i) == 0) b(i, i) = 1;
  return b;
}

Perm assoc_by_intersections(const Flag& v, const Flag& f) {
  const int d = v.dim();
  RankTable::Values t = RankTable::Values::Zero(d + 1, d + 1);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) t(a, b) = intersect(v.stratum(a), f.stratum(b)).dim();
  return perm_from_rank_table(RankTable(t));
}

Subspace conjugate(const Subspace& s, const Matrix& g, const PrimeField& f) {
  const int d = static_cast<int>(g.rows());
  const Matrix ginv = inverse(g, f);
  Matrix out(s.dim(), d * d);
  for (int k = 0; k < s.dim(); ++k) {
    const Matrix phi = Eigen::Map<const Matrix>(s.basis().row(k).data(), d, d);
    const Matrix c = multiply(multiply(ginv, phi, f), g, f);
    out.row(k) = Eigen::Map<const RowVector>(c.data(), d * d);
  }
  return Subspace(out, f);
}

}  // namespace

TEST(Flag, Validation) {
  const PrimeField f2(2);
  EXPECT_THROW(Flag(make_matrix(2, 2, {1, 1, 1, 1}, f2), f2), std::invalid_argument);
  EXPECT_THROW(Flag(Matrix::Zero(2, 3), f2), std::invalid_argument);
  EXPECT_THROW(Flag(identity_matrix(3), f2, {0, 2}), std::invalid_argument);
  EXPECT_THROW(Flag(identity_matrix(3), f2, {0, 2, 2, 3}), std::invalid_argument);
  const Flag p(identity_matrix(3), f2, {0, 2, 3});
  EXPECT_FALSE(p.is_complete());
  EXPECT_EQ(p.stratum(2).dim(), 1);
  EXPECT_THROW(p.stratum(1), std::invalid_argument);
  EXPECT_EQ(p.stratum(0), Subspace::full(3, f2));
  EXPECT_EQ(p.stratum(3).dim(), 0);
  EXPECT_EQ(p.block_start(1), 0);
  EXPECT_EQ(p.block_start(2), 2);
}

TEST(Flag, CanonicalFormIsBasisIndependent) {
  std::mt19937_64 rng(3);
  for (int p : {2, 3, 5})
    for (int trial = 0; trial < 200; ++trial) {
      const PrimeField f(p);
      const int d = 2 + static_cast<int>(rng() % 4);
      std::vector<int> cor{0};
      for (int c = 1; c < d; ++c)
        if (rng() % 2) cor.push_back(c);
      cor.push_back(d);
      const Flag x(random_invertible(d, f, rng), f, cor);
      // A block upper-triangular change keeps every listed stratum.
      Matrix b = random_flag_preserving(d, f, rng);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j)
          if (x.block_start(j) == x.block_start(i)) b(i, j) = static_cast<Residue>(rng() % static_cast<unsigned>(p));
      if (rank(b, f) < d) continue;
      const Flag y(multiply(b, x.basis(), f), f, cor);
      EXPECT_EQ(x, y);
      EXPECT_EQ(x.canonical().basis(), y.canonical().basis());
      EXPECT_EQ(x.canonical().canonical().basis(), x.canonical().basis());
      for (int a : cor) EXPECT_EQ(x.stratum(a), x.canonical().stratum(a));
    }
}

TEST(AssocPerm, Examples) {
  const PrimeField f2(2);
  const Flag p = Flag::standard(3, f2);
  EXPECT_EQ(assoc_perm(p, p), Perm::identity(3));
  EXPECT_EQ(assoc_perm(p, Flag::reversed(3, f2)), descending(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      EXPECT_EQ(intersect(p.stratum(a), Flag::reversed(3, f2).stratum(b)).dim(), std::max(3 - a - b, 0));
}

TEST(AssocPerm, AdaptedFlagsRoundtrip) {
  for (int d = 1; d <= 4; ++d)
    for (int q : {2, 3}) {
      const PrimeField f(q);
      for (const Perm& s : all_perms(d)) {
        const auto [p, qf] = adapted_flags(s, f);
        EXPECT_EQ(assoc_perm(p, qf), s);
        EXPECT_EQ(assoc_by_intersections(p, qf), s);
      }
    }
  const PrimeField f2(2);
  const auto [p, q] = adapted_flags(Perm({4, 2, 3, 1, 0}), f2);
  EXPECT_EQ(intersect(p.stratum(2), q.stratum(1)).dim(), rank_table(Perm({4, 2, 3, 1, 0}))(2, 1));
  const auto [i0, i1] = adapted_flags(Perm::identity(4), f2);
  EXPECT_EQ(i0, i1);
  const auto [w0, w1] = adapted_flags(descending(4), f2);
  EXPECT_EQ(w1, Flag::reversed(4, f2));
}

TEST(AssocPerm, RandomPairsMatchIntersectionOracle) {
  std::mt19937_64 rng(5);
  for (int p : {2, 3, 5, 7})
    for (int trial = 0; trial < 200; ++trial) {
      const PrimeField f(p);
      const int d = 1 + static_cast<int>(rng() % 5);
      const Flag v(random_invertible(d, f, rng), f), w(random_invertible(d, f, rng), f);
      const Perm s = assoc_perm(v, w);
      EXPECT_EQ(s, assoc_by_intersections(v, w));
      EXPECT_EQ(assoc_perm(w, v), s.inverse());
      const Matrix g = random_invertible(d, f, rng);
      EXPECT_EQ(assoc_perm(v.transformed(g), w.transformed(g)), s);
    }
}

TEST(AssocPerm, PartialIntersectionDims) {
  const PrimeField f3(3);
  const Flag v(identity_matrix(4), f3, {0, 2, 4});
  const RankTable::Values t = intersection_dims(v, Flag::reversed(4, f3));
  EXPECT_EQ(t(1, 0), -1);
  EXPECT_EQ(t(2, 0), 2);
  EXPECT_EQ(t(2, 2), 0);
  EXPECT_EQ(t(0, 1), 3);
  EXPECT_THROW(assoc_perm(v, Flag::standard(4, f3)), std::invalid_argument);
}

TEST(FixSpace, Dimensions) {
  for (int d = 1; d <= 5; ++d) {
    const PrimeField f3(3);
    const Subspace fx = fix_space(Flag::standard(d, f3));
    EXPECT_EQ(fx.dim(), d * (d + 1) / 2);
    // phi(i,k) = 0 for k < i: entries outside the pattern vanish.
    for (int k = 0; k < fx.dim(); ++k)
      for (int i = 0; i < d; ++i)
        for (int c = 0; c < i; ++c) EXPECT_EQ(fx.basis()(k, i * d + c), 0);
  }
  EXPECT_EQ(fix_space(Flag::standard(1, PrimeField(2))).dim(), 1);
  // Partial flag with blocks of sizes 2,1: dim = 9 - 2.
  EXPECT_EQ(fix_space(Flag(identity_matrix(3), PrimeField(2), {0, 2, 3})).dim(), 7);
}

TEST(FixSpace, ConjugationEquivariance) {
  std::mt19937_64 rng(19);
  for (int p : {2, 3, 5})
    for (int trial = 0; trial < 50; ++trial) {
      const PrimeField f(p);
      const int d = 2 + static_cast<int>(rng() % 3);
      const Flag x(random_invertible(d, f, rng), f);
      const Matrix g = random_invertible(d, f, rng);
      EXPECT_EQ(fix_space(x.transformed(g)), conjugate(fix_space(x), g, f));
      EXPECT_EQ(fix_space(x).dim(), d * (d + 1) / 2);
    }
}

TEST(InvFix, Examples) {
  const PrimeField f3(3);
  EXPECT_EQ(invfix_check(Flag::standard(3, f3), Flag::reversed(3, f3)), 0);
  EXPECT_EQ(sum(fix_space(Flag::standard(3, f3)), fix_space(Flag::reversed(3, f3))).dim(), 9);
  EXPECT_EQ(invfix_check(Flag::standard(3, f3), Flag::standard(3, f3)), 3);
}

TEST(InvFix, MatchesCoinversions) {
  for (int d = 1; d <= 4; ++d)
    for (int q : {2, 3}) {
      const PrimeField f(q);
      for (const Perm& s : all_perms(d)) {
        const auto [p, qf] = adapted_flags(s, f);
        EXPECT_EQ(invfix_check(p, qf), coinversions(s)) << format_perm(s);
      }
    }
  std::mt19937_64 rng(23);
  for (int q : {2, 3})
    for (int trial = 0; trial < 100; ++trial) {
      const PrimeField f(q);
      const Flag v(random_invertible(5, f, rng), f), w(random_invertible(5, f, rng), f);
      EXPECT_EQ(invfix_check(v, w), coinversions(assoc_perm(v, w)));
    }
}

TEST(MDim, PairsAndTriples) {
  const PrimeField f2(2);
  for (int d = 1; d <= 4; ++d)
    for (const Perm& s : all_perms(d)) {
      const auto [p, q] = adapted_flags(s, f2);
      const std::vector<Flag> pair{p, q};
      EXPECT_EQ(m_dim(pair), coinversions(s));
    }
  const std::vector<Flag> transverse{Flag::standard(3, f2), Flag::reversed(3, f2)};
  EXPECT_EQ(m_dim(transverse), 0);
  std::mt19937_64 rng(29);
  for (int q : {2, 3, 5})
    for (int trial = 0; trial < 100; ++trial) {
      const PrimeField f(q);
      const std::vector<Flag> three{Flag(random_invertible(3, f, rng), f), Flag(random_invertible(3, f, rng), f),
                                    Flag(random_invertible(3, f, rng), f)};
      EXPECT_GT(m_dim(three), 0);
    }
}

TEST(Delta, ConstantFamilies) {
  const PrimeField f3(3);
  FirstOrderFamily transverse{0, {Flag::standard(3, f3), Flag::reversed(3, f3)}, {}};
  EXPECT_EQ(delta_matrix(transverse).cols(), 0);
  EXPECT_TRUE(is_versal_at_point(transverse));

  FirstOrderFamily equal{2, {Flag::standard(3, f3), Flag::standard(3, f3)}, {}};
  equal.deformations.assign(2, {Matrix::Zero(3, 3), Matrix::Zero(3, 3)});
  const Matrix delta = delta_matrix(equal);
  EXPECT_EQ(delta.rows(), 2);
  EXPECT_EQ(delta.cols(), 3);
  EXPECT_TRUE(delta.isZero());
  EXPECT_FALSE(is_versal_at_point(equal));

  FirstOrderFamily three{0, {Flag::standard(3, f3), Flag::reversed(3, f3), Flag::standard(3, f3)}, {}};
  EXPECT_FALSE(is_versal_at_point(three));

  FirstOrderFamily bad{1, {Flag::standard(3, f3)}, {}};
  EXPECT_THROW(delta_matrix(bad), std::invalid_argument);
  bad.deformations = {{Matrix::Zero(2, 2)}};
  EXPECT_THROW(delta_matrix(bad), std::invalid_argument);
}

TEST(Delta, CrossingOfTwoPointsOnALine) {
  // Q^1(t) = span((t, 1)) passes through P^1 = span((0, 1)) at t = 0.
  const PrimeField f5(5);
  FirstOrderFamily fam{1, {Flag::standard(2, f5), Flag::standard(2, f5)}, {}};
  fam.deformations = {{Matrix::Zero(2, 2), make_matrix(2, 2, {0, 0, 1, 0}, f5)}};
  const Matrix delta = delta_matrix(fam);
  ASSERT_EQ(delta.rows(), 1);
  ASSERT_EQ(delta.cols(), 1);
  EXPECT_NE(delta(0, 0), 0);
  EXPECT_TRUE(is_versal_at_point(fam));
  // Moving Q^1 along itself is not a deformation of the pair.
  fam.deformations = {{Matrix::Zero(2, 2), make_matrix(2, 2, {0, 0, 0, 1}, f5)}};
  EXPECT_FALSE(is_versal_at_point(fam));
}

TEST(Delta, IndependentOfAdaptedSection) {
  std::mt19937_64 rng(31);
  for (int q : {2, 3, 5})
    for (int trial = 0; trial < 60; ++trial) {
      const PrimeField f(q);
      const int d = 2 + static_cast<int>(rng() % 3);
      const int m = 1 + static_cast<int>(rng() % 4);
      FirstOrderFamily fam{m, {}, {}};
      const int ell = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < ell; ++i) fam.flags.emplace_back(random_invertible(d, f, rng), f);
      for (int t = 0; t < m; ++t) {
        std::vector<Matrix> dirs;
        for (int i = 0; i < ell; ++i) {
          Matrix w(d, d);
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) w(r, c) = static_cast<Residue>(rng() % static_cast<unsigned>(q));
          dirs.push_back(w);
        }
        fam.deformations.push_back(dirs);
      }
      const Matrix delta = delta_matrix(fam);

      // G -> B G with B flag-preserving, and W -> B W + C G for a first-order
      // change of section C.
      FirstOrderFamily moved = fam;
      std::vector<Matrix> bs;
      for (int i = 0; i < ell; ++i) {
        bs.push_back(random_flag_preserving(d, f, rng));
        moved.flags[static_cast<std::size_t>(i)] =
            Flag(multiply(bs.back(), fam.flags[static_cast<std::size_t>(i)].basis(), f), f);
      }
      for (int t = 0; t < m; ++t)
        for (int i = 0; i < ell; ++i) {
          const Matrix c = random_flag_preserving(d, f, rng, false);
          const Matrix& g = fam.flags[static_cast<std::size_t>(i)].basis();
          Matrix w = multiply(bs[static_cast<std::size_t>(i)], fam.deformations[t][i], f);
          const Matrix cg = multiply(c, g, f);
          for (int r = 0; r < d; ++r)
            for (int k = 0; k < d; ++k) w(r, k) = f.add(w(r, k), cg(r, k));
          moved.deformations[t][i] = w;
        }
      EXPECT_EQ(delta_matrix(moved), delta);

      // A global change of coordinates only changes the basis of M.
      const Matrix g = random_invertible(d, f, rng);
      FirstOrderFamily global = fam;
      for (auto& x : global.flags) x = x.transformed(g);
      for (auto& dirs : global.deformations)
        for (auto& w : dirs) w = multiply(w, g, f);
      EXPECT_EQ(rank(delta_matrix(global), f), rank(delta, f));
    }
}

TEST(FlagText, Roundtrip) {
  const PrimeField f3(3);
  const Flag p(make_matrix(3, 3, {1, 2, 0, 0, 1, 1, 0, 0, 1}, f3), f3);
  EXPECT_EQ(parse_flag(format_flag(p)).basis(), p.basis());
  const Flag partial(identity_matrix(3), f3, {0, 1, 3});
  const Flag back = parse_flag(format_flag(partial));
  EXPECT_EQ(back.coranks(), partial.coranks());
  EXPECT_EQ(back, partial);
  EXPECT_THROW(parse_flag("d=2 p=3\n1 0\n"), ParseError);
  EXPECT_THROW(parse_flag("d=2 p=3\n1 1\n1 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_flag("d=2 p=3 coranks=0,x,2\n1 0\n0 1\n"), ParseError);
}
