#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bils/error.hpp"
#include "bils/linalg.hpp"
#include "support/oracles.hpp"

namespace bils {
namespace {

using testing::above_diagonal_max;
using testing::below_diagonal_max;
using testing::frob;
using testing::frob_diff;
using testing::identity_error;
using testing::max_abs_diff;
using testing::naive_at_b;
using testing::naive_gram;
using testing::random_mat;
using testing::random_upper;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no bils::Error thrown";
  return ErrorCode::kInvalidArgument;
}

// ---- Mat -------------------------------------------------------------------

TEST(Mat, RejectsEmptyAndNonFinite) {
  EXPECT_EQ(code_of([] { Mat(0, 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Mat(2, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Mat(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Mat(1, 2, {1.0, std::numeric_limits<double>::infinity()}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Mat(2, 2, {1.0, 2.0, 3.0}); }), ErrorCode::kDimensionMismatch);
}

TEST(Mat, RowMajorLayoutAndHelpers) {
  const Mat a{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(a(1, 0), 4.0);
  EXPECT_EQ(a.data()[2], 3.0);
  EXPECT_EQ(a.col(2), (Vector{3, 6}));
  EXPECT_EQ(a.transposed(), (Mat{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(a.without_column(1), (Mat{{1, 3}, {4, 6}}));
  const std::vector<std::size_t> p{2, 0, 1};
  EXPECT_EQ(a.permuted_columns(p), (Mat{{3, 1, 2}, {6, 4, 5}}));
  EXPECT_EQ(transpose_times(a, a), naive_gram(a));
}

// ---- Givens ----------------------------------------------------------------

TEST(Givens, ZeroesSecondEntryAndPreservesNorm) {
  const double pairs[][2] = {{3, 4}, {-1, 2}, {0, 5}, {7, 0}, {1e300, 1e300}, {1e-300, -3e-300}};
  for (const auto& p : pairs) {
    const auto g = GivensRotation::zeroing(0, 1, p[0], p[1]);
    EXPECT_NEAR(g.c * g.c + g.s * g.s, 1.0, 1e-12);
    double a = p[0];
    double b = p[1];
    g.apply(a, b);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_NEAR(b, 0.0, 1e-15 * std::hypot(p[0], p[1]));
    EXPECT_NEAR(std::abs(a), std::hypot(p[0], p[1]), 1e-12 * std::hypot(p[0], p[1]));
  }
}

TEST(Givens, PreservesPairNormOfOtherColumns) {
  const auto g = GivensRotation::zeroing(0, 1, 0.3, -1.7);
  const double u = 2.5;
  const double v = -0.25;
  double a = u;
  double b = v;
  g.apply(a, b);
  EXPECT_NEAR(std::hypot(a, b), std::hypot(u, v), 1e-12 * std::hypot(u, v));
}

// ---- Householder QR ---------------------------------------------------------

TEST(HouseholderQr, IdentityIsFixed) {
  const Vector y{1, 2, 3};
  const auto qr = householder_qr_with_rhs(Mat::identity(3), y);
  EXPECT_EQ(max_abs_diff(qr.r, Mat::identity(3)), 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(qr.ybar[i], y[i], 1e-15);
  EXPECT_NEAR(qr.residual_sq, 0.0, 1e-15);
}

TEST(HouseholderQr, SingleColumnIsItsNorm) {
  const Vector y{3, 4};
  const auto qr = householder_qr_with_rhs(Mat{{3}, {4}}, y);
  ASSERT_EQ(qr.r.rows(), 1u);
  EXPECT_NEAR(qr.r(0, 0), 5.0, 1e-14);
  EXPECT_NEAR(qr.ybar[0], 5.0, 1e-14);
  EXPECT_NEAR(qr.residual_sq, 0.0, 1e-14);
}

TEST(HouseholderQr, GramIdentityOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Mat h = random_mat(seed, 5 + seed % 3, 3 + seed % 3);
    const Vector y = random_mat(seed + 100, h.rows(), 1).col(0);
    const auto qr = householder_qr_with_rhs(h, y);
    const double hn = frob(h);
    EXPECT_LE(frob_diff(naive_gram(h), naive_gram(qr.r)), 1e-10 * hn * hn) << seed;
    EXPECT_EQ(below_diagonal_max(qr.r), 0.0);
    for (std::size_t k = 0; k < qr.r.rows(); ++k) EXPECT_GT(qr.r(k, k), 0.0);
    const double ybar_sq = dot(qr.ybar, qr.ybar);
    EXPECT_LE(std::sqrt(ybar_sq), norm2(y) * (1 + 1e-14));
    EXPECT_NEAR(ybar_sq + qr.residual_sq, dot(y, y), 1e-12 * dot(y, y));
  }
}

TEST(HouseholderQr, YbarIsProjectionOntoColumns) {
  // ybar = Q1^T y, so R^T ybar = H^T y.
  const Mat h = random_mat(7, 6, 4);
  const Vector y = random_mat(8, 6, 1).col(0);
  const auto qr = householder_qr_with_rhs(h, y);
  for (std::size_t j = 0; j < 4; ++j) {
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < 4; ++i) lhs += qr.r(i, j) * qr.ybar[i];
    for (std::size_t i = 0; i < 6; ++i) rhs += h(i, j) * y[i];
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST(HouseholderQr, Errors) {
  const Mat dup{{1, 1}, {2, 2}, {3, 3}};
  EXPECT_EQ(code_of([&] { householder_qr_with_rhs(dup, Vector{1, 2, 3}); }),
            ErrorCode::kRankDeficient);
  EXPECT_EQ(code_of([] { householder_qr_with_rhs(Mat::identity(3), Vector{1, 2}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { householder_qr_with_rhs(Mat{{1, 2}}, Vector{1}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(HouseholderQr, NearlyDependentColumnsAreRankDeficient) {
  const Mat h{{1, 1}, {0, 1e-14}, {0, 0}};
  EXPECT_EQ(code_of([&] { householder_qr_with_rhs(h, Vector{1, 1, 1}); }),
            ErrorCode::kRankDeficient);
}

TEST(HouseholderQr, ThinQrHasOrthonormalQ) {
  const Mat h = random_mat(11, 7, 4);
  const auto qr = householder_thin_qr(h);
  EXPECT_LE(identity_error(naive_at_b(qr.q, qr.q)), 1e-13);
  EXPECT_LE(max_abs_diff(qr.q * qr.r, h), 1e-12 * frob(h));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_GT(qr.r(k, k), 0.0);
}

TEST(HouseholderQr, Deterministic) {
  const Mat h = random_mat(3, 9, 6);
  const Vector y = random_mat(4, 9, 1).col(0);
  const auto a = householder_qr_with_rhs(h, y);
  const auto b = householder_qr_with_rhs(h, y);
  EXPECT_EQ(a.r, b.r);
  EXPECT_EQ(a.ybar, b.ybar);
}

// ---- lower_tri_inv_transpose ------------------------------------------------

TEST(LowerTriInvTranspose, Identity) {
  EXPECT_EQ(lower_tri_inv_transpose(Mat::identity(2)), Mat::identity(2));
}

TEST(LowerTriInvTranspose, HandInverted2x2) {
  // inv([[2,1],[0,3]]) = [[1/2, -1/6], [0, 1/3]]; transposing gives G.
  const Mat g = lower_tri_inv_transpose(Mat{{2, 1}, {0, 3}});
  EXPECT_NEAR(g(0, 0), 0.5, 1e-15);
  EXPECT_EQ(g(0, 1), 0.0);
  EXPECT_NEAR(g(1, 0), -1.0 / 6.0, 1e-15);
  EXPECT_NEAR(g(1, 1), 1.0 / 3.0, 1e-15);
}

TEST(LowerTriInvTranspose, ResidualOnRandom6x6) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Mat r = random_upper(seed, 6);
    const Mat g = lower_tri_inv_transpose(r);
    EXPECT_EQ(above_diagonal_max(g), 0.0);
    EXPECT_LE(identity_error(naive_at_b(r, g)), 1e-12) << seed;
  }
}

TEST(LowerTriInvTranspose, SingularDiagonal) {
  EXPECT_EQ(code_of([] { lower_tri_inv_transpose(Mat{{1, 2}, {0, 0}}); }),
            ErrorCode::kSingularDiagonal);
}

// ---- swap_column_retriangularize --------------------------------------------

TEST(SwapColumn, LastColumnIsIdentity) {
  const Mat r = random_upper(5, 4);
  const Vector y{1, 2, 3, 4};
  const auto out = swap_column_retriangularize(r, y, 3);
  EXPECT_EQ(out.r, r);
  EXPECT_EQ(out.y, y);
  EXPECT_TRUE(out.transform.is_identity());
}

TEST(SwapColumn, ColumnNormsAreInvariant) {
  const auto out = swap_column_retriangularize(Mat{{1, 2}, {0, 1}}, Vector{0, 0}, 0);
  EXPECT_NEAR(std::hypot(out.r(0, 0), out.r(1, 0)), std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(std::hypot(out.r(0, 1), out.r(1, 1)), 1.0, 1e-15);
  EXPECT_EQ(out.r(1, 0), 0.0);
  EXPECT_GT(out.r(1, 1), 0.0);
}

TEST(SwapColumn, GramInvarianceOnRandom5x5) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Mat r = random_upper(seed, 5);
    const Vector y = random_mat(seed + 50, 5, 1).col(0);
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<std::size_t> p{0, 1, 2, 3, 4};
      std::swap(p[i], p[4]);
      const auto out = swap_column_retriangularize(r, y, i);
      const Mat rp = testing::select_columns(r, p);
      EXPECT_LE(frob_diff(naive_gram(out.r), naive_gram(rp)), 1e-10) << seed << " " << i;
      EXPECT_EQ(below_diagonal_max(out.r), 0.0);
      for (std::size_t k = 0; k < 5; ++k) EXPECT_GE(out.r(k, k), 0.0);
      // The same V^T maps R P to Rhat and ybar to yhat, so Rhat^T yhat = (RP)^T ybar.
      for (std::size_t j = 0; j < 5; ++j) {
        double lhs = 0.0;
        double rhs = 0.0;
        for (std::size_t t = 0; t < 5; ++t) {
          lhs += out.r(t, j) * out.y[t];
          rhs += rp(t, j) * y[t];
        }
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::abs(rhs)));
      }
      Vector replay = y;
      out.transform.apply(replay);
      EXPECT_EQ(replay, out.y);
    }
  }
}

TEST(SwapColumn, IndexOutOfRange) {
  EXPECT_EQ(code_of([] { swap_column_retriangularize(Mat::identity(3), Vector{1, 2, 3}, 3); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([] { swap_column_retriangularize(Mat::identity(3), Vector{1, 2}, 0); }),
            ErrorCode::kDimensionMismatch);
}

// ---- remove_column_retriangularize ------------------------------------------

TEST(RemoveColumn, TrailingColumnNeedsNoRotation) {
  const Mat r = random_upper(9, 4);
  const Mat g = lower_tri_inv_transpose(r);
  const Vector y{1, 2, 3, 4};
  const auto out = remove_column_retriangularize(r, g, y, 3);
  EXPECT_EQ(out.r, r.block(0, 0, 3, 3));
  EXPECT_EQ(out.g, g.block(0, 0, 3, 3));
  EXPECT_EQ(out.y, (Vector{1, 2, 3}));
  EXPECT_TRUE(out.transform.is_identity());
}

TEST(RemoveColumn, TwoByTwoKeepsRemainingColumnNorm) {
  const Mat r{{1, 1}, {0, 2}};
  const auto out = remove_column_retriangularize(r, lower_tri_inv_transpose(r), Vector{0, 0}, 0);
  ASSERT_EQ(out.r.rows(), 1u);
  EXPECT_NEAR(out.r(0, 0), std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(out.g(0, 0), 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(RemoveColumn, EveryColumnOfRandom6x6) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Mat r = random_upper(seed, 6);
    const Mat g = lower_tri_inv_transpose(r);
    const Vector y = random_mat(seed + 70, 6, 1).col(0);
    for (std::size_t j = 0; j < 6; ++j) {
      const auto out = remove_column_retriangularize(r, g, y, j);
      const double gn = frob(out.g);
      EXPECT_LE(identity_error(naive_at_b(out.r, out.g)), 1e-9) << seed << " " << j;
      EXPECT_LE(above_diagonal_max(out.g), 1e-12 * gn) << seed << " " << j;
      EXPECT_EQ(below_diagonal_max(out.r), 0.0);
      for (std::size_t k = 0; k < 5; ++k) EXPECT_GT(out.r(k, k), 0.0);

      // Agrees with recomputing the inverse factor from scratch.
      const Mat fresh = lower_tri_inv_transpose(out.r);
      EXPECT_LE(frob_diff(out.g, fresh), 1e-9 * frob(fresh));

      // Gram of the surviving columns is unchanged.
      EXPECT_LE(frob_diff(naive_gram(out.r), naive_gram(testing::drop_column(r, j))), 1e-10);

      // The recorded transform maps ybar and the removed column consistently.
      Vector ty = y;
      out.transform.apply(ty);
      for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(ty[k], out.y[k]);
      Vector tc = r.col(j);
      out.transform.apply(tc);
      for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(tc[k], out.removed_column[k], 1e-14);
      EXPECT_GT(out.removed_column[5], 0.0);
    }
  }
}

TEST(RemoveColumn, Errors) {
  const Mat r = random_upper(2, 3);
  const Mat g = lower_tri_inv_transpose(r);
  EXPECT_EQ(code_of([&] { remove_column_retriangularize(r, g, Vector{1, 2, 3}, 3); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([&] { remove_column_retriangularize(r, g, Vector{1, 2}, 0); }),
            ErrorCode::kDimensionMismatch);
  const Mat one{{2}};
  EXPECT_EQ(code_of([&] { remove_column_retriangularize(one, Mat{{0.5}}, Vector{1}, 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(RemoveColumn, InconsistentInverseFactorIsCaughtInDebugBuilds) {
#if defined(BILS_DEBUG_CHECKS)
  const Mat r = random_upper(4, 3);
  Mat g = lower_tri_inv_transpose(r);
  g(2, 0) += 0.5;
  EXPECT_EQ(code_of([&] { remove_column_retriangularize(r, g, Vector{1, 2, 3}, 0); }),
            ErrorCode::kInconsistentState);
#else
  GTEST_SKIP() << "consistency checks are compiled only into Debug builds";
#endif
}

TEST(FlopCounter, GivensSweepCountsFourPerPair) {
  // Swapping column 0 of a 3x3 to the end needs a sweep over the full width.
  FlopCounter c;
  swap_column_retriangularize(random_upper(1, 3), Vector{1, 2, 3}, 0, &c);
  EXPECT_GT(c.units, 0u);
  FlopCounter none;
  swap_column_retriangularize(random_upper(1, 3), Vector{1, 2, 3}, 2, &none);
  EXPECT_EQ(none.units, 0u);
}

}  // namespace
}  // namespace bils
