/*
 * Copyright 2026 The Pathlabel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pathlabel/geometry.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "pathlabel/error.h"

namespace pathlabel {
namespace {

using testing::EulerMatrix;
using testing::HomogeneousApply;
using testing::NaiveChain;
using testing::RandomTransform;

void ExpectMatrixNear(const Eigen::MatrixXd& actual,
                      const Eigen::MatrixXd& expected, double tolerance) {
  ASSERT_EQ(actual.rows(), expected.rows());
  ASSERT_EQ(actual.cols(), expected.cols());
  for (int r = 0; r < actual.rows(); ++r) {
    for (int c = 0; c < actual.cols(); ++c) {
      EXPECT_NEAR(actual(r, c), expected(r, c), tolerance) << r << "," << c;
    }
  }
}

TEST(ComposeChainTest, EmptyChainIsIdentity) {
  const std::vector<RigidTransform> relatives = {
      RigidTransform::Translation({1., 2., 3.})};
  const RigidTransform g = ComposeChain(relatives, 0, 0);
  ExpectMatrixNear(g.ToMatrix(), Eigen::Matrix4d::Identity(), 0.);
  ExpectMatrixNear(ComposeChain(relatives, 1, 0).ToMatrix(),
                   Eigen::Matrix4d::Identity(), 0.);
}

TEST(ComposeChainTest, TranslationsAdd) {
  const std::vector<RigidTransform> relatives(
      2, RigidTransform::Translation({0., 0., 1.}));
  const RigidTransform g = ComposeChain(relatives, 0, 2);
  ExpectMatrixNear(g.rotation(), Eigen::Matrix3d::Identity(), 0.);
  ExpectMatrixNear(g.translation(), Eigen::Vector3d(0., 0., 2.), 0.);
}

TEST(ComposeChainTest, MatchesNaiveProduct) {
  std::mt19937_64 rng(11);
  std::vector<RigidTransform> relatives;
  for (int i = 0; i < 10; ++i) relatives.push_back(RandomTransform(rng));
  ExpectMatrixNear(ComposeChain(relatives, 0, 10).ToMatrix(),
                   NaiveChain(relatives, 0, 10), 1e-9);
  ExpectMatrixNear(ComposeChain(relatives, 3, 5).ToMatrix(),
                   NaiveChain(relatives, 3, 5), 1e-9);
}

TEST(ComposeChainTest, OutOfRangeThrowsIndexError) {
  const std::vector<RigidTransform> relatives(3);
  EXPECT_THROW(ComposeChain(relatives, 2, 2), IndexError);
  EXPECT_THROW(ComposeChain(relatives, 4, 0), IndexError);
  EXPECT_NO_THROW(ComposeChain(relatives, 0, 3));
}

TEST(ComposeChainTest, SplitsAtAnyIndex) {
  std::mt19937_64 rng(5);
  std::vector<RigidTransform> relatives;
  for (int i = 0; i < 12; ++i) relatives.push_back(RandomTransform(rng));
  const RigidTransform whole = ComposeChain(relatives, 0, 12);
  for (std::size_t m = 0; m <= 12; ++m) {
    const RigidTransform split =
        ComposeChain(relatives, 0, m) * ComposeChain(relatives, m, 12 - m);
    ExpectMatrixNear(split.ToMatrix(), whole.ToMatrix(), 1e-9);
  }
}

TEST(RigidTransformTest, CompositionIsAssociative) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const RigidTransform a = RandomTransform(rng);
    const RigidTransform b = RandomTransform(rng);
    const RigidTransform c = RandomTransform(rng);
    ExpectMatrixNear(((a * b) * c).ToMatrix(), (a * (b * c)).ToMatrix(), 1e-9);
  }
}

TEST(RigidTransformTest, InverseComposesToIdentity) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const RigidTransform a = RandomTransform(rng);
    ExpectMatrixNear((a * a.inverse()).ToMatrix(), Eigen::Matrix4d::Identity(),
                     1e-12);
    EXPECT_TRUE(a.IsValid());
  }
}

TEST(RigidTransformTest, RejectsReflection) {
  const RigidTransform reflection(Eigen::Vector3d(1., 1., -1.).asDiagonal(),
                                  Eigen::Vector3d::Zero());
  EXPECT_FALSE(reflection.IsValid());
}

TEST(TransformPointTest, Identity) {
  const Point3 p = TransformPoint(RigidTransform::Identity(), {1., 2., 3.});
  ExpectMatrixNear(p, Eigen::Vector3d(1., 2., 3.), 0.);
}

TEST(TransformPointTest, Translation) {
  const Point3 p =
      TransformPoint(RigidTransform::Translation({0., 0., 5.}), Point3::Zero());
  ExpectMatrixNear(p, Eigen::Vector3d(0., 0., 5.), 0.);
}

TEST(TransformPointTest, MatchesHomogeneousMultiply) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-20., 20.);
  for (int i = 0; i < 100; ++i) {
    const RigidTransform g = RandomTransform(rng);
    const Point3 p(coord(rng), coord(rng), coord(rng));
    ExpectMatrixNear(TransformPoint(g, p), HomogeneousApply(g, p), 1e-12);
  }
}

class ProjectTest : public ::testing::Test {
 protected:
  CameraModel camera_ = CameraModel::FromIntrinsics(100., 100., 320., 128., 640, 256);
};

TEST_F(ProjectTest, OpticalAxisHitsPrincipalPoint) {
  const Pixel p = Project(camera_, {0., 0., 10.});
  EXPECT_DOUBLE_EQ(p.u, 320.);
  EXPECT_DOUBLE_EQ(p.v, 128.);
}

TEST_F(ProjectTest, PinholeOffset) {
  const Pixel p = Project(camera_, {1., 0., 10.});
  EXPECT_NEAR(p.u, 100. * 1. / 10. + 320., 1e-12);
  EXPECT_NEAR(p.v, 128., 1e-12);
}

TEST_F(ProjectTest, BehindCameraThrows) {
  EXPECT_THROW(Project(camera_, {0., 0., -1.}), BehindCameraError);
  EXPECT_THROW(Project(camera_, {0., 0., 0.}), BehindCameraError);
  EXPECT_FALSE(TryProject(camera_, {0., 0., -1.}).has_value());
}

TEST(CameraModelTest, RejectsInvalidIntrinsics) {
  EXPECT_THROW(CameraModel::FromIntrinsics(0., 100., 320., 128., 640, 256),
               ValidationError);
  EXPECT_THROW(CameraModel::FromIntrinsics(100., 100., 700., 128., 640, 256),
               ValidationError);
  EXPECT_THROW(CameraModel::FromIntrinsics(100., 100., 320., 128., 0, 256),
               ValidationError);
}

TEST(YawOfTest, IdentityIsZero) {
  EXPECT_EQ(YawOf(RigidTransform::Identity()), 0.);
}

TEST(YawOfTest, PureYaw) {
  EXPECT_NEAR(YawOf(RigidTransform::PureYaw(0.1)), 0.1, 1e-12);
  EXPECT_NEAR(YawOf(RigidTransform::PureYaw(-2.5)), -2.5, 1e-12);
}

TEST(YawOfTest, PositiveYawTurnsRight) {
  const Point3 forward = RigidTransform::PureYaw(0.3) * Point3(0., 0., 1.);
  EXPECT_GT(forward.x(), 0.);
}

TEST(ToEulerTest, ReconstructsRandomRotations) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const RigidTransform g = RandomTransform(rng);
    const EulerAngles e = ToEuler(g.rotation());
    ExpectMatrixNear(EulerMatrix(e.yaw, e.pitch, e.roll), g.rotation(), 1e-9);
    EXPECT_NEAR(YawOf(g), e.yaw, 0.);
  }
}

TEST(ToEulerTest, RecoversConstructorAngles) {
  const RigidTransform g = RigidTransform::FromEuler(0.4, -0.2, 0.7);
  ExpectMatrixNear(g.rotation(), EulerMatrix(0.4, -0.2, 0.7), 1e-15);
  const EulerAngles e = ToEuler(g.rotation());
  EXPECT_NEAR(e.yaw, 0.4, 1e-12);
  EXPECT_NEAR(e.pitch, -0.2, 1e-12);
  EXPECT_NEAR(e.roll, 0.7, 1e-12);
}

TEST(ToEulerTest, GimbalLockStillReconstructs) {
  const Eigen::Matrix3d r = EulerMatrix(0.5, M_PI / 2, 0.2);
  const EulerAngles e = ToEuler(r);
  EXPECT_EQ(e.roll, 0.);
  ExpectMatrixNear(EulerMatrix(e.yaw, e.pitch, e.roll), r, 1e-9);
}

}  // namespace
}  // namespace pathlabel
