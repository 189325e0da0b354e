#include "maxmean/instance.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_util.h"

namespace maxmean {
namespace {

TEST(GenerateTest, TwoElementShape) {
  const Instance inst = Generate({2, InstanceKind::kTypeI, 7, 2});
  ASSERT_EQ(inst.size(), 2);
  EXPECT_EQ(inst.distance(0, 0), 0.0);
  EXPECT_EQ(inst.distance(1, 1), 0.0);
  EXPECT_EQ(inst.distance(0, 1), inst.distance(1, 0));
  EXPECT_GE(inst.distance(0, 1), -10.0);
  EXPECT_LE(inst.distance(0, 1), 10.0);
}

TEST(GenerateTest, TypeTwoMagnitudes) {
  const Instance inst = Generate({100, InstanceKind::kTypeII, 1, 2});
  int negative = 0;
  for (int i = 0; i < 100; ++i) {
    for (int j = i + 1; j < 100; ++j) {
      const double d = inst.distance(i, j);
      EXPECT_GE(std::abs(d), 5.0);
      EXPECT_LE(std::abs(d), 10.0);
      negative += d < 0;
    }
  }
  // 4950 fair coin flips: well inside 5 sigma of 2475.
  EXPECT_NEAR(negative, 2475, 5 * std::sqrt(4950 * 0.25));
}

TEST(GenerateTest, DeterministicForSeed) {
  const GeneratorConfig config{50, InstanceKind::kTypeI, 42, 2};
  EXPECT_EQ(Generate(config), Generate(config));
  EXPECT_FALSE(Generate(config) == Generate({50, InstanceKind::kTypeI, 43, 2}));
}

TEST(GenerateTest, RangesSymmetryAndMean) {
  for (InstanceKind kind : {InstanceKind::kTypeI, InstanceKind::kTypeII}) {
    const int n = 500;
    const Instance inst = Generate({n, kind, 11, 2});
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ASSERT_EQ(inst.distance(i, j), inst.distance(j, i));
        if (i == j) continue;
        const double d = inst.distance(i, j);
        if (kind == InstanceKind::kTypeI) {
          ASSERT_TRUE(d >= -10.0 && d <= 10.0);
        } else {
          ASSERT_TRUE(std::abs(d) >= 5.0 && std::abs(d) <= 10.0);
        }
        sum += d;
        // Two decimals.
        ASSERT_NEAR(d * 100.0, std::round(d * 100.0), 1e-6);
      }
    }
    if (kind == InstanceKind::kTypeI) {
      EXPECT_LE(std::abs(sum / (n * (n - 1.0))), 0.5);
    }
  }
}

TEST(GenerateTest, RejectsBadConfig) {
  EXPECT_THROW(Generate({1, InstanceKind::kTypeI, 0, 2}), InvalidConfigError);
  EXPECT_THROW(Generate({5, InstanceKind::kTypeI, 0, 10}), InvalidConfigError);
  EXPECT_THROW(Generate({5, InstanceKind::kExternal, 0, 2}),
               InvalidConfigError);
}

TEST(InstanceTest, ConstructorValidates) {
  EXPECT_THROW(Instance(1, {0.0}), InvalidConfigError);
  EXPECT_THROW(Instance(2, {0.0, 1.0, 2.0, 0.0}), InvalidConfigError);
  EXPECT_THROW(Instance(2, {0.0, 1.0, 1.0}), InvalidConfigError);
  EXPECT_THROW(Instance(2, {0.0, 11.0, 11.0, 0.0}, "", InstanceKind::kTypeI),
               InvalidConfigError);
  EXPECT_THROW(Instance(2, {0.0, 3.0, 3.0, 0.0}, "", InstanceKind::kTypeII),
               InvalidConfigError);
  // Diagonal is forced to zero.
  const Instance inst(2, {5.0, 1.0, 1.0, 5.0});
  EXPECT_EQ(inst.distance(0, 0), 0.0);
}

TEST(ReadInstanceTest, CanonicalPairs) {
  std::istringstream in("3\n1 2 4.0\n1 3 -2.0\n2 3 0.5\n");
  const Instance inst = ReadInstance(in);
  ASSERT_EQ(inst.size(), 3);
  EXPECT_EQ(inst.distance(0, 1), 4.0);
  EXPECT_EQ(inst.distance(1, 0), 4.0);
  EXPECT_EQ(inst.distance(0, 2), -2.0);
  EXPECT_EQ(inst.distance(1, 2), 0.5);
  EXPECT_EQ(inst.kind(), InstanceKind::kExternal);
}

TEST(ReadInstanceTest, RoundTrip) {
  const Instance inst = Generate({20, InstanceKind::kTypeI, 5, 2});
  std::stringstream buf;
  WriteInstance(inst, buf);
  const std::string first = buf.str();
  const Instance back = ReadInstance(buf);
  EXPECT_EQ(back, inst);
  std::ostringstream again;
  WriteInstance(back, again);
  EXPECT_EQ(again.str(), first);
}

TEST(ReadInstanceTest, RoundTripFullPrecision) {
  // Values that are not short decimals still survive the text form.
  const Instance inst = Generate({12, InstanceKind::kTypeII, 9, 9});
  std::stringstream buf;
  WriteInstance(inst, buf);
  EXPECT_EQ(ReadInstance(buf), inst);
}

TEST(ReadInstanceTest, FullMatrixLayout) {
  std::istringstream in(
      "# downloaded benchmark\n3\n0 4 -2\n4 0 0.5\n-2 0.5 0\n");
  const Instance inst = ReadInstance(in, "mdp3");
  EXPECT_EQ(inst.name(), "mdp3");
  EXPECT_EQ(inst.distance(0, 1), 4.0);
  EXPECT_EQ(inst.distance(2, 0), -2.0);
  EXPECT_EQ(inst.distance(2, 1), 0.5);
}

TEST(ReadInstanceTest, FullMatrixToleratesTinyAsymmetry) {
  std::istringstream in("2\n0 1.0000000000001\n1 0\n");
  EXPECT_EQ(ReadInstance(in).distance(0, 1), 1.0000000000001);
}

int ParseErrorLine(const std::string& text) {
  std::istringstream in(text);
  try {
    ReadInstance(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ReadInstanceTest, Errors) {
  // Missing pair line: reported at the end of the file.
  EXPECT_EQ(ParseErrorLine("3\n1 2 4.0\n1 3 -2.0\n"), 3);
  EXPECT_EQ(ParseErrorLine("x\n"), 1);
  EXPECT_EQ(ParseErrorLine("3 4\n"), 1);
  EXPECT_EQ(ParseErrorLine("1\n"), 1);
  EXPECT_EQ(ParseErrorLine("3\n1 2 4\n1 4 1\n2 3 1\n"), 3);   // out of range
  EXPECT_EQ(ParseErrorLine("3\n1 2 4\n2 1 1\n2 3 1\n"), 3);   // duplicate
  EXPECT_EQ(ParseErrorLine("3\n1 2 4\n1 3 abc\n2 3 1\n"), 3);
  EXPECT_EQ(ParseErrorLine("3\n1 2\n1 3 1\n2 3 1\n"), 2);
  EXPECT_EQ(ParseErrorLine("2\n0 1\n1.5 0\n"), 3);            // asymmetric
  EXPECT_EQ(ParseErrorLine("2\n0 1\n1\n"), 3);                // short matrix
  EXPECT_EQ(ParseErrorLine("# only comments\n"), 0);
}

TEST(ReadInstanceTest, ErrorMessageNamesLine) {
  std::istringstream in("3\n1 2 4.0\n1 3 -2.0\n");
  try {
    ReadInstance(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

}  // namespace
}  // namespace maxmean
