#include <monoamp/point.hpp>

#include <gtest/gtest.h>

using monoamp::Point;

TEST(Point, IndexFollowsLexicographicOrder)
{
    EXPECT_EQ(Point::from_string("10").to_index(), 2U);
    EXPECT_EQ(Point::from_string("01").to_index(), 1U);
    EXPECT_EQ(Point::from_index(3, 6).to_string(), "110");
    EXPECT_TRUE(Point::from_string("10")[0]);
    EXPECT_FALSE(Point::from_string("10")[1]);
}

TEST(Point, PartialOrder)
{
    const auto a = Point::from_string("0101");
    const auto b = Point::from_string("0111");
    const auto c = Point::from_string("1010");
    EXPECT_TRUE(a.leq(b));
    EXPECT_TRUE(a.less(b));
    EXPECT_FALSE(b.leq(a));
    EXPECT_FALSE(a.leq(c));
    EXPECT_FALSE(c.leq(a));
    EXPECT_TRUE(a.leq(a));
    EXPECT_FALSE(a.less(a));
}

TEST(Point, RejectsNonBinaryStrings)
{
    EXPECT_THROW(Point::from_string("01x"), monoamp::ParseError);
}

TEST(Point, UniformClearsBitsPastArity)
{
    monoamp::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto p = Point::uniform(70, rng);
        EXPECT_LE(p.weight(), 70U);
        EXPECT_EQ(p, Point::from_string(p.to_string()));
    }
}

// Property: splitting a long point into blocks and reassembling them is the identity,
// and the index of each block matches its string.
TEST(Point, SliceAssignRoundTrip)
{
    monoamp::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(9);
        const std::size_t k = 1 + rng.below(20);
        const auto x = Point::uniform(n * k, rng);
        Point y(n * k);
        for (std::size_t j = 0; j < k; ++j) {
            const auto block = x.slice(j * n, n);
            EXPECT_EQ(Point::from_index(n, block.to_index()), block);
            y.assign_slice(j * n, block);
        }
        EXPECT_EQ(x, y);
        EXPECT_EQ(x.hash(), y.hash());
    }
}
