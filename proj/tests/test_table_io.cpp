#include <monoamp/table_io.hpp>

#include <gtest/gtest.h>

#include <sstream>
#include <string>

using namespace monoamp;

namespace {

TruthTable parse(const std::string& text)
{
    std::istringstream in(text);
    return read_truth_table(in);
}

std::string fixture(const std::string& name) { return std::string(MONOAMP_FIXTURES_DIR) + "/" + name; }

} // namespace

TEST(TableIo, ReadsFixtures)
{
    const auto and2 = BoolFn::from_table(read_truth_table_file(fixture("and-n2.tt")));
    EXPECT_EQ(and2.arity(), 2U);
    EXPECT_TRUE(and2.eval(Point::from_string("11")));
    EXPECT_FALSE(and2.eval(Point::from_string("10")));

    const auto anti = BoolFn::from_table(read_truth_table_file(fixture("antidictator-n2.tt")));
    EXPECT_TRUE(anti.eval(Point::from_string("01")));
    EXPECT_FALSE(anti.eval(Point::from_string("10")));

    EXPECT_EQ(read_truth_table_file(fixture("parity-n2.tt")), fns::parity(2).table());
    EXPECT_EQ(read_truth_table_file(fixture("majority-n3.tt")), fns::majority(3).table());
}

TEST(TableIo, ToleratesTrailingWhitespaceAndCrlf)
{
    EXPECT_EQ(parse("n=2\r\n0110\r\n"), fns::parity(2).table());
    EXPECT_EQ(parse("n=2 \n0110  \n\n"), fns::parity(2).table());
    EXPECT_EQ(parse("n=2\n0110"), fns::parity(2).table());
}

TEST(TableIo, RejectsMalformedInput)
{
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("n2\n0110\n"), ParseError);
    EXPECT_THROW(parse("n=\n0110\n"), ParseError);
    EXPECT_THROW(parse("n=0\n0\n"), ParseError);
    EXPECT_THROW(parse("n=2\n011\n"), ParseError);
    EXPECT_THROW(parse("n=2\n01x0\n"), ParseError);
    EXPECT_THROW(parse("n=2\n0110\n1111\n"), ParseError);
    EXPECT_THROW(parse("n=2\n"), ParseError);
    EXPECT_THROW(parse("n=25\n0\n"), Unsupported);
    EXPECT_THROW(read_truth_table_file(fixture("malformed.tt")), ParseError);
    EXPECT_THROW(read_truth_table_file(fixture("does-not-exist.tt")), ParseError);
}

TEST(TableIo, WriteReadRoundTrip)
{
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(10);
        const auto t = TruthTable::from_predicate(n, [&](std::uint64_t) { return rng.bernoulli(0.5); });
        EXPECT_EQ(parse(to_table_string(t)), t);
    }
}
