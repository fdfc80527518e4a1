/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include <numeric>
#include <random>

#include "support.hpp"

using namespace hmc;
using hmc::test::R;

namespace {

/* (a/b) + (c/d) on machine integers, reduced by hand */
std::pair<long, long> cross_add(long a, long b, long c, long d)
{
	long n = a * d + c * b, m = b * d;
	long g = std::gcd(n, m);
	n /= g;
	m /= g;
	if (m < 0) {
		n = -n;
		m = -m;
	}
	return {n, m};
}

bool canonical(const BigRational &q)
{
	return q.den() > 0 && gcd(q.num(), q.den()) == 1 && (!q.is_zero() || q.den() == 1);
}

} // namespace

TEST(RatArith, AddMatchesCrossMultiplication)
{
	EXPECT_EQ(R(1, 2) + R(1, 3), R(5, 6));
	std::mt19937_64 rng(7);
	std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
	for (int i = 0; i < 500; ++i) {
		long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
		auto [n, m] = cross_add(a, b, c, d);
		BigRational s = R(a, b) + R(c, d);
		EXPECT_EQ(s.num(), BigInt(n));
		EXPECT_EQ(s.den(), BigInt(m));
	}
}

TEST(RatArith, IdentityAndInverse)
{
	BigRational x = R(-7, 3);
	EXPECT_EQ(x * R(1), x);
	EXPECT_EQ(R(2, 3).inv(), R(3, 2));
	EXPECT_THROW(R(0).inv(), DomainError);
	EXPECT_THROW(R(1) / R(0), DomainError);
}

TEST(RatArith, CanonicalFormAfterEveryOperation)
{
	std::mt19937_64 rng(11);
	std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
	for (int i = 0; i < 300; ++i) {
		BigRational a = R(num(rng), den(rng)), b = R(num(rng), den(rng));
		EXPECT_TRUE(canonical(a + b));
		EXPECT_TRUE(canonical(a - b));
		EXPECT_TRUE(canonical(a * b));
		EXPECT_TRUE(canonical(-a));
		EXPECT_TRUE(canonical(a.abs()));
		if (!b.is_zero())
			EXPECT_TRUE(canonical(a / b));
	}
	EXPECT_EQ(R(0, 5).den(), 1);
	EXPECT_EQ(R(4, -6), R(-2, 3));
	EXPECT_EQ(R(4, -6).den(), 3);
}

TEST(RatArith, FieldAxiomsOnRandomRationals)
{
	std::mt19937_64 rng(13);
	std::uniform_int_distribution<long> num(-300, 300), den(1, 300);
	for (int i = 0; i < 300; ++i) {
		BigRational a = R(num(rng), den(rng)), b = R(num(rng), den(rng)), c = R(num(rng), den(rng));
		EXPECT_EQ((a + b) + c, a + (b + c));
		EXPECT_EQ((a * b) * c, a * (b * c));
		EXPECT_EQ(a * (b + c), a * b + a * c);
		if (!a.is_zero())
			EXPECT_EQ(a * a.inv(), R(1));
	}
}

TEST(RatArith, TotalOrder)
{
	EXPECT_LT(R(1, 3), R(1, 2));
	EXPECT_GT(R(-1, 3), R(-1, 2));
	EXPECT_EQ(R(2, 4) <=> R(1, 2), std::strong_ordering::equal);
}

TEST(RatText, ParseAndPrint)
{
	EXPECT_EQ(BigRational::parse("3/4"), R(3, 4));
	EXPECT_EQ(BigRational::parse("-6/8"), R(-3, 4));
	EXPECT_EQ(BigRational::parse("+5"), R(5));
	EXPECT_EQ(BigRational::parse("12"), R(12));
	EXPECT_EQ(BigRational::parse("010/09"), R(10, 9));
	EXPECT_THROW(BigRational::parse("1/0"), PreconditionError);
	EXPECT_THROW(BigRational::parse("x"), PreconditionError);
	EXPECT_EQ(R(-3, 4).str(), "-3/4");
	EXPECT_EQ(R(7).str(), "7");
	EXPECT_EQ(R(22, 7).decimal(3), "3.142");
	EXPECT_EQ(R(-1, 3).decimal(2), "-0.34");
}

TEST(Binomial, SmallValues)
{
	for (unsigned n = 0; n < 10; ++n)
		EXPECT_EQ(binomial(n, 0), 1);
	EXPECT_EQ(binomial(4, 2), 6);
	EXPECT_EQ(binomial(2, 5), 0);
}

TEST(Binomial, PascalRecurrenceOracle)
{
	// table built only from additions
	std::vector<std::vector<std::uint64_t>> t(31, std::vector<std::uint64_t>(31, 0));
	for (unsigned m = 0; m <= 30; ++m) {
		t[m][0] = 1;
		for (unsigned n = 1; n <= m; ++n)
			t[m][n] = t[m - 1][n - 1] + (n <= m - 1 ? t[m - 1][n] : 0);
	}
	for (unsigned m = 0; m <= 30; ++m)
		for (unsigned n = 0; n <= 30; ++n)
			EXPECT_EQ(binomial(m, n), BigInt(std::to_string(t[m][n]))) << m << " " << n;
	for (unsigned m = 1; m <= 30; ++m)
		for (unsigned n = 1; n <= m; ++n)
			EXPECT_EQ(binomial(m, n), binomial(m - 1, n - 1) + binomial(m - 1, n));
}

TEST(Factorial, Values)
{
	EXPECT_EQ(factorial(0), 1);
	EXPECT_EQ(factorial(1), 1);
	std::uint64_t acc = 1;
	for (unsigned k = 1; k <= 20; ++k) {
		acc *= k;
		EXPECT_EQ(factorial(k), BigInt(std::to_string(acc)));
	}
	EXPECT_EQ(factorial(5), 120);
}

TEST(RatIntervalOps, Arithmetic)
{
	RatInterval a(R(-1), R(2)), b(R(1, 2), R(3));
	EXPECT_EQ((a + b).lo(), R(-1, 2));
	EXPECT_EQ((a + b).hi(), R(5));
	EXPECT_EQ((a * b).lo(), R(-3));
	EXPECT_EQ((a * b).hi(), R(6));
	EXPECT_EQ(a.mag(), R(2));
	EXPECT_TRUE(a.contains(R(0)));
	EXPECT_THROW(RatInterval(R(1), R(0)), DomainError);
}

TEST(Bits, Log2AndRounding)
{
	EXPECT_EQ(ceil_log2(R(1)), 0);
	EXPECT_EQ(ceil_log2(R(3)), 2);
	EXPECT_EQ(ceil_log2(R(1, 3)), -1);
	EXPECT_EQ(ceil_log2(BigInt(1024)), 10);
	EXPECT_EQ(pow2(-3), R(1, 8));
	BigRational x = R(1, 3);
	EXPECT_LE((round_to_bits(x, 20) - x).abs(), pow2(-21));
}
