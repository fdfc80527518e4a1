/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include <random>
#include <thread>

#include "support.hpp"

using namespace hmc;
using namespace hmc::test;

namespace {

/* lo_n of the bisection of a^2 = 2 on [1, 2] after n halvings */
BigRational sqrt2_bisection(std::uint64_t n)
{
	BigRational lo(1), hi(2);
	for (std::uint64_t i = 0; i < n; ++i) {
		BigRational mid = (lo + hi) / 2;
		if (mid * mid <= BigRational(2))
			lo = mid;
		else
			hi = mid;
	}
	return lo;
}

CReal sqrt2_from_bisection()
{
	return CReal::from_cauchy(sqrt2_bisection, [](const BigInt &k) {
		return static_cast<std::uint64_t>(ceil_log2(BigInt(2 * k)));
	});
}

/* partial sums of sum 1/n! with the tail bound 2/(N+1)! */
CReal e_from_partial_sums()
{
	return CReal::from_cauchy(
	    [](std::uint64_t N) {
		    BigRational s, t(1);
		    for (std::uint64_t n = 0; n <= N; ++n) {
			    s += t;
			    t /= BigRational(static_cast<long>(n + 1));
		    }
		    return s;
	    },
	    [](const BigInt &k) {
		    std::uint64_t N = 1;
		    while (BigRational(2) / BigRational(factorial(N + 1)) > BigRational(BigInt(1), k))
			    ++N;
		    return N;
	    });
}

std::vector<CReal> sample_reals()
{
	return {CReal(R(1, 3)),        CReal(R(-7, 3)),   sqrt(R(2)),      euler_e(),
	        exp(R(-1)),            sqrt2_from_bisection() * CReal(R(3)), euler_e() - sqrt(R(3)),
	        lincomb({{R(2), euler_e()}, {R(-1, 5), sqrt(R(5))}})};
}

} // namespace

TEST(FromRational, ExactAtEveryPrecision)
{
	EXPECT_EQ(CReal::from_rational(R(1, 2)).approx(K(10)), R(1, 2));
	for (std::uint64_t k : {1, 2, 17, 1000})
		EXPECT_EQ(CReal::from_rational(R(0)).approx(K(k)), R(0));
	EXPECT_EQ(CReal::from_rational(R(-7, 3)).approx(K(1)), R(-7, 3));
}

TEST(FromCauchy, ConstantSequence)
{
	CReal x = CReal::from_cauchy([](std::uint64_t) { return R(3, 8); }, [](const BigInt &) { return 0; });
	for (std::uint64_t k : {1, 5, 100})
		EXPECT_TRUE(within(x, R(3, 8), k));
}

TEST(FromCauchy, BisectionSqrt2)
{
	CReal s = sqrt2_from_bisection();
	BigRational q = s.approx(K(100));
	EXPECT_GE(q * q, R(2) - R(1, 10));
	EXPECT_LE(q * q, R(2) + R(1, 10));
	EXPECT_TRUE(near(s, oracle(kSqrt2), 1000000, inv(1000000) + oracle_slack()));
}

TEST(FromCauchy, PartialSumsOfE)
{
	CReal e = e_from_partial_sums();
	EXPECT_EQ(e.approx(K(100000)).decimal(4), "2.7182");
	EXPECT_TRUE(near(e, oracle(kE), 1000000000, inv(1000000000) + oracle_slack()));
	EXPECT_EQ(compare(e, euler_e(), K(1000000)), Cmp::Within);
}

TEST(Arith, SumProductNegation)
{
	EXPECT_TRUE(within(CReal(R(1, 3)) + CReal(R(2, 3)), R(1), 50));
	CReal s = sqrt2_from_bisection();
	for (std::uint64_t k : {10, 1000, 1000000})
		EXPECT_TRUE(within(s * s, R(2), k));
	CReal x = euler_e();
	for (std::uint64_t k : {3, 300, 30000})
		EXPECT_TRUE(near(-(-x), x.approx(K(4 * k)), k, inv(k)));
}

TEST(Inverse, RationalAndIrrational)
{
	CReal half = CReal(R(2)).inverse(SeparationWitness{BigInt(1)});
	for (std::uint64_t k : {1, 10, 1000})
		EXPECT_TRUE(within(half, R(1, 2), k));
	CReal s = sqrt(R(2));
	auto w = find_witness(s);
	ASSERT_TRUE(w.has_value());
	EXPECT_TRUE(witness_valid(s, *w));
	for (std::uint64_t k : {10, 10000})
		EXPECT_TRUE(within(s.inverse(*w) * s, R(1), k));
	CReal ie = euler_e().inverse(SeparationWitness{BigInt(1)});
	EXPECT_TRUE(near(ie, oracle(kInvE), 1000, inv(1000) + oracle_slack()));
}

TEST(Inverse, InvalidWitnessRejected)
{
	CReal tiny(R(1, 1000));
	EXPECT_FALSE(witness_valid(tiny, SeparationWitness{BigInt(2)}));
	EXPECT_THROW(tiny.inverse(SeparationWitness{BigInt(2)}), ContractViolation);
	EXPECT_FALSE(find_witness(CReal(R(0)), 64).has_value());
}

TEST(Compare, ThreeValued)
{
	EXPECT_EQ(compare(CReal(R(0)), CReal(R(1)), K(10)), Cmp::Less);
	CReal x = euler_e();
	for (std::uint64_t k : {1, 10, 10000})
		EXPECT_EQ(compare(x, x, K(k)), Cmp::Within);
	EXPECT_EQ(compare(sqrt(R(2)), CReal(R(3, 2)), K(100)), Cmp::Less);
	EXPECT_EQ(compare(CReal(R(1, 1000)), CReal(R(0)), K(10)), Cmp::Within);
	EXPECT_EQ(compare(CReal(R(1, 1000)), CReal(R(0)), K(10000)), Cmp::Greater);
}

TEST(Compare, NeverFlipsAcrossPrecisions)
{
	std::mt19937_64 rng(3);
	auto xs = sample_reals();
	for (const auto &x : xs)
		for (const auto &y : xs) {
			bool less = false, greater = false;
			for (std::uint64_t k = 1; k <= 1u << 20; k *= 4) {
				Cmp c = compare(x, y, K(k));
				less = less || c == Cmp::Less;
				greater = greater || c == Cmp::Greater;
				if (c == Cmp::Within) {
					BigRational gap = (x.approx(K(8 * k)) - y.approx(K(8 * k))).abs();
					EXPECT_LE(gap, inv(k) + R(2) * inv(8 * k));
				}
			}
			EXPECT_FALSE(less && greater);
		}
}

TEST(Limit, ConstantAndGeometric)
{
	CReal c = CReal::limit([](std::uint64_t) { return euler_e(); }, [](const BigInt &) { return 0; });
	EXPECT_EQ(compare(c, euler_e(), K(100000)), Cmp::Within);
	CReal one = CReal::limit([](std::uint64_t n) { return CReal(R(1) - pow2(-static_cast<long>(n))); },
	                         [](const BigInt &k) { return static_cast<std::uint64_t>(ceil_log2(k) + 1); });
	for (std::uint64_t k : {1, 64, 1000000})
		EXPECT_TRUE(within(one, R(1), k));
}

TEST(Limit, PartialSumsOfExpOne)
{
	CReal e = CReal::limit(
	    [](std::uint64_t N) {
		    BigRational s, t(1);
		    for (std::uint64_t n = 0; n <= N; ++n) {
			    s += t;
			    t /= BigRational(static_cast<long>(n + 1));
		    }
		    return CReal(s);
	    },
	    [](const BigInt &k) {
		    std::uint64_t N = 1;
		    while (BigRational(2) / BigRational(factorial(N + 1)) > BigRational(BigInt(1), k))
			    ++N;
		    return N;
	    });
	// the decimal prefixes 2, 2.7, 2.71, 2.718, 2.7182
	const char *prefixes[] = {"2", "2.7", "2.71", "2.718", "2.7182"};
	for (unsigned d = 0; d <= 4; ++d)
		EXPECT_EQ(render_digits(e, d), prefixes[d]);
}

TEST(Invariants, Consistency)
{
	std::mt19937_64 rng(5);
	std::uniform_int_distribution<std::uint64_t> pick(1, 1000);
	for (const auto &x : sample_reals())
		for (int t = 0; t < 40; ++t) {
			std::uint64_t k = pick(rng), l = pick(rng);
			EXPECT_LE((x.approx(K(k)) - x.approx(K(l))).abs(), inv(k) + inv(l));
		}
}

TEST(Invariants, DeterministicCache)
{
	for (const auto &x : sample_reals())
		for (std::uint64_t k : {7, 700, 70000})
			EXPECT_EQ(x.approx(K(k)), x.approx(K(k)));
}

TEST(Invariants, RingLawsAtTolerance)
{
	auto xs = sample_reals();
	for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
		const CReal &x = xs[i], &y = xs[i + 1], &z = xs[i + 2];
		for (std::uint64_t k : {10, 1000}) {
			BigRational tol = R(2) * inv(k);
			EXPECT_LE((((x + y) + z).approx(K(k)) - (x + (y + z)).approx(K(k))).abs(), tol);
			EXPECT_LE(((x * y).approx(K(k)) - (y * x).approx(K(k))).abs(), tol);
			EXPECT_LE(((x * (y + z)).approx(K(k)) - (x * y + x * z).approx(K(k))).abs(), tol);
		}
	}
}

TEST(Invariants, Archimedean)
{
	for (const auto &x : {CReal(R(1, 1000)), exp(R(-5)), sqrt(R(2)) - CReal(R(7, 5))}) {
		auto w = find_witness(x);
		ASSERT_TRUE(w.has_value());
		bool found = false;
		for (std::uint64_t k = 1; k <= 1u << 16 && !found; k *= 2)
			found = compare(x, CReal(inv(k)), K(3 * k)) == Cmp::Greater;
		EXPECT_TRUE(found);
	}
}

TEST(Concurrency, SharedCacheAgrees)
{
	CReal x = exp(R(3, 7)) * sqrt(R(11));
	std::vector<BigRational> got(8);
	std::vector<std::thread> ts;
	for (int t = 0; t < 8; ++t)
		ts.emplace_back([&, t] { got[t] = x.approx(K(123456789)); });
	for (auto &t : ts)
		t.join();
	for (const auto &g : got)
		EXPECT_EQ(g, got[0]);
}

TEST(Render, DigitsOfE)
{
	EXPECT_EQ(render(euler_e(), 4), "2.7182 ±1e-4");
	EXPECT_EQ(render(euler_e(), 1), "2.7 ±1e-1");
	std::string d50 = render_digits(euler_e(), 50), d51 = render_digits(euler_e(), 51);
	EXPECT_EQ(d51.substr(0, d50.size()), d50);
	EXPECT_EQ(d50.substr(0, 42), std::string(kE).substr(0, 42));
}
