/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/series.hpp"
#include "hmc/transcendence.hpp"
#include "support.hpp"

using namespace hmc;
using namespace hmc::test;

namespace {

IntPoly ip(std::initializer_list<long> cs)
{
	IntPoly p;
	for (long c : cs)
		p.emplace_back(c);
	return p;
}

CandidateRelation rel(std::initializer_list<long> cs) { return CandidateRelation(ip(cs)); }

/* schoolbook product, independent of poly_mul */
IntPoly naive_mul(const IntPoly &a, const IntPoly &b)
{
	IntPoly c(a.size() + b.size() - 1, BigInt(0));
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			c[i + j] += a[i] * b[j];
	return c;
}

IntPoly naive_pm(unsigned n, unsigned m)
{
	IntPoly p = ip({1});
	for (unsigned t = 0; t < m; ++t)
		p = naive_mul(p, ip({0, 1}));
	for (unsigned t = 0; t < m + 1; ++t)
		for (unsigned r = 1; r <= n; ++r)
			p = naive_mul(p, ip({-static_cast<long>(r), 1}));
	return p;
}

/* B(m) by direct substitution: c_ij from sum_l p_l C(l, j) i^(l-j) */
BigInt naive_B(const std::vector<long> &a, unsigned m)
{
	unsigned n = static_cast<unsigned>(a.size() - 1);
	IntPoly p = naive_pm(n, m);
	BigInt B(0);
	for (unsigned i = 0; i <= n; ++i) {
		BigInt inner(0);
		for (std::size_t j = 0; j < p.size(); ++j) {
			BigInt c(0);
			for (std::size_t l = j; l < p.size(); ++l)
				c += p[l] * binomial(static_cast<unsigned>(l), static_cast<unsigned>(j)) * ipow(BigInt(i), l - j);
			inner += c * factorial(static_cast<unsigned>(j));
		}
		B += BigInt(a[i]) * inner;
	}
	return B;
}

const std::vector<std::vector<long>> kGrid = {{1, 1}, {-2, 3}, {5, -1}, {1, 0, 1}, {-2, 1, -1}, {5, 2, 1},
                                             {1, 0, 0, 1}, {-2, 1, 1, -1}, {5, -3, 0, 2}};

} // namespace

TEST(BuildPm, Examples)
{
	EXPECT_EQ(build_pm(1, 1), ip({0, 1, -2, 1}));
	IntPoly p = build_pm(2, 2);
	EXPECT_EQ(p.size() - 1, 8u);
	for (unsigned n = 1; n <= 3; ++n)
		for (unsigned m = 1; m <= 6; ++m) {
			IntPoly q = build_pm(n, m);
			EXPECT_EQ(q.size() - 1, m + n * (m + 1));
			EXPECT_EQ(q.back(), 1);
			EXPECT_EQ(q[0], 0);
			EXPECT_EQ(q, naive_pm(n, m));
		}
}

TEST(PolyHelpers, TaylorShiftAndDerivative)
{
	// (a + 1)^2 + 2(a + 1) + 1
	EXPECT_EQ(taylor_shift(ip({1, 2, 1}), BigInt(1)), ip({4, 4, 1}));
	EXPECT_EQ(poly_derivative(ip({5, 0, 3, 1})), ip({0, 6, 3}));
	EXPECT_EQ(poly_eval(ip({-2, 0, 1}), BigInt(3)), 7);
	EXPECT_EQ(poly_mul(ip({1, 1}), ip({1, -1})), ip({1, 0, -1}));
}

TEST(Relation, Normalization)
{
	EXPECT_THROW(rel({0, 1}), PreconditionError);
	EXPECT_THROW(rel({1, 0}), PreconditionError);
	EXPECT_THROW(rel({1}), PreconditionError);
	EXPECT_EQ(rel({-3, 1}).n(), 1u);
}

TEST(ComputeB, CongruenceAndDivisibilityGrid)
{
	for (unsigned n = 1; n <= 3; ++n)
		for (long a0 : {1, -2, 5})
			for (unsigned m = 1; m <= 6; ++m) {
				std::vector<BigInt> a(n + 1, BigInt(1));
				a[0] = BigInt(a0);
				CandidateRelation r(a);
				BigInt B = compute_B(r, m);
				BigInt mf = factorial(m), mf1 = factorial(m + 1);
				EXPECT_EQ(B % mf, 0) << n << " " << a0 << " " << m;
				BigInt target = B_congruence_target(r, m);
				EXPECT_EQ(((B - target) % mf1 + mf1) % mf1, 0) << n << " " << a0 << " " << m;
				if (gcd(BigInt(m + 1), BigInt(a0) * factorial(n)) == 1)
					EXPECT_NE(B, 0);
			}
}

TEST(ComputeB, TargetFormula)
{
	// a_0 (-1)^(n(m+1)) (n!)^(m+1) m! for n = 2, m = 3, a_0 = -2
	EXPECT_EQ(B_congruence_target(rel({-2, 1, 1}), 3), BigInt(-2) * ipow(BigInt(2), 4) * factorial(3));
}

TEST(ComputeB, ThreeRoutesAgree)
{
	for (const auto &a : kGrid)
		for (unsigned m = 1; m <= 6; ++m) {
			std::vector<BigInt> b(a.begin(), a.end());
			CandidateRelation r(b);
			BigInt B = compute_B(r, m);
			EXPECT_EQ(B, compute_B_derivatives(r, m));
			EXPECT_EQ(B, naive_B(a, m));
		}
}

TEST(EncloseA, WidthAndRoutes)
{
	CandidateRelation r = rel({1, 1});
	RatInterval a = enclose_A(r, 3, 100), b = enclose_A(r, 3, 200);
	EXPECT_LE(a.hi() - a.lo(), R(2, 100));
	EXPECT_LE(b.hi() - b.lo(), a.hi() - a.lo());
	RatInterval q = enclose_A(r, 3, 100, ARoute::Riemann);
	EXPECT_LE(q.hi() - q.lo(), R(2, 100));
	EXPECT_LE(q.lo(), a.hi() + R(1, 1000000));
	EXPECT_LE(a.lo(), q.hi() + R(1, 1000000));
	// a false relation has A(m) away from -B(m)
	BigRational mb = -BigRational(compute_B(r, 2));
	RatInterval a2 = enclose_A(r, 2, 100);
	EXPECT_FALSE(a2.contains(mb));
}

TEST(EncloseA, MatchesDirectEvaluation)
{
	// rel (-3, 1), m = 1: A = e * int_0^1 (a^3 - 2a^2 + a) e^-a, with int_0^1 a^n e^-a = n! (1 - sum_{j<=n} 1/j! / e)
	// giving (6 - 16/e) - 2 (2 - 5/e) + (1 - 2/e) = 3 - 8/e, so A = 3e - 8
	CandidateRelation r = rel({-3, 1});
	RatInterval a = enclose_A(r, 1, 10000);
	BigRational want = R(3) * oracle(kE) - R(8);
	EXPECT_GE(want, a.lo() - R(3) * oracle_slack());
	EXPECT_LE(want, a.hi() + R(3) * oracle_slack());
}

TEST(EncloseA, BoundGrid)
{
	for (const auto &a : kGrid) {
		std::vector<BigInt> b(a.begin(), a.end());
		CandidateRelation r(b);
		auto [y, z] = A_bound_constants(r);
		BigInt n(static_cast<long>(r.n()));
		EXPECT_EQ(z, BigRational(ipow(n, r.n() + 1)));
		for (unsigned m = 1; m <= 6; ++m) {
			RatInterval e = enclose_A(r, m, 100);
			EXPECT_LE(e.mag(), y * pow(z, m) + R(2, 100)) << m;
		}
	}
}

TEST(Hilbert, Examples)
{
	HilbertReport e3 = hilbert_report(rel({-3, 1}), 8);
	ASSERT_TRUE(e3.refuted());
	EXPECT_LE(*e3.witness, 8u);
	// independent check: |e - 3| > 1/4
	EXPECT_EQ(compare(sum(exp_series(R(1))), CReal(R(11, 4)), K(1000)), Cmp::Less);
	HilbertReport p = hilbert_report(rel({1, 1}), 8);
	ASSERT_TRUE(p.refuted());
	EXPECT_EQ(compare(CReal(R(1)) + sum(exp_series(R(1))), CReal(R(0)), K(10)), Cmp::Greater);
	for (const auto &r : p.records) {
		EXPECT_TRUE(r.congruence_ok);
		EXPECT_TRUE(r.bound_ok);
		EXPECT_EQ(r.B_mod_mfact, 0);
	}
}

TEST(Hilbert, CoprimalityFilter)
{
	// a_0 = 2, n = 1: gcd(m + 1, 2) = 1 only for even m
	HilbertReport r = hilbert_report(rel({2, 1}), 8);
	for (const auto &rec : r.records) {
		EXPECT_EQ(rec.coprime, rec.m % 2 == 0) << rec.m;
		if (!rec.coprime)
			EXPECT_FALSE(rec.verdict);
	}
	ASSERT_TRUE(r.refuted());
	EXPECT_EQ(*r.witness % 2, 0u);
}

TEST(Hilbert, Inconclusive)
{
	HilbertReport r = hilbert_report(rel({5, 0, 0, 1}), 2);
	EXPECT_FALSE(r.refuted());
	EXPECT_EQ(r.records.size(), 2u);
}

TEST(Properties, VerdictSoundness)
{
	for (const auto &a : kGrid) {
		std::vector<BigInt> b(a.begin(), a.end());
		CandidateRelation rl(b);
		HilbertReport r = hilbert_report(rl, 12);
		if (!r.refuted())
			continue;
		const HilbertRecord &rec = r.records.back();
		EXPECT_EQ(rec.m, *r.witness);
		BigRational supA = std::max(rec.A_lo.abs(), rec.A_hi.abs());
		BigRational mf(factorial(rec.m));
		EXPECT_GE(BigRational(rec.B).abs() - supA, mf * R(9, 10));
		EXPECT_EQ(rec.B, compute_B(rl, rec.m));
	}
}

TEST(Liouville, ConstantForSqrt2)
{
	IntPoly p = ip({-2, 0, 1});
	CReal root = sqrt(R(2));
	BigRational y = liouville_constant(p, root);
	EXPECT_GE(y, R(1, 5));
	EXPECT_LE(y, R(1));
	// w <= 2(sqrt2 + 1) plus the grid slack
	EXPECT_LE(R(1) / y, R(2) * (oracle(kSqrt2) + R(1)) + R(1, 10));
	BigRational y2 = liouville_constant(ip({-4, 0, 2}), root);
	EXPECT_LE((R(1) / y2 - R(2) / y).abs(), R(1, 10));
	EXPECT_THROW(liouville_constant(p, CReal(R(3, 2))), PreconditionError);
}

TEST(Liouville, CheckSqrt2)
{
	IntPoly p = ip({-2, 0, 1});
	CReal root = sqrt(R(2));
	BigRational y = liouville_constant(p, root);
	std::vector<BigRational> samples = {R(3, 2), R(7, 5), R(17, 12), R(100), root.approx(K(1000000))};
	LiouvilleWitness w = liouville_check(p, root, y, samples);
	EXPECT_TRUE(w.all_pass());
	EXPECT_EQ(w.degree, 2u);
	for (const auto &s : w.samples) {
		EXPECT_EQ(s.status, SampleStatus::Pass) << s.pq.str();
		// exact oracle: |sqrt2 - p/q| = |2 - p^2/q^2| / (sqrt2 + p/q) > rhs
		BigRational gap = (R(2) - s.pq * s.pq).abs() / (R(3) + s.pq);
		EXPECT_GT(gap, R(0));
		EXPECT_GE(gap * R(10), s.rhs / R(10)) << s.pq.str();
	}
}

TEST(Liouville, ConvergentsOfSqrt2)
{
	std::vector<BigRational> c = convergents(sqrt(R(2)), 6);
	const long num[] = {1, 3, 7, 17, 41, 99}, den[] = {1, 2, 5, 12, 29, 70};
	ASSERT_EQ(c.size(), 6u);
	for (int i = 0; i < 6; ++i) {
		EXPECT_EQ(c[i], R(num[i], den[i]));
		// Pell: p^2 - 2 q^2 = +-1
		BigInt pell = c[i].num() * c[i].num() - 2 * c[i].den() * c[i].den();
		EXPECT_TRUE(pell == 1 || pell == -1);
	}
}

TEST(Liouville, CubicRoot)
{
	IntPoly p = ip({-2, 0, 0, 1});
	auto root = largest_real_root(p);
	ASSERT_TRUE(root.has_value());
	BigRational r = root->approx(K(1000000));
	EXPECT_LE((r * r * r - R(2)).abs(), R(1, 10000));
	BigRational y = liouville_constant(p, *root);
	LiouvilleWitness w = liouville_check(p, *root, y, convergents(*root, 8));
	EXPECT_TRUE(w.all_pass());
	EXPECT_FALSE(largest_real_root(ip({1, 0, 1})).has_value());
}

TEST(Lambda, Approximations)
{
	LambdaApprox a1 = lambda_approx(1), a2 = lambda_approx(2), a3 = lambda_approx(3);
	EXPECT_EQ(BigRational(a1.k, a1.l), R(1, 2));
	EXPECT_EQ(BigRational(a2.k, a2.l), R(3, 4));
	EXPECT_EQ(a3.l, 64);
	EXPECT_EQ(a3.k, 49);
	CReal lam = lambda();
	for (unsigned m = 1; m <= 4; ++m) {
		LambdaApprox a = lambda_approx(m);
		BigRational err = (lam.approx(a.l * a.l * a.l * a.l * 4) - BigRational(a.k, a.l)).abs();
		BigRational lm = BigRational(BigInt(1), ipow(a.l, m));
		EXPECT_LE(err, lm + BigRational(BigInt(1), a.l * a.l * a.l * a.l * 4)) << m;
		EXPECT_LE(lambda_tail_bound(m), lm);
	}
	EXPECT_THROW(lambda_approx(kLambdaMaxM + 1), ResourceError);
}

TEST(Lambda, Witness)
{
	LambdaWitness w = lambda_witness(2, R(1, 10));
	EXPECT_EQ(w.m, 3u);
	EXPECT_TRUE(w.verified);
	EXPECT_LT(w.error_bound, w.liouville_rhs);
	EXPECT_EQ(lambda_witness(2, R(1)).m, 3u);
	for (unsigned d : {2, 3, 4}) {
		LambdaWitness v = lambda_witness(d, R(1, 1000));
		EXPECT_GT(v.m, d);
		EXPECT_EQ(v.error_bound, BigRational(BigInt(1), ipow(v.approx.l, v.m)));
		EXPECT_LT(BigRational(BigInt(1), ipow(v.approx.l, v.m - d)), R(1, 1000));
	}
	EXPECT_THROW(lambda_witness(40, R(1)), ResourceError);
}

TEST(Lambda, IrrationalityTail)
{
	for (unsigned l = 1; l <= 3; ++l) {
		auto [lo, hi] = lambda_irrationality_tail(l);
		EXPECT_GT(lo, R(0)) << l;
		EXPECT_LT(hi, R(1)) << l;
		EXPECT_LE(lo, hi);
	}
}
