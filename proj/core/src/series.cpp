/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/series.hpp"

#include <mutex>
#include <unordered_map>

namespace hmc {

struct ConvSeries::Memo {
	std::mutex mu;
	std::unordered_map<std::uint64_t, CReal> reals;
	std::unordered_map<std::uint64_t, BigRational> rats;
};

ConvSeries::ConvSeries(Coeff coeff, Tail tail)
    : coeff_(std::move(coeff)), tail_(std::move(tail)), memo_(std::make_shared<Memo>())
{
}

ConvSeries ConvSeries::rational(RationalCoeff coeff, Tail tail)
{
	ConvSeries s(nullptr, std::move(tail));
	s.rational_ = std::move(coeff);
	return s;
}

BigRational ConvSeries::rational_coeff(std::uint64_t n) const
{
	{
		std::lock_guard lock(memo_->mu);
		auto it = memo_->rats.find(n);
		if (it != memo_->rats.end())
			return it->second;
	}
	BigRational q = rational_(n);
	std::lock_guard lock(memo_->mu);
	return memo_->rats.emplace(n, std::move(q)).first->second;
}

CReal ConvSeries::coeff(std::uint64_t n) const
{
	if (rational_)
		return CReal(rational_coeff(n));
	{
		std::lock_guard lock(memo_->mu);
		auto it = memo_->reals.find(n);
		if (it != memo_->reals.end())
			return it->second;
	}
	CReal x = coeff_(n);
	std::lock_guard lock(memo_->mu);
	return memo_->reals.emplace(n, std::move(x)).first->second;
}

ConvSeries ConvSeries::abs() const
{
	ConvSeries self = *this;
	if (rational_)
		return rational([self](std::uint64_t n) { return self.rational_coeff(n).abs(); }, tail_);
	return ConvSeries([self](std::uint64_t n) { return self.coeff(n).abs(); }, tail_);
}

BigRational ConvSeries::abs_sum_bound() const
{
	std::uint64_t n1 = tail(BigInt(1));
	BigRational s(1);
	for (std::uint64_t i = 0; i <= n1; ++i)
		s += rational_ ? rational_coeff(i).abs() : coeff(i).upper_abs(8);
	return s;
}

static BigInt pow2_index(long n) { return BigInt(1) << static_cast<mp_bitcnt_t>(std::max(n, 0L)); }

CReal sum(const ConvSeries &s)
{
	return CReal::from_bits([s](long n) {
		std::uint64_t N = s.tail(pow2_index(n + 1));
		long g = n + 3 + ceil_log2(BigInt(static_cast<unsigned long>(N + 1)));
		BigRational acc;
		for (std::uint64_t i = 0; i <= N; ++i) {
			if (s.is_rational())
				acc += round_to_bits(s.rational_coeff(i), g + 1);
			else
				acc += s.coeff(i).approx_bits(g);
		}
		return round_to_bits(acc, n + 2);
	});
}

ConvSeries geometric(const BigRational &x, unsigned long m)
{
	BigRational ax = x.abs();
	if (ax >= BigRational(1))
		throw DomainError("geometric series needs |x| < 1");
	return ConvSeries::rational(
	    [x, m](std::uint64_t n) { return n < m ? BigRational(0) : pow(x, n); },
	    [ax, m](const BigInt &k) -> std::uint64_t {
		    std::uint64_t N = m == 0 ? 0 : m - 1;
		    if (ax.is_zero())
			    return N;
		    // |x|^(N+1) / (1 - |x|) <= 1/k
		    BigRational lim = (BigRational(1) - ax) / BigRational(k);
		    BigRational p = pow(ax, N + 1);
		    while (p > lim) {
			    p *= ax;
			    ++N;
		    }
		    return N;
	    });
}

ConvSeries exp_series(const BigRational &a)
{
	// |a|^n/n! <= C (1/2)^n for n >= m, C = (2|a|)^m / m!, m = ceil(2|a|)
	BigRational aa = a.abs();
	unsigned long m = (2 * aa).ceil().get_ui();
	BigRational C = pow(2 * aa, m) / BigRational(factorial(m));
	return ConvSeries::rational(
	    [a](std::uint64_t n) { return pow(a, n) / BigRational(factorial(n)); },
	    [C, m, aa](const BigInt &k) -> std::uint64_t {
		    if (aa.is_zero())
			    return 0;
		    // tail beyond N is at most C 2^-N
		    BigRational kc = BigRational(k) * C;
		    long N = kc <= BigRational(1) ? 0 : ceil_log2(kc);
		    return std::max<std::uint64_t>(m, static_cast<std::uint64_t>(N));
	    });
}

ConvSeries cauchy_product(const ConvSeries &s, const ConvSeries &t)
{
	BigRational xs = s.abs_sum_bound(), ys = t.abs_sum_bound();
	auto tail = [s, t, xs, ys](const BigInt &k) -> std::uint64_t {
		BigInt ks = (BigRational(2 * k) * ys).ceil(), kt = (BigRational(2 * k) * xs).ceil();
		return 2 * std::max(s.tail(ks), t.tail(kt));
	};
	if (s.is_rational() && t.is_rational())
		return ConvSeries::rational(
		    [s, t](std::uint64_t n) {
			    BigRational z;
			    for (std::uint64_t i = 0; i <= n; ++i)
				    z += s.rational_coeff(i) * t.rational_coeff(n - i);
			    return z;
		    },
		    tail);
	return ConvSeries(
	    [s, t](std::uint64_t n) {
		    CReal z;
		    for (std::uint64_t i = 0; i <= n; ++i)
			    z += s.coeff(i) * t.coeff(n - i);
		    return z;
	    },
	    tail);
}

std::uint64_t exp_tail_index(const CReal &y, const CReal &z, const BigInt &k)
{
	BigRational Y = y.upper_abs(8), Z = z.upper_abs(8);
	// y z^n/n! is non-increasing once n >= Z
	std::uint64_t N = to_u64(Z.ceil());
	BigRational term = Y * pow(Z, N) / BigRational(factorial(N));
	BigRational lim(BigInt(1), k);
	while (term > lim) {
		++N;
		term = term * Z / BigRational(static_cast<long>(N));
	}
	return N;
}

namespace {

// e^X >= 2^floor(1.4426 X) since log2(e) > 1.4426
bool dominance_holds(unsigned long m, const BigInt &k, const BigInt &X)
{
	BigInt e2 = (X * 14426) / 10000;
	BigInt lhs = ipow(X, m) * k;
	if (e2 > 1 << 24)
		return true;
	return lhs <= BigInt(1) << static_cast<mp_bitcnt_t>(e2.get_ui());
}

} // namespace

BigInt exp_dominance_bound(unsigned long m, const BigInt &k)
{
	// a priori bound from e^(x/m) >= x^2 / (2m^2): x >= 2m^2 k^(1/m)
	BigInt X0;
	if (m == 0) {
		X0 = k;
	} else {
		BigInt r;
		mpz_root(r.get_mpz_t(), k.get_mpz_t(), m);
		if (ipow(r, m) < k)
			r += 1;
		X0 = 2 * BigInt(m) * BigInt(m) * r;
	}
	BigInt lo = m, hi = m;
	while (!dominance_holds(m, k, hi)) {
		lo = hi + 1;
		hi = hi == 0 ? BigInt(1) : 2 * hi;
		if (hi >= X0)
			return X0 < BigInt(m) ? BigInt(m) : X0;
	}
	while (lo < hi) {
		BigInt mid = (lo + hi) / 2;
		if (dominance_holds(m, k, mid))
			hi = mid;
		else
			lo = mid + 1;
	}
	return hi;
}

} // namespace hmc
