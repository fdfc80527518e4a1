/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/polyexp.hpp"

#include <algorithm>

namespace hmc {

namespace {

std::vector<CReal> poly_add(const std::vector<CReal> &a, const std::vector<CReal> &b)
{
	std::vector<CReal> r(std::max(a.size(), b.size()));
	for (std::size_t i = 0; i < r.size(); ++i) {
		if (i < a.size())
			r[i] += a[i];
		if (i < b.size())
			r[i] += b[i];
	}
	return r;
}

std::vector<CReal> poly_mul(const std::vector<CReal> &a, const std::vector<CReal> &b)
{
	if (a.empty() || b.empty())
		return {};
	std::vector<CReal> r(a.size() + b.size() - 1);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			r[i + j] += a[i] * b[j];
	return r;
}

BigRational horner(const std::vector<CReal> &p, const BigRational &a)
{
	BigRational v;
	for (auto it = p.rbegin(); it != p.rend(); ++it)
		v = v * a + *it->exact();
	return v;
}

} // namespace

void PolyExp::add_term(const BigRational &rate, const std::vector<CReal> &coeffs)
{
	auto it = std::lower_bound(terms_.begin(), terms_.end(), rate,
	                           [](const PolyExpTerm &t, const BigRational &r) { return t.rate < r; });
	if (it != terms_.end() && it->rate == rate)
		it->coeffs = poly_add(it->coeffs, coeffs);
	else
		terms_.insert(it, PolyExpTerm{rate, coeffs});
}

PolyExp PolyExp::polynomial(std::vector<CReal> coeffs)
{
	PolyExp p;
	p.terms_.push_back(PolyExpTerm{BigRational(0), std::move(coeffs)});
	return p;
}

PolyExp PolyExp::exponential(const BigRational &rate)
{
	PolyExp p;
	p.terms_.push_back(PolyExpTerm{rate, {CReal(BigRational(1))}});
	return p;
}

bool PolyExp::exact_coefficients() const
{
	for (auto &t : terms_)
		for (auto &c : t.coeffs)
			if (!c.exact())
				return false;
	return true;
}

unsigned PolyExp::degree() const
{
	std::size_t d = 0;
	for (auto &t : terms_)
		d = std::max(d, t.coeffs.size());
	return d == 0 ? 0 : static_cast<unsigned>(d - 1);
}

PolyExp operator+(const PolyExp &a, const PolyExp &b)
{
	PolyExp r = a;
	for (auto &t : b.terms_)
		r.add_term(t.rate, t.coeffs);
	return r;
}

PolyExp operator*(const PolyExp &a, const PolyExp &b)
{
	PolyExp r;
	for (auto &s : a.terms_)
		for (auto &t : b.terms_)
			r.add_term(s.rate + t.rate, poly_mul(s.coeffs, t.coeffs));
	return r;
}

PolyExp operator*(const CReal &s, const PolyExp &a)
{
	PolyExp r = a;
	for (auto &t : r.terms_)
		for (auto &c : t.coeffs)
			c = s * c;
	return r;
}

PolyExp PolyExp::derivative() const
{
	PolyExp r;
	for (auto &t : terms_) {
		std::vector<CReal> d(t.coeffs.size());
		for (std::size_t j = 0; j < t.coeffs.size(); ++j) {
			if (!t.rate.is_zero())
				d[j] += t.rate * t.coeffs[j];
			if (j + 1 < t.coeffs.size())
				d[j] += BigRational(static_cast<long>(j + 1)) * t.coeffs[j + 1];
		}
		r.add_term(t.rate, d);
	}
	return r;
}

PolyExp PolyExp::shifted(const BigRational &x) const
{
	PolyExp r;
	for (auto &t : terms_) {
		std::size_t n = t.coeffs.size();
		std::vector<CReal> q(n);
		for (std::size_t j = 0; j < n; ++j) {
			std::vector<std::pair<BigRational, CReal>> parts;
			for (std::size_t l = j; l < n; ++l)
				parts.emplace_back(BigRational(binomial(l, j)) * pow(x, l - j), t.coeffs[l]);
			q[j] = lincomb(parts);
		}
		if (!t.rate.is_zero()) {
			CReal f = exp(t.rate * x);
			for (auto &c : q)
				c = f * c;
		}
		r.add_term(t.rate, q);
	}
	return r;
}

CReal PolyExp::eval(const BigRational &a) const
{
	CReal total;
	for (auto &t : terms_) {
		std::vector<std::pair<BigRational, CReal>> parts;
		BigRational ap(1);
		for (auto &c : t.coeffs) {
			parts.emplace_back(ap, c);
			ap *= a;
		}
		CReal v = lincomb(parts);
		total += t.rate.is_zero() ? v : v * exp(t.rate * a);
	}
	return total;
}

BigRational PolyExp::approx(const BigRational &a, long bits) const
{
	if (!exact_coefficients())
		return eval(a).approx_bits(bits);
	long cb = ceil_log2(BigInt(static_cast<unsigned long>(terms_.size() + 1)));
	BigRational s;
	for (auto &t : terms_) {
		BigRational v = horner(t.coeffs, a);
		if (t.rate.is_zero() || v.is_zero()) {
			s += v;
			continue;
		}
		long g = bits + 2 + cb + ceil_log2(v.abs() + BigRational(1));
		s += v * exp(t.rate * a).approx_bits(g);
	}
	return round_to_bits(s, bits + 2);
}

BigRational PolyExp::abs_bound(const BigRational &lo, const BigRational &hi, unsigned pieces) const
{
	if (pieces == 0 || hi <= lo)
		pieces = 1;
	std::vector<std::vector<BigRational>> ub;
	for (auto &t : terms_) {
		std::vector<BigRational> u;
		for (auto &c : t.coeffs)
			u.push_back(c.upper_abs(8));
		ub.push_back(std::move(u));
	}
	BigRational best;
	BigRational width = hi - lo;
	for (unsigned i = 0; i < pieces; ++i) {
		BigRational x0 = lo + width * BigRational(static_cast<long>(i)) / BigRational(static_cast<long>(pieces));
		BigRational x1 = lo + width * BigRational(static_cast<long>(i + 1)) / BigRational(static_cast<long>(pieces));
		BigRational M = max(x0.abs(), x1.abs());
		BigRational piece;
		for (std::size_t ti = 0; ti < terms_.size(); ++ti) {
			BigRational pb, mp(1);
			for (auto &u : ub[ti]) {
				pb += u * mp;
				mp *= M;
			}
			const BigRational &c = terms_[ti].rate;
			if (!c.is_zero())
				pb *= exp(max(c * x0, c * x1)).upper_abs(8);
			piece += pb;
		}
		best = max(best, piece);
	}
	return best;
}

} // namespace hmc
