/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/qsqrt2.hpp"

namespace hmc {

int QSqrt2::sign() const
{
	int sp = p_.sign(), sq = q_.sign();
	if (sq == 0)
		return sp;
	if (sp == 0 || sp == sq)
		return sq;
	// opposite signs: compare p^2 with 2 q^2
	BigRational d = p_ * p_ - 2 * q_ * q_;
	return sp > 0 ? d.sign() : -d.sign();
}

std::strong_ordering operator<=>(const QSqrt2 &a, const QSqrt2 &b)
{
	int s = (a - b).sign();
	return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string QSqrt2::str() const
{
	return p_.str() + " + " + q_.str() + "*sqrt2";
}

double QSqrt2::to_double() const
{
	return p_.to_double() + q_.to_double() * 1.4142135623730950488;
}

CReal QSqrt2::to_creal() const
{
	if (is_rational())
		return CReal(p_);
	return CReal(p_) + q_ * sqrt(BigRational(2));
}

QSqrt2 min(const QSqrt2 &a, const QSqrt2 &b) { return b < a ? b : a; }

QSqrt2 max(const QSqrt2 &a, const QSqrt2 &b) { return a < b ? b : a; }

BigRational pow2_floor(const QSqrt2 &x)
{
	if (x.sign() <= 0)
		throw DomainError("pow2_floor needs a positive argument");
	long t = 0;
	while (QSqrt2(pow2(t)) > x)
		--t;
	while (QSqrt2(pow2(t + 1)) <= x)
		++t;
	return pow2(t);
}

} // namespace hmc
