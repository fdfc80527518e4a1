/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <compare>
#include <string>

#include "hmc/creal.hpp"

namespace hmc {

/* p + q sqrt(2) with rational p, q; ordering is decided exactly */
class QSqrt2 {
	BigRational p_, q_;

public:
	QSqrt2() = default;
	QSqrt2(const BigRational &p) : p_(p) {}
	QSqrt2(int p) : p_(p) {}
	QSqrt2(const BigRational &p, const BigRational &q) : p_(p), q_(q) {}

	static QSqrt2 sqrt2() { return QSqrt2(BigRational(0), BigRational(1)); }
	/* 1/sqrt(2) = sqrt(2)/2 */
	static QSqrt2 inv_sqrt2() { return QSqrt2(BigRational(0), BigRational(BigInt(1), BigInt(2))); }

	const BigRational &p() const { return p_; }
	const BigRational &q() const { return q_; }
	bool is_rational() const { return q_.is_zero(); }
	int sign() const;

	QSqrt2 operator-() const { return QSqrt2(-p_, -q_); }
	friend QSqrt2 operator+(const QSqrt2 &a, const QSqrt2 &b) { return QSqrt2(a.p_ + b.p_, a.q_ + b.q_); }
	friend QSqrt2 operator-(const QSqrt2 &a, const QSqrt2 &b) { return QSqrt2(a.p_ - b.p_, a.q_ - b.q_); }
	friend QSqrt2 operator*(const QSqrt2 &a, const QSqrt2 &b)
	{
		return QSqrt2(a.p_ * b.p_ + 2 * a.q_ * b.q_, a.p_ * b.q_ + a.q_ * b.p_);
	}
	friend QSqrt2 operator/(const QSqrt2 &a, const BigRational &r) { return QSqrt2(a.p_ / r, a.q_ / r); }
	QSqrt2 abs() const { return sign() < 0 ? -*this : *this; }

	friend bool operator==(const QSqrt2 &a, const QSqrt2 &b) { return a.p_ == b.p_ && a.q_ == b.q_; }
	friend std::strong_ordering operator<=>(const QSqrt2 &a, const QSqrt2 &b);

	/* "p + q*sqrt2" */
	std::string str() const;
	double to_double() const;
	CReal to_creal() const;
};

QSqrt2 min(const QSqrt2 &a, const QSqrt2 &b);
QSqrt2 max(const QSqrt2 &a, const QSqrt2 &b);

/* largest 2^-t (t integer) with 2^-t <= x; x > 0 */
BigRational pow2_floor(const QSqrt2 &x);

} // namespace hmc
