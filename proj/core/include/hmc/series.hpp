/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "hmc/creal.hpp"

namespace hmc {

/*
 * Absolutely convergent series sum_n x_n together with a tail certificate:
 * tail(k) = N guarantees sum_{n>N} |x_n| <= 1/k.
 */
class ConvSeries {
public:
	using Coeff = std::function<CReal(std::uint64_t)>;
	using RationalCoeff = std::function<BigRational(std::uint64_t)>;
	using Tail = std::function<std::uint64_t(const BigInt &)>;

	ConvSeries(Coeff coeff, Tail tail);
	static ConvSeries rational(RationalCoeff coeff, Tail tail);

	CReal coeff(std::uint64_t n) const;
	bool is_rational() const { return static_cast<bool>(rational_); }
	BigRational rational_coeff(std::uint64_t n) const;
	std::uint64_t tail(const BigInt &k) const { return tail_(k); }

	/* the series of absolute values, same certificate */
	ConvSeries abs() const;
	/* rational upper bound on sum |x_n| */
	BigRational abs_sum_bound() const;

private:
	struct Memo;
	Coeff coeff_;
	RationalCoeff rational_;
	Tail tail_;
	std::shared_ptr<Memo> memo_;
};

CReal sum(const ConvSeries &s);

/* sum_{n>=m} x^n = x^m / (1 - x) */
ConvSeries geometric(const BigRational &x, unsigned long m);
/* sum_n a^n / n! */
ConvSeries exp_series(const BigRational &a);
ConvSeries cauchy_product(const ConvSeries &s, const ConvSeries &t);

/* N with y z^n / n! <= 1/k for every n >= N */
std::uint64_t exp_tail_index(const CReal &y, const CReal &z, const BigInt &k);
/* X with x^m e^-x <= 1/k for every x >= X */
BigInt exp_dominance_bound(unsigned long m, const BigInt &k);

} // namespace hmc
