/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <vector>

#include "hmc/creal.hpp"

namespace hmc {

/* P(a) e^(c a) */
struct PolyExpTerm {
	BigRational rate;
	std::vector<CReal> coeffs; // lowest degree first
};

/*
 * Closed form sum_t P_t(a) e^(c_t a).  Used as an optional shape attached
 * to functions so that derivatives, bounds and uniform Riemann sums can be
 * computed analytically.
 */
class PolyExp {
	std::vector<PolyExpTerm> terms_; // sorted by rate, rates distinct

	void add_term(const BigRational &rate, const std::vector<CReal> &coeffs);

public:
	PolyExp() = default;
	static PolyExp polynomial(std::vector<CReal> coeffs);
	static PolyExp exponential(const BigRational &rate);

	const std::vector<PolyExpTerm> &terms() const { return terms_; }
	bool exact_coefficients() const;
	unsigned degree() const;

	friend PolyExp operator+(const PolyExp &a, const PolyExp &b);
	friend PolyExp operator*(const PolyExp &a, const PolyExp &b);
	friend PolyExp operator*(const CReal &s, const PolyExp &a);

	PolyExp derivative() const;
	/* a -> f(a + x) */
	PolyExp shifted(const BigRational &x) const;

	CReal eval(const BigRational &a) const;
	/* within 2^-bits of the value at a */
	BigRational approx(const BigRational &a, long bits) const;
	/* rational upper bound of sup |f| on [lo, hi] from a piecewise estimate */
	BigRational abs_bound(const BigRational &lo, const BigRational &hi, unsigned pieces = 64) const;
};

} // namespace hmc
