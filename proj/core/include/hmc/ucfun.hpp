/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hmc/creal.hpp"
#include "hmc/polyexp.hpp"

namespace hmc {

/* Closed interval [lo, hi] with real endpoints, or the whole rational line. */
class Domain {
	bool bounded_ = false;
	CReal lo_, hi_;
	BigRational hull_lo_, hull_hi_;

public:
	static Domain line();
	static Domain interval(const BigRational &lo, const BigRational &hi);
	/* requires lo < hi to be certifiable */
	static Domain interval(const CReal &lo, const CReal &hi);

	bool bounded() const { return bounded_; }
	const CReal &lo() const { return lo_; }
	const CReal &hi() const { return hi_; }
	/* rational hull [hull_lo, hull_hi] containing the domain */
	const BigRational &hull_lo() const { return hull_lo_; }
	const BigRational &hull_hi() const { return hull_hi_; }
	/* M with |a| <= M on the domain */
	BigRational abs_bound() const;

	bool provably_outside(const BigRational &a) const;
	/* rational point of the domain within 1/l of the lower / upper end */
	BigRational inner_lo(const BigInt &l) const;
	BigRational inner_hi(const BigInt &l) const;
	/* rational point of the domain within 1/l of the projection of a */
	BigRational clamp(const BigRational &a, const BigInt &l) const;
	/* finite set of domain points meeting every point of the domain within 1/l */
	std::vector<BigRational> net(const BigInt &l) const;

	bool same_as(const Domain &o) const;
};

/*
 * Function on the rational points of a domain with a uniform continuity
 * modulus: |a - b| <= 1/modulus(k) implies |f(a) - f(b)| <= 1/k.
 */
class UCFun {
public:
	using Eval = std::function<CReal(const BigRational &)>;
	using Approx = std::function<BigRational(const BigRational &, long)>;
	using Modulus = std::function<BigInt(const BigInt &)>;

	UCFun(Domain domain, Eval eval, Modulus modulus, Approx approx = nullptr);
	static UCFun from_shape(Domain domain, PolyExp shape, Modulus modulus);

	CReal operator()(const BigRational &a) const;
	/* rational within 2^-bits of f(a) */
	BigRational approx_at(const BigRational &a, long bits) const;
	BigInt modulus(const BigInt &k) const;
	const Domain &domain() const;
	const PolyExp *shape() const;

	/* cheap rigorous bound of sup |f| */
	BigRational sup_bound() const;

	UCFun with_modulus(Modulus m) const;

private:
	struct Impl;
	std::shared_ptr<const Impl> impl_;
};

/* f with a uniform derivative: |(f(b)-f(a))/(b-a) - f'(a)| <= 1/k for 0 < |a-b| <= 1/ud(k) */
struct UDiffFun {
	UCFun f;
	UCFun deriv;
	UCFun::Modulus ud_modulus;

	CReal operator()(const BigRational &a) const { return f(a); }
	const Domain &domain() const { return f.domain(); }
};

UDiffFun poly(const std::vector<CReal> &coeffs, const Domain &domain);
UDiffFun exp_scaled(const BigRational &c, const Domain &domain);
/* y a^n e^(c a) */
UDiffFun polyexp(const CReal &y, unsigned n, const BigRational &c, const Domain &domain);
UDiffFun lin_comb(const CReal &x, const UDiffFun &f, const CReal &y, const UDiffFun &g);
UDiffFun product(const UDiffFun &f, const UDiffFun &g);

UCFun lin_comb(const CReal &x, const UCFun &f, const CReal &y, const UCFun &g);
UCFun product(const UCFun &f, const UCFun &g);
UCFun abs_fun(const UCFun &f);
/* a -> f(a + x), domain shifted by -x */
UCFun shift(const UCFun &f, const BigRational &x);
UCFun shift(const UCFun &f, const CReal &x);
/* a -> f(g(a)); no derivative is carried */
UCFun compose(const UCFun &f, const UCFun &g);
/* f restricted to a subinterval */
UCFun restrict(const UCFun &f, const Domain &sub);

BigRational bound(const UCFun &f, const BigInt &k);
CReal eval_at_real(const UCFun &f, const CReal &x);
BigRational approx_zero(const UCFun &f, const BigInt &k);

enum class Extremum { Min, Max };
BigRational approx_extremum(const UCFun &f, const BigInt &k, Extremum which);

struct EscapePair {
	BigRational lower; // f(lower) < f(x)
	BigRational upper; // f(upper) > f(x)
	BigInt l;          // the step scale used
	BigInt precision;  // comparison precision that certified the pair
};

EscapePair escape_extreme(const UDiffFun &f, const CReal &x, const SeparationWitness &s,
                          unsigned max_doublings = 24);

} // namespace hmc
