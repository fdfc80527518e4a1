/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hmc/quadrature.hpp"
#include "hmc/series.hpp"

namespace hmc {

/* |x_n| y^n <= C r^n for every n, with 0 < r < 1 */
struct Growth {
	BigRational C;
	BigRational r;
};

/*
 * Formal power series sum_n x_n a^n with a geometric growth certificate
 * per radius, which makes evaluation and the quasi-formal shift computable.
 */
class ConvFPS {
public:
	using Coeff = std::function<CReal(std::uint64_t)>;
	using RationalCoeff = std::function<BigRational(std::uint64_t)>;
	using GrowthFn = std::function<Growth(const BigRational &)>;

	ConvFPS(Coeff coeff, GrowthFn growth, std::optional<std::uint64_t> degree = std::nullopt);
	static ConvFPS rational(RationalCoeff coeff, GrowthFn growth,
	                        std::optional<std::uint64_t> degree = std::nullopt);

	static ConvFPS zero();
	static ConvFPS one();
	static ConvFPS polynomial(std::vector<CReal> coeffs);
	static ConvFPS polynomial(const std::vector<BigRational> &coeffs);
	/* sum a^n / n! */
	static ConvFPS exp();

	CReal coeff(std::uint64_t n) const;
	bool is_rational() const;
	BigRational rational_coeff(std::uint64_t n) const;
	/* y > 0 */
	Growth growth(const BigRational &y) const;
	/* coefficients vanish beyond this index when known */
	std::optional<std::uint64_t> degree() const;

	/* sum_n x_n a^n as a convergent series */
	ConvSeries at(const CReal &a) const;
	CReal eval(const CReal &a) const;

private:
	struct Impl;
	std::shared_ptr<Impl> impl_;
};

/* smallest N with C r^(N+1) / (1 - r) <= 1/k */
std::uint64_t geometric_tail_index(const BigRational &C, const BigRational &r, const BigInt &k);

ConvFPS lin_comb(const CReal &z, const ConvFPS &f, const CReal &w, const ConvFPS &g);
ConvFPS cauchy_product(const ConvFPS &f, const ConvFPS &g);
/* f(x a) */
ConvFPS scale_arg(const ConvFPS &f, const CReal &x);
ConvFPS formal_derivative(const ConvFPS &f);
ConvFPS formal_primitive(const ConvFPS &f);
/* f(a + x): coefficient n is sum_{m >= n} C(m, n) x_m x^(m-n) */
ConvFPS quasi_shift(const ConvFPS &f, const CReal &x);

/* first n < limit with x_n != 0; needs rational coefficients */
std::optional<std::uint64_t> order(const ConvFPS &f, std::uint64_t limit);

/* primitive evaluated at v minus at u */
CReal newton_integral(const ConvFPS &f, const CReal &u, const CReal &v);

struct NewtonImproper {
	CReal value;
	BigInt cutoff;
};

/* improper Newton integral of p(a) Exp(-a) over [0, inf) within 1/k */
CReal newton_improper_polyexp(const std::vector<CReal> &p, std::uint64_t k);
NewtonImproper newton_improper_polyexp_detail(const std::vector<CReal> &p, std::uint64_t k);
/* p(a) Exp(-a) as a series */
ConvFPS polyexp_fps(const std::vector<CReal> &p);

/* i^(k+1) e^i with e rounded up */
BigRational fake_lm_bound(unsigned i, unsigned k);

AlgebraReport verify_shift_algebra(const ConvFPS &f, const ConvFPS &g, const CReal &x, const CReal &y,
                                   std::uint64_t N, const BigRational &tol);

AlgebraReport verify_newton_algebra(const ConvFPS &f, const ConvFPS &g, const CReal &u, const CReal &v,
                                    const CReal &w, const CReal &x, const CReal &y, const CReal &shift,
                                    std::uint64_t k);

/* improper forms on p Exp(-a), q Exp(-a): linearity, split at v, shift by i */
AlgebraReport verify_newton_improper_algebra(const std::vector<CReal> &p, const std::vector<CReal> &q,
                                             const CReal &x, const CReal &y, const BigRational &v,
                                             const BigRational &i, std::uint64_t k);

/*
 * One line per coefficient: "n p q" for rational coefficients, otherwise
 * "n <decimal> ±1e-d".
 */
std::string dump(const ConvFPS &f, std::uint64_t count, unsigned digits = 20);

} // namespace hmc
