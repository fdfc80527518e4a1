/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmc/ucfun.hpp"

namespace hmc {

struct TaggedPartition {
	std::vector<BigRational> points; // u_0 < u_1 < ... < u_n
	std::vector<BigRational> tags;   // tags[i] in [u_i, u_{i+1}]

	static TaggedPartition uniform_midpoint(const BigRational &lo, const BigRational &hi, std::uint64_t n);
	static TaggedPartition uniform_left(const BigRational &lo, const BigRational &hi, std::uint64_t n);
	BigRational norm() const;
	/* throws DomainError when ordering or tag containment fails */
	void validate() const;
};

struct IntegralResult {
	CReal value;
	std::uint64_t requested_k = 0;
	BigRational partition_norm_used;
	BigInt cells;
};

/* sum_i f(b_i) (u_i - u_{i-1}) */
CReal riemann_sum(const UCFun &f, const TaggedPartition &p);
/* midpoint sum over n equal cells of [lo, hi]; closed form for poly-exp shapes */
CReal riemann_sum_uniform(const UCFun &f, const BigRational &lo, const BigRational &hi, const BigInt &n);
/* same sum by direct cell evaluation */
CReal riemann_sum_uniform_direct(const UCFun &f, const BigRational &lo, const BigRational &hi,
                                 std::uint64_t n);

/* value within 1/k of the integral of f over [u, v] */
IntegralResult integrate(const UCFun &f, const CReal &u, const CReal &v, std::uint64_t k);

struct ImproperIntegral {
	CReal value;
	BigRational cutoff;
	BigInt cells;
};

/* integral over [0, inf) of p(a) e^-a within 1/k; p lowest degree first */
CReal integrate_improper_polyexp(const std::vector<CReal> &p, std::uint64_t k);
ImproperIntegral integrate_improper_polyexp_detail(const std::vector<CReal> &p, std::uint64_t k);

struct FtaCheck {
	bool ok = false;
	BigRational residual_bound; // certified upper bound of |integral - (g(v) - g(u))|
	CReal residual;
};

FtaCheck check_fta(const UDiffFun &g, const CReal &u, const CReal &v, std::uint64_t k);

struct AlgebraCheck {
	std::string name;
	BigRational residual_bound;
	BigRational tolerance;
	bool ok = false;
};

struct AlgebraReport {
	std::vector<AlgebraCheck> checks;
	bool ok() const;
};

/*
 * Linearity, additivity, shift, monotonicity, |int f| <= int |f| and the
 * length-times-bound estimate, each within 3/k.  Needs [u,v], [v,w] and
 * [u+shift, v+shift] inside the common domain of f and g.
 */
AlgebraReport verify_integral_algebra(const UCFun &f, const UCFun &g, const CReal &u, const CReal &v,
                                      const CReal &w, const CReal &x, const CReal &y, const CReal &shift,
                                      std::uint64_t k);

/* improper integrals of p e^-a and q e^-a: linearity, split at v, shift by i */
AlgebraReport verify_improper_algebra(const std::vector<CReal> &p, const std::vector<CReal> &q,
                                      const CReal &x, const CReal &y, const BigRational &v,
                                      const BigRational &i, std::uint64_t k);

/* coefficients of p(a + x) */
std::vector<CReal> shift_coefficients(const std::vector<CReal> &p, const BigRational &x);
/* sum_j p_j j! */
CReal factorial_moment(const std::vector<CReal> &p);

} // namespace hmc
