/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmc/creal.hpp"

namespace hmc {

/* integer polynomial, lowest degree first */
using IntPoly = std::vector<BigInt>;

IntPoly poly_mul(const IntPoly &a, const IntPoly &b);
IntPoly poly_derivative(const IntPoly &p);
BigInt poly_eval(const IntPoly &p, const BigInt &a);
/* coefficients of p(a + x) */
IntPoly taylor_shift(const IntPoly &p, const BigInt &x);

/* a_0 + a_1 e + ... + a_n e^n = 0 with integers, a_0 != 0, a_n != 0 */
struct CandidateRelation {
	std::vector<BigInt> coeffs;

	/* throws PreconditionError unless normalized */
	explicit CandidateRelation(std::vector<BigInt> a);
	unsigned n() const { return static_cast<unsigned>(coeffs.size() - 1); }
};

/* a^m ((a-1)(a-2)...(a-n))^(m+1) */
IntPoly build_pm(unsigned n, unsigned m);

/* sum_i a_i sum_j c_ij j! with c_ij the coefficients of p_m(a + i) */
BigInt compute_B(const CandidateRelation &rel, unsigned m);
/* sum_i a_i sum_l p_m^(l)(i) */
BigInt compute_B_derivatives(const CandidateRelation &rel, unsigned m);
/* a_0 (-1)^(n(m+1)) (n!)^(m+1) m! */
BigInt B_congruence_target(const CandidateRelation &rel, unsigned m);

enum class ARoute { Newton, Riemann };

/* interval of width 2/k containing A(m) = sum_i a_i e^i int_0^i p_m(a) e^-a */
RatInterval enclose_A(const CandidateRelation &rel, unsigned m, std::uint64_t k, ARoute route = ARoute::Newton);
CReal A_value(const CandidateRelation &rel, unsigned m, ARoute route = ARoute::Newton);

/* y = w (n+1) n^(n+2), z = n^(n+1) with w = sum |a_i| 3^i */
std::pair<BigRational, BigRational> A_bound_constants(const CandidateRelation &rel);

struct HilbertRecord {
	unsigned m = 0;
	BigInt B;
	BigInt B_mod_mfact;
	bool congruence_ok = false;
	BigRational A_lo, A_hi;
	bool bound_ok = false;
	bool coprime = false;
	bool verdict = false;
};

struct HilbertReport {
	std::vector<HilbertRecord> records;
	std::optional<unsigned> witness;
	bool refuted() const { return witness.has_value(); }
};

/*
 * Verdict at m: gcd(m+1, a_0 n!) = 1, |B(m)| >= m! and the A(m) enclosure
 * lies within m!/10.  Stops at the first such m.
 */
HilbertReport hilbert_report(const CandidateRelation &rel, unsigned m_max, ARoute route = ARoute::Newton,
                             std::uint64_t k = 100);

/* ---- Liouville ---- */

/* real root of p in [lo, hi] where p(lo), p(hi) have opposite signs */
CReal bracketed_root(const IntPoly &p, const BigRational &lo, const BigRational &hi);
/* largest root with a sign change, searched on a 1/16 grid inside the Cauchy bound */
std::optional<CReal> largest_real_root(const IntPoly &p);

/* y = min(1, 1/w) rounded down, w bounding |P'| on [root-1, root+1] */
BigRational liouville_constant(const IntPoly &p, const CReal &root, const BigInt &k = BigInt(1) << 20);

enum class SampleStatus { Pass, Violated, Undecided };
const char *to_string(SampleStatus s);

struct LiouvilleSample {
	BigRational pq;
	std::string lhs; // decimal rendering of |x - p/q|
	BigRational rhs; // y / q^n
	SampleStatus status = SampleStatus::Undecided;
};

struct LiouvilleWitness {
	IntPoly poly;
	unsigned degree = 0;
	BigRational y;
	std::vector<LiouvilleSample> samples;
	bool all_pass() const;
};

LiouvilleWitness liouville_check(const IntPoly &p, const CReal &root, const BigRational &y,
                                 const std::vector<BigRational> &samples, long max_bits = 1 << 14);

/* first `count` continued-fraction convergents of x */
std::vector<BigRational> convergents(const CReal &x, unsigned count);

/* ---- lambda = sum 1/2^(n!) ---- */

struct LambdaApprox {
	BigInt k;
	BigInt l; // 2^(m!)
};

constexpr unsigned kLambdaMaxM = 6;

LambdaApprox lambda_approx(unsigned m);
/* 2^-(m+1)! / (1 - 2^-m!), an upper bound of |lambda - k_m/l_m| */
BigRational lambda_tail_bound(unsigned m);
CReal lambda();

struct LambdaWitness {
	unsigned m = 0;
	LambdaApprox approx;
	BigRational error_bound; // 1/l_m^m
	BigRational liouville_rhs; // y / l_m^d
	bool verified = false;    // error_bound < liouville_rhs, checked exactly
};

LambdaWitness lambda_witness(unsigned d, const BigRational &y);

/* bounds (lo, hi) of sum_{n>l} l 2^(l! - n!) */
std::pair<BigRational, BigRational> lambda_irrationality_tail(unsigned l);

} // namespace hmc
