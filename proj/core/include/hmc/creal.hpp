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
#include <utility>
#include <vector>

#include "hmc/exact.hpp"

namespace hmc {

namespace detail {
class Node;
}

/* Certificate that |x| >= 1/k. */
struct SeparationWitness {
	BigInt k;
};

enum class Cmp { Less, Greater, Within };

/*
 * A computable real.  approx_bits(n) returns a rational within 2^-n of the
 * value; approx(k) returns one within 1/k.  Results are cached per
 * precision, so repeated queries agree.
 */
class CReal {
	std::shared_ptr<const detail::Node> node_;

	explicit CReal(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}

	friend CReal lincomb(const std::vector<std::pair<BigRational, CReal>> &terms);
	friend CReal exp(const BigRational &a);
	friend CReal sqrt(const BigRational &a);
	friend CReal weighted_term_sum(std::uint64_t count, BigRational weight,
	                               std::function<BigRational(std::uint64_t, long)> term);

public:
	using Sequence = std::function<BigRational(std::uint64_t)>;
	using RealSequence = std::function<CReal(std::uint64_t)>;
	/* k -> n0 such that m, n >= n0 implies |a_m - a_n| <= 1/k */
	using IndexModulus = std::function<std::uint64_t(const BigInt &)>;
	/* n -> rational within 2^-n */
	using BitsApprox = std::function<BigRational(long)>;

	CReal();
	CReal(const BigRational &a);

	static CReal from_rational(const BigRational &a) { return CReal(a); }
	static CReal from_cauchy(Sequence seq, IndexModulus modulus);
	static CReal limit(RealSequence xs, IndexModulus modulus);
	static CReal from_bits(BitsApprox f);

	BigRational approx(const BigInt &k) const;
	BigRational approx_bits(long n) const;
	const std::optional<BigRational> &exact() const;
	/* rational r with |x| <= r */
	BigRational upper_abs(long bits = 0) const;
	/* smallest b with |x| <= 2^b certified by approx_bits(0) */
	long mag_bits() const;

	CReal operator-() const;
	friend CReal operator+(const CReal &a, const CReal &b);
	friend CReal operator-(const CReal &a, const CReal &b);
	friend CReal operator*(const CReal &a, const CReal &b);
	friend CReal operator*(const BigRational &r, const CReal &x);
	CReal &operator+=(const CReal &o) { return *this = *this + o; }
	CReal &operator-=(const CReal &o) { return *this = *this - o; }
	CReal &operator*=(const CReal &o) { return *this = *this * o; }

	/* throws ContractViolation when w does not certify x */
	CReal inverse(const SeparationWitness &w) const;
	CReal abs() const;

	const void *id() const { return node_.get(); }
};

Cmp compare(const CReal &x, const CReal &y, const BigInt &k);
const char *to_string(Cmp c);

bool witness_valid(const CReal &x, const SeparationWitness &w);
/* searches precisions up to 2^-max_bits for a certificate |x| >= 2^-n */
std::optional<SeparationWitness> find_witness(const CReal &x, long max_bits = 4096);

/* sum_i w_i x_i with one combined precision budget */
CReal lincomb(const std::vector<std::pair<BigRational, CReal>> &terms);
CReal pow(const CReal &x, unsigned long e);
CReal min(const CReal &a, const CReal &b);
CReal max(const CReal &a, const CReal &b);

/* e^a by fixed-point Taylor summation */
CReal exp(const BigRational &a);
CReal sqrt(const BigRational &a);
const CReal &euler_e();

/* W * sum_{i<count} t_i where term(i, b) is within 2^-b of t_i */
CReal weighted_term_sum(std::uint64_t count, BigRational weight,
                        std::function<BigRational(std::uint64_t, long)> term);

/* floor(x * 10^d) / 10^d, precision raised until the digits are certain; e.g. "2.7182 ±1e-4" */
std::string render(const CReal &x, unsigned d);
std::string render_digits(const CReal &x, unsigned d);

} // namespace hmc
