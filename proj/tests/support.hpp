/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "hmc/creal.hpp"

namespace hmc::test {

inline BigRational R(long p, long q = 1) { return BigRational(BigInt(p), BigInt(q)); }

inline BigInt K(std::uint64_t k) { return BigInt(std::to_string(k)); }

/* exact rational from a decimal literal such as "-0.367879" */
inline BigRational dec(const std::string &s)
{
	bool neg = !s.empty() && s[0] == '-';
	std::string t = neg ? s.substr(1) : s;
	auto dot = t.find('.');
	std::string digits = dot == std::string::npos ? t : t.substr(0, dot) + t.substr(dot + 1);
	std::size_t frac = dot == std::string::npos ? 0 : t.size() - dot - 1;
	BigRational v(BigInt(digits, 10), ipow(BigInt(10), frac));
	return neg ? -v : v;
}

inline BigRational inv(std::uint64_t k) { return BigRational(BigInt(1), K(k)); }

/* |x.approx(k) - want| <= slack */
inline ::testing::AssertionResult near(const CReal &x, const BigRational &want, std::uint64_t k,
                                       const BigRational &slack)
{
	BigRational got = x.approx(K(k));
	BigRational d = (got - want).abs();
	if (d <= slack)
		return ::testing::AssertionSuccess();
	return ::testing::AssertionFailure() << "approx(" << k << ") = " << got.decimal(12) << ", expected "
	                                     << want.decimal(12) << ", gap " << d.decimal(12);
}

/* value within 1/k, allowing the oracle itself an error of 1/oracle_k */
inline ::testing::AssertionResult within(const CReal &x, const BigRational &want, std::uint64_t k)
{
	return near(x, want, k, inv(k));
}

inline BigRational random_rational(std::mt19937_64 &rng, const BigRational &lo, const BigRational &hi,
                                   long den = 997)
{
	std::uniform_int_distribution<long> d(0, den);
	return lo + (hi - lo) * R(d(rng), den);
}

// frozen decimal expansions (40 digits, truncated)
inline const char *kE = "2.7182818284590452353602874713526624977572";
inline const char *kInvE = "0.3678794411714423215955237701614608674458";
inline const char *kSqrt2 = "1.4142135623730950488016887242096980785696";
inline const char *kLn2 = "0.6931471805599453094172321214581765680755";

/* oracle constant within 10^-40 */
inline BigRational oracle(const char *digits) { return dec(digits); }
inline BigRational oracle_slack() { return BigRational(BigInt(1), ipow(BigInt(10), 40)); }

} // namespace hmc::test
