/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hmc {

using BigInt = mpz_class;

struct DomainError : std::domain_error {
	using std::domain_error::domain_error;
};

struct ContractViolation : std::logic_error {
	using std::logic_error::logic_error;
};

struct PreconditionError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

struct PrecisionExhausted : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Rational number kept in lowest terms with a positive denominator. */
class BigRational {
	mpq_class v;

public:
	BigRational() = default;
	BigRational(long n) : v(n) {}
	BigRational(int n) : v(n) {}
	BigRational(const BigInt &n) : v(n) {}
	BigRational(const BigInt &num, const BigInt &den);
	explicit BigRational(const mpq_class &q);
	/* gmp expression templates, e.g. 2 * k */
	template <class T, class U>
	BigRational(const __gmp_expr<T, U> &e) : v(e)
	{
		v.canonicalize();
	}

	static BigRational parse(std::string_view text);

	BigInt num() const { return v.get_num(); }
	BigInt den() const { return v.get_den(); }
	const mpq_class &raw() const { return v; }

	int sign() const { return sgn(v); }
	bool is_zero() const { return sgn(v) == 0; }
	bool is_integer() const { return v.get_den() == 1; }

	BigRational operator-() const;
	BigRational abs() const;
	BigRational inv() const;
	BigInt floor() const;
	BigInt ceil() const;

	BigRational &operator+=(const BigRational &o);
	BigRational &operator-=(const BigRational &o);
	BigRational &operator*=(const BigRational &o);
	BigRational &operator/=(const BigRational &o);

	friend BigRational operator+(BigRational a, const BigRational &b) { return a += b; }
	friend BigRational operator-(BigRational a, const BigRational &b) { return a -= b; }
	friend BigRational operator*(BigRational a, const BigRational &b) { return a *= b; }
	friend BigRational operator/(BigRational a, const BigRational &b) { return a /= b; }

	friend bool operator==(const BigRational &a, const BigRational &b) { return a.v == b.v; }
	friend std::strong_ordering operator<=>(const BigRational &a, const BigRational &b)
	{
		int c = cmp(a.v, b.v);
		return c < 0 ? std::strong_ordering::less
		     : c > 0 ? std::strong_ordering::greater
		             : std::strong_ordering::equal;
	}

	std::string str() const;
	/* truncated decimal with `digits` fractional digits (floor) */
	std::string decimal(unsigned digits) const;
	double to_double() const { return v.get_d(); }
};

std::ostream &operator<<(std::ostream &os, const BigRational &q);

BigRational pow(const BigRational &x, unsigned long e);
BigRational min(const BigRational &a, const BigRational &b);
BigRational max(const BigRational &a, const BigRational &b);
inline BigInt min(const BigInt &a, const BigInt &b) { return b < a ? b : a; }
inline BigInt max(const BigInt &a, const BigInt &b) { return a < b ? b : a; }

/* 2^e for any sign of e */
BigRational pow2(long e);

/* smallest n with 2^n >= x; x > 0 */
long ceil_log2(const BigRational &x);
/* smallest n >= 0 with 2^n >= k; k >= 1 */
long ceil_log2(const BigInt &k);

/* nearest multiple of 2^-bits (ties away from zero) */
BigRational round_to_bits(const BigRational &x, long bits);

BigInt binomial(unsigned long m, unsigned long n);
BigInt factorial(unsigned long k);
BigInt gcd(const BigInt &a, const BigInt &b);

inline BigInt ipow(const BigInt &b, unsigned long e)
{
	BigInt r;
	mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
	return r;
}

std::uint64_t to_u64(const BigInt &n);

class RatInterval {
	BigRational lo_, hi_;

public:
	RatInterval(BigRational lo, BigRational hi);
	static RatInterval around(const BigRational &centre, const BigRational &radius);

	const BigRational &lo() const { return lo_; }
	const BigRational &hi() const { return hi_; }
	BigRational width() const { return hi_ - lo_; }
	BigRational mag() const { return max(lo_.abs(), hi_.abs()); }
	bool contains(const BigRational &x) const { return lo_ <= x && x <= hi_; }

	friend RatInterval operator+(const RatInterval &a, const RatInterval &b);
	friend RatInterval operator-(const RatInterval &a, const RatInterval &b);
	friend RatInterval operator*(const RatInterval &a, const RatInterval &b);
	friend RatInterval operator*(const BigRational &c, const RatInterval &a);
};

} // namespace hmc
