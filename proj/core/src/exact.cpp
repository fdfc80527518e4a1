/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/exact.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace hmc {

BigRational::BigRational(const BigInt &num, const BigInt &den) : v(num, den)
{
	if (den == 0)
		throw DomainError("rational with zero denominator");
	v.canonicalize();
}

BigRational::BigRational(const mpq_class &q) : v(q)
{
	if (v.get_den() == 0)
		throw DomainError("rational with zero denominator");
	v.canonicalize();
}

static bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

BigRational BigRational::parse(std::string_view text)
{
	std::string_view s = text;
	bool neg = false;
	if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
		neg = s.front() == '-';
		s.remove_prefix(1);
	}
	auto slash = s.find('/');
	std::string_view ns = s.substr(0, slash);
	std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
	if (!all_digits(ns) || !all_digits(ds))
		throw PreconditionError("malformed rational '" + std::string(text) + "'");
	BigInt n(std::string(ns), 10), d(std::string(ds), 10);
	if (d == 0)
		throw PreconditionError("zero denominator in '" + std::string(text) + "'");
	if (neg)
		n = -n;
	return BigRational(n, d);
}

BigRational BigRational::operator-() const
{
	BigRational r;
	r.v = -v;
	return r;
}

BigRational BigRational::abs() const
{
	BigRational r;
	r.v = ::abs(v);
	return r;
}

BigRational BigRational::inv() const
{
	if (is_zero())
		throw DomainError("inverse of zero");
	return BigRational(v.get_den(), v.get_num());
}

BigInt BigRational::floor() const
{
	BigInt r;
	mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
	return r;
}

BigInt BigRational::ceil() const
{
	BigInt r;
	mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
	return r;
}

BigRational &BigRational::operator+=(const BigRational &o)
{
	v += o.v;
	return *this;
}

BigRational &BigRational::operator-=(const BigRational &o)
{
	v -= o.v;
	return *this;
}

BigRational &BigRational::operator*=(const BigRational &o)
{
	v *= o.v;
	return *this;
}

BigRational &BigRational::operator/=(const BigRational &o)
{
	if (o.is_zero())
		throw DomainError("division by zero");
	v /= o.v;
	return *this;
}

std::string BigRational::str() const
{
	if (is_integer())
		return v.get_num().get_str();
	return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string BigRational::decimal(unsigned digits) const
{
	BigInt scale = ipow(BigInt(10), digits);
	BigInt n = (*this * BigRational(scale)).floor();
	std::string sign;
	if (n < 0) {
		sign = "-";
		n = -n;
	}
	BigInt ip = n / scale, fp = n % scale;
	std::string out = sign + ip.get_str();
	if (digits > 0) {
		std::string f = fp.get_str();
		out += "." + std::string(digits - f.size(), '0') + f;
	}
	return out;
}

std::ostream &operator<<(std::ostream &os, const BigRational &q)
{
	return os << q.str();
}

BigRational pow(const BigRational &x, unsigned long e)
{
	BigInt n, d;
	mpz_pow_ui(n.get_mpz_t(), x.raw().get_num_mpz_t(), e);
	mpz_pow_ui(d.get_mpz_t(), x.raw().get_den_mpz_t(), e);
	return BigRational(n, d);
}

BigRational min(const BigRational &a, const BigRational &b) { return b < a ? b : a; }
BigRational max(const BigRational &a, const BigRational &b) { return a < b ? b : a; }

BigRational pow2(long e)
{
	BigInt p;
	mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
	return e < 0 ? BigRational(BigInt(1), p) : BigRational(p);
}

long ceil_log2(const BigInt &k)
{
	if (k <= 1)
		return 0;
	BigInt m = k - 1;
	return static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

long ceil_log2(const BigRational &x)
{
	if (x.sign() <= 0)
		throw DomainError("ceil_log2 of non-positive value");
	const BigInt &n = x.raw().get_num(), &d = x.raw().get_den();
	long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
	         static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
	// 2^(e-1) < x < 2^(e+1); settle on the exact answer
	while (pow2(e - 1) >= x)
		--e;
	while (pow2(e) < x)
		++e;
	return e;
}

BigRational round_to_bits(const BigRational &x, long bits)
{
	BigInt n = x.num(), d = x.den();
	if (bits >= 0)
		n <<= static_cast<mp_bitcnt_t>(bits);
	else
		d <<= static_cast<mp_bitcnt_t>(-bits);
	// floor((2n + d) / 2d)
	BigInt q;
	BigInt t = 2 * n + d, dd = 2 * d;
	mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), dd.get_mpz_t());
	return BigRational(q) * pow2(-bits);
}

BigInt binomial(unsigned long m, unsigned long n)
{
	if (n > m)
		return 0;
	BigInt r;
	mpz_bin_uiui(r.get_mpz_t(), m, n);
	return r;
}

BigInt factorial(unsigned long k)
{
	BigInt r;
	mpz_fac_ui(r.get_mpz_t(), k);
	return r;
}

BigInt gcd(const BigInt &a, const BigInt &b)
{
	BigInt r;
	mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
	return r;
}

std::uint64_t to_u64(const BigInt &n)
{
	if (n < 0)
		throw DomainError("negative index");
	if (mpz_sizeinbase(n.get_mpz_t(), 2) > 63)
		throw ResourceError("index exceeds 63 bits: " + n.get_str());
	std::uint64_t r = 0;
	mpz_export(&r, nullptr, -1, sizeof r, 0, 0, n.get_mpz_t());
	return r;
}

RatInterval::RatInterval(BigRational lo, BigRational hi) : lo_(std::move(lo)), hi_(std::move(hi))
{
	if (hi_ < lo_)
		throw DomainError("interval with lo > hi");
}

RatInterval RatInterval::around(const BigRational &centre, const BigRational &radius)
{
	return RatInterval(centre - radius.abs(), centre + radius.abs());
}

RatInterval operator+(const RatInterval &a, const RatInterval &b)
{
	return RatInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RatInterval operator-(const RatInterval &a, const RatInterval &b)
{
	return RatInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RatInterval operator*(const RatInterval &a, const RatInterval &b)
{
	BigRational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
	BigRational lo = p[0], hi = p[0];
	for (auto &x : p) {
		lo = min(lo, x);
		hi = max(hi, x);
	}
	return RatInterval(lo, hi);
}

RatInterval operator*(const BigRational &c, const RatInterval &a)
{
	return c.sign() >= 0 ? RatInterval(c * a.lo_, c * a.hi_) : RatInterval(c * a.hi_, c * a.lo_);
}

} // namespace hmc
