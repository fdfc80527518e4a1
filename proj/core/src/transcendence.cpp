/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/transcendence.hpp"

#include "hmc/fps.hpp"
#include "hmc/quadrature.hpp"
#include "hmc/series.hpp"
#include "hmc/ucfun.hpp"

namespace hmc {

namespace {

BigInt ceil_pos(const BigRational &x)
{
	BigInt c = x.ceil();
	return c < 1 ? BigInt(1) : c;
}

BigInt abs_int(const BigInt &x) { return x < 0 ? BigInt(-x) : x; }

BigInt big(std::uint64_t n) { return BigInt(std::to_string(n)); }

BigRational eval_rational(const IntPoly &p, const BigRational &a)
{
	BigRational r;
	for (std::size_t i = p.size(); i-- > 0;)
		r = r * a + BigRational(p[i]);
	return r;
}

std::vector<CReal> to_creal(const IntPoly &p)
{
	std::vector<CReal> out;
	for (const auto &c : p)
		out.emplace_back(BigRational(c));
	return out;
}

unsigned degree_of(const IntPoly &p)
{
	for (std::size_t i = p.size(); i-- > 0;)
		if (p[i] != 0)
			return static_cast<unsigned>(i);
	throw PreconditionError("zero polynomial");
}

std::uint64_t factorial_u64(unsigned m)
{
	std::uint64_t f = 1;
	for (unsigned i = 2; i <= m; ++i)
		f *= i;
	return f;
}

} // namespace

IntPoly poly_mul(const IntPoly &a, const IntPoly &b)
{
	if (a.empty() || b.empty())
		return {};
	IntPoly c(a.size() + b.size() - 1);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			c[i + j] += a[i] * b[j];
	return c;
}

IntPoly poly_derivative(const IntPoly &p)
{
	IntPoly d;
	for (std::size_t i = 1; i < p.size(); ++i)
		d.push_back(p[i] * static_cast<unsigned long>(i));
	return d;
}

BigInt poly_eval(const IntPoly &p, const BigInt &a)
{
	BigInt r;
	for (std::size_t i = p.size(); i-- > 0;)
		r = r * a + p[i];
	return r;
}

IntPoly taylor_shift(const IntPoly &p, const BigInt &x)
{
	IntPoly out(p.size());
	for (std::size_t l = 0; l < p.size(); ++l)
		for (std::size_t j = l; j < p.size(); ++j)
			out[l] += p[j] * binomial(j, l) * ipow(x, j - l);
	return out;
}

CandidateRelation::CandidateRelation(std::vector<BigInt> a) : coeffs(std::move(a))
{
	if (coeffs.size() < 2)
		throw PreconditionError("relation needs n >= 1");
	if (coeffs.front() == 0)
		throw PreconditionError("relation needs a_0 != 0");
	if (coeffs.back() == 0)
		throw PreconditionError("relation needs a_n != 0");
}

IntPoly build_pm(unsigned n, unsigned m)
{
	if (n < 1 || m < 1)
		throw PreconditionError("build_pm needs n, m >= 1");
	IntPoly base{BigInt(1)};
	for (unsigned i = 1; i <= n; ++i)
		base = poly_mul(base, IntPoly{BigInt(-static_cast<long>(i)), BigInt(1)});
	IntPoly p(m + 1);
	p[m] = 1;
	for (unsigned t = 0; t <= m; ++t)
		p = poly_mul(p, base);
	return p;
}

BigInt compute_B(const CandidateRelation &rel, unsigned m)
{
	IntPoly pm = build_pm(rel.n(), m);
	BigInt B;
	for (unsigned i = 0; i <= rel.n(); ++i) {
		IntPoly c = taylor_shift(pm, BigInt(i));
		BigInt s;
		for (std::size_t j = 0; j < c.size(); ++j)
			s += c[j] * factorial(j);
		B += rel.coeffs[i] * s;
	}
	return B;
}

BigInt compute_B_derivatives(const CandidateRelation &rel, unsigned m)
{
	std::vector<IntPoly> ders{build_pm(rel.n(), m)};
	while (ders.back().size() > 1)
		ders.push_back(poly_derivative(ders.back()));
	BigInt B;
	for (unsigned i = 0; i <= rel.n(); ++i) {
		BigInt s;
		for (const auto &d : ders)
			s += poly_eval(d, BigInt(i));
		B += rel.coeffs[i] * s;
	}
	return B;
}

BigInt B_congruence_target(const CandidateRelation &rel, unsigned m)
{
	unsigned n = rel.n();
	BigInt t = rel.coeffs[0] * ipow(factorial(n), m + 1) * factorial(m);
	if ((static_cast<unsigned long>(n) * (m + 1)) % 2 == 1)
		t = -t;
	return t;
}

CReal A_value(const CandidateRelation &rel, unsigned m, ARoute route)
{
	if (route != ARoute::Newton)
		throw PreconditionError("exact A value needs the Newton route");
	ConvFPS integrand = polyexp_fps(to_creal(build_pm(rel.n(), m)));
	std::vector<std::pair<BigRational, CReal>> terms;
	for (unsigned i = 1; i <= rel.n(); ++i) {
		if (rel.coeffs[i] == 0)
			continue;
		CReal I = newton_integral(integrand, CReal(BigRational(0)), CReal(BigRational(static_cast<long>(i))));
		terms.emplace_back(BigRational(rel.coeffs[i]), exp(BigRational(static_cast<long>(i))) * I);
	}
	return lincomb(terms);
}

RatInterval enclose_A(const CandidateRelation &rel, unsigned m, std::uint64_t k, ARoute route)
{
	if (k == 0)
		throw PreconditionError("enclose_A needs k >= 1");
	BigInt kk = big(k);
	BigRational r(BigInt(1), kk);
	if (route == ARoute::Newton) {
		BigRational q = A_value(rel, m, route).approx(kk);
		return RatInterval(q - r, q + r);
	}
	unsigned n = rel.n();
	Domain dom = Domain::interval(BigRational(0), BigRational(static_cast<long>(n)));
	UCFun f = product(poly(to_creal(build_pm(n, m)), dom), exp_scaled(BigRational(-1), dom)).f;
	std::vector<std::pair<BigRational, CReal>> terms;
	for (unsigned i = 1; i <= n; ++i) {
		if (rel.coeffs[i] == 0)
			continue;
		// |a_i| e^i / k_i <= 1 / (2k(n+1))
		BigInt ki = ceil_pos(BigRational(2 * kk * (n + 1) * abs_int(rel.coeffs[i]) * ipow(BigInt(3), i)));
		CReal I = integrate(f, CReal(BigRational(0)), CReal(BigRational(static_cast<long>(i))), to_u64(ki)).value;
		terms.emplace_back(BigRational(rel.coeffs[i]), exp(BigRational(static_cast<long>(i))) * I);
	}
	BigRational q = lincomb(terms).approx(2 * kk);
	return RatInterval(q - r, q + r);
}

std::pair<BigRational, BigRational> A_bound_constants(const CandidateRelation &rel)
{
	unsigned n = rel.n();
	BigInt w;
	for (unsigned i = 0; i <= n; ++i)
		w += abs_int(rel.coeffs[i]) * ipow(BigInt(3), i);
	BigInt N(n);
	BigInt y = w * (n + 1) * ipow(N, n + 2);
	BigInt z = ipow(N, n + 1);
	return {BigRational(y), BigRational(z)};
}

HilbertReport hilbert_report(const CandidateRelation &rel, unsigned m_max, ARoute route, std::uint64_t k)
{
	HilbertReport rep;
	unsigned n = rel.n();
	BigInt a0n = abs_int(rel.coeffs[0]) * factorial(n);
	auto [y, z] = A_bound_constants(rel);
	for (unsigned m = 1; m <= m_max; ++m) {
		HilbertRecord r;
		r.m = m;
		r.B = compute_B(rel, m);
		if (r.B != compute_B_derivatives(rel, m))
			throw ContractViolation("B(m) routes disagree");
		BigInt mf = factorial(m), mf1 = factorial(m + 1);
		r.B_mod_mfact = r.B % mf;
		BigInt diff = r.B - B_congruence_target(rel, m);
		r.congruence_ok = r.B_mod_mfact == 0 && BigInt(diff % mf1) == 0;
		RatInterval A = enclose_A(rel, m, k, route);
		r.A_lo = A.lo();
		r.A_hi = A.hi();
		BigRational supA = A.mag();
		r.bound_ok = supA <= y * pow(z, m);
		r.coprime = gcd(BigInt(m + 1), a0n) == 1;
		r.verdict = r.coprime && abs_int(r.B) >= mf && supA <= BigRational(mf, BigInt(10));
		rep.records.push_back(r);
		if (r.verdict) {
			rep.witness = m;
			break;
		}
	}
	return rep;
}

/* ---- Liouville ---- */

CReal bracketed_root(const IntPoly &p, const BigRational &lo, const BigRational &hi)
{
	BigRational flo = eval_rational(p, lo), fhi = eval_rational(p, hi);
	if (flo.is_zero())
		return CReal(lo);
	if (fhi.is_zero())
		return CReal(hi);
	if (flo.sign() == fhi.sign())
		throw PreconditionError("bracket has no sign change");
	int slo = flo.sign();
	return CReal::from_bits([p, lo, hi, slo](long n) {
		BigRational a = lo, b = hi, eps = pow2(-n);
		while (b - a > eps) {
			BigRational mid = (a + b) / 2;
			int s = eval_rational(p, mid).sign();
			if (s == 0)
				return mid;
			if (s == slo)
				a = mid;
			else
				b = mid;
		}
		return a;
	});
}

std::optional<CReal> largest_real_root(const IntPoly &p)
{
	unsigned d = degree_of(p);
	if (d == 0)
		return std::nullopt;
	BigRational lead = BigRational(p[d]).abs(), B(1);
	for (unsigned i = 0; i < d; ++i)
		B = max(B, BigRational(p[i]).abs() / lead + 1);
	BigInt steps = (B * 16).ceil();
	BigRational step(BigInt(1), BigInt(16));
	BigRational hi = BigRational(steps) * step;
	int shi = eval_rational(p, hi).sign();
	for (BigInt s = steps; s > -steps; --s) {
		BigRational a = BigRational(s - 1) * step, b = BigRational(s) * step;
		int sa = eval_rational(p, a).sign();
		if (shi == 0)
			return CReal(b);
		if (sa != 0 && sa != shi)
			return bracketed_root(p, a, b);
		shi = sa;
	}
	return std::nullopt;
}

BigRational liouville_constant(const IntPoly &p, const CReal &root, const BigInt &k)
{
	unsigned n = degree_of(p);
	if (n < 2)
		throw PreconditionError("Liouville constant needs degree >= 2");
	std::vector<std::pair<BigRational, CReal>> terms;
	for (unsigned i = 0; i <= n; ++i)
		terms.emplace_back(BigRational(p[i]), pow(root, i));
	CReal value = lincomb(terms);
	if (value.approx(2 * k).abs() > BigRational(BigInt(1), 2 * k))
		throw PreconditionError("root is not certifiably a zero of the polynomial");
	Domain dom = Domain::interval(root - CReal(BigRational(1)), root + CReal(BigRational(1)));
	UCFun dp = poly(to_creal(poly_derivative(p)), dom).f;
	BigRational w = bound(dp, BigInt(64));
	BigRational y0 = w <= 1 ? BigRational(1) : min(BigRational(1), w.inv());
	long b = 16 + std::max(0L, ceil_log2(max(w, BigRational(1))));
	return BigRational((y0 * pow2(b)).floor()) * pow2(-b);
}

const char *to_string(SampleStatus s)
{
	switch (s) {
	case SampleStatus::Pass:
		return "pass";
	case SampleStatus::Violated:
		return "violated";
	case SampleStatus::Undecided:
		break;
	}
	return "undecided";
}

bool LiouvilleWitness::all_pass() const
{
	for (const auto &s : samples)
		if (s.status != SampleStatus::Pass)
			return false;
	return true;
}

LiouvilleWitness liouville_check(const IntPoly &p, const CReal &root, const BigRational &y,
                                 const std::vector<BigRational> &samples, long max_bits)
{
	LiouvilleWitness w;
	w.poly = p;
	w.degree = degree_of(p);
	w.y = y;
	for (const auto &pq : samples) {
		LiouvilleSample s;
		s.pq = pq;
		s.rhs = y / pow(BigRational(pq.den()), w.degree);
		CReal lhs = (root - CReal(pq)).abs();
		for (long b = 8; b <= max_bits; b *= 2) {
			Cmp c = compare(lhs, CReal(s.rhs), BigInt(1) << static_cast<mp_bitcnt_t>(b));
			if (c == Cmp::Greater) {
				s.status = SampleStatus::Pass;
				break;
			}
			if (c == Cmp::Less) {
				s.status = SampleStatus::Violated;
				break;
			}
		}
		unsigned digits = 12 + w.degree * static_cast<unsigned>(pq.den().get_str().size());
		s.lhs = render(lhs, digits);
		w.samples.push_back(std::move(s));
	}
	return w;
}

std::vector<BigRational> convergents(const CReal &x, unsigned count)
{
	for (long bits = 64 + 8L * count;; bits *= 2) {
		BigRational c = x.approx_bits(bits), e = pow2(-bits);
		BigRational a = c - e, b = c + e;
		if (x.exact())
			a = b = *x.exact();
		std::vector<BigRational> out;
		// h_n = q_n h_(n-1) + h_(n-2), same for denominators
		BigInt h1(1), h2(0), k1(0), k2(1);
		// expand both ends while their partial quotients agree
		while (out.size() < count) {
			BigInt qa = a.floor(), qb = b.floor();
			if (qa != qb)
				break;
			BigInt h = qa * h1 + h2, k = qa * k1 + k2;
			h2 = h1;
			k2 = k1;
			h1 = h;
			k1 = k;
			out.emplace_back(h, k);
			BigRational fa = a - BigRational(qa), fb = b - BigRational(qb);
			if (fa.is_zero() || fb.is_zero())
				break;
			BigRational na = fb.inv(), nb = fa.inv();
			a = na;
			b = nb;
		}
		if (out.size() >= count || x.exact() || bits > (1L << 20))
			return out;
	}
}

/* ---- lambda ---- */

LambdaApprox lambda_approx(unsigned m)
{
	if (m < 1)
		throw PreconditionError("lambda_approx needs m >= 1");
	if (m > kLambdaMaxM)
		throw ResourceError("lambda_approx supports m <= 6");
	std::uint64_t mf = factorial_u64(m);
	LambdaApprox a;
	for (unsigned n = 1; n <= m; ++n)
		a.k += BigInt(1) << static_cast<mp_bitcnt_t>(mf - factorial_u64(n));
	a.l = BigInt(1) << static_cast<mp_bitcnt_t>(mf);
	return a;
}

BigRational lambda_tail_bound(unsigned m)
{
	if (m < 1 || m > kLambdaMaxM)
		throw ResourceError("lambda_tail_bound supports 1 <= m <= 6");
	BigRational a = pow2(-static_cast<long>(factorial_u64(m + 1)));
	return a / (1 - pow2(-static_cast<long>(factorial_u64(m))));
}

CReal lambda()
{
	static const CReal value = sum(ConvSeries::rational(
	    [](std::uint64_t n) {
		    if (n == 0)
			    return BigRational(0);
		    if (n > 12)
			    throw ResourceError("lambda term index too large");
		    return pow2(-static_cast<long>(factorial_u64(static_cast<unsigned>(n))));
	    },
	    [](const BigInt &k) -> std::uint64_t {
		    // tail beyond N is at most 2 * 2^-(N+1)!
		    long need = ceil_log2(k) + 1;
		    std::uint64_t N = 1;
		    while (static_cast<long>(factorial_u64(static_cast<unsigned>(N + 1))) < need)
			    ++N;
		    return N;
	    }));
	return value;
}

LambdaWitness lambda_witness(unsigned d, const BigRational &y)
{
	if (d < 2)
		throw PreconditionError("lambda_witness needs d >= 2");
	if (y.sign() <= 0)
		throw PreconditionError("lambda_witness needs y > 0");
	for (unsigned m = d + 1; m <= kLambdaMaxM; ++m) {
		LambdaApprox a = lambda_approx(m);
		if (!(BigRational(BigInt(1), ipow(a.l, m - d)) < y))
			continue;
		LambdaWitness w;
		w.m = m;
		w.approx = a;
		w.error_bound = BigRational(BigInt(1), ipow(a.l, m));
		w.liouville_rhs = y / BigRational(ipow(a.l, d));
		w.verified = lambda_tail_bound(m) <= w.error_bound && w.error_bound < w.liouville_rhs;
		return w;
	}
	throw ResourceError("no supported m <= 6 beats the given constant");
}

std::pair<BigRational, BigRational> lambda_irrationality_tail(unsigned l)
{
	if (l < 1 || l > 4)
		throw ResourceError("lambda_irrationality_tail supports 1 <= l <= 4");
	long lf = static_cast<long>(factorial_u64(l));
	BigRational L(static_cast<long>(l));
	BigRational t1 = L * pow2(lf - static_cast<long>(factorial_u64(l + 1)));
	BigRational t2 = L * pow2(lf - static_cast<long>(factorial_u64(l + 2)));
	// remaining terms after t2 halve at least at every step
	return {t1 + t2, t1 + 2 * t2};
}

} // namespace hmc
