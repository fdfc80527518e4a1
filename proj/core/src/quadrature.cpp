/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/quadrature.hpp"

#include "hmc/series.hpp"

namespace hmc {

namespace {

constexpr std::uint64_t kMaxDirectCells = std::uint64_t(1) << 28;

BigInt ceil_pos(const BigRational &x)
{
	BigInt c = x.ceil();
	return c < 1 ? BigInt(1) : c;
}

BigRational recip(const BigInt &l) { return BigRational(BigInt(1), l); }

/* P_j = sum_{i<n} i^j for j <= d */
std::vector<BigInt> power_sums(const BigInt &n, unsigned d)
{
	std::vector<BigInt> p(d + 1);
	for (unsigned j = 0; j <= d; ++j) {
		BigInt acc = ipow(n, j + 1);
		for (unsigned t = 0; t < j; ++t)
			acc -= binomial(j + 1, t) * p[t];
		p[j] = acc / (j + 1);
	}
	return p;
}

/* G_j = sum_{i<n} i^j rho^i with rho = e^(c h), rho^n = e^(c (hi - lo)) */
std::vector<CReal> geometric_moments(const BigInt &n, const BigRational &ch, const BigRational &cspan,
                                     unsigned d)
{
	CReal rho = exp(ch);
	CReal rho_n = exp(cspan);
	BigRational x = ch.abs();
	SeparationWitness w{ceil_pos((1 + x) / x)};
	CReal inv = (CReal(BigRational(1)) - rho).inverse(w);

	std::vector<CReal> g(d + 1);
	g[0] = (CReal(BigRational(1)) - rho_n) * inv;
	for (unsigned j = 1; j <= d; ++j) {
		std::vector<std::pair<BigRational, CReal>> terms;
		terms.emplace_back(-BigRational(ipow(n - 1, j)), rho_n);
		for (unsigned t = 0; t < j; ++t) {
			BigRational c(binomial(j, t));
			if ((j - t) % 2 == 0)
				c = -c;
			terms.emplace_back(c, g[t]);
			if (t == 0)
				terms.emplace_back(-c, CReal(BigRational(1)));
		}
		g[j] = lincomb(terms) * inv;
	}
	return g;
}

CReal closed_form_sum(const PolyExp &shape, const BigRational &lo, const BigRational &hi, const BigInt &n)
{
	BigRational h = (hi - lo) / BigRational(n);
	BigRational s = lo + h / 2;
	std::vector<std::pair<BigRational, CReal>> total;
	for (const auto &term : shape.terms()) {
		const auto &p = term.coeffs;
		if (p.empty())
			continue;
		unsigned d = static_cast<unsigned>(p.size() - 1);
		// q_j = sum_{l >= j} p_l C(l, j) s^(l-j) h^j
		std::vector<CReal> q(d + 1);
		for (unsigned j = 0; j <= d; ++j) {
			std::vector<std::pair<BigRational, CReal>> acc;
			BigRational hj = pow(h, j);
			for (unsigned l = j; l <= d; ++l)
				acc.emplace_back(BigRational(binomial(l, j)) * pow(s, l - j) * hj, p[l]);
			q[j] = lincomb(acc);
		}
		if (term.rate.is_zero()) {
			auto ps = power_sums(n, d);
			for (unsigned j = 0; j <= d; ++j)
				total.emplace_back(h * BigRational(ps[j]), q[j]);
			continue;
		}
		auto g = geometric_moments(n, term.rate * h, term.rate * (hi - lo), d);
		CReal inner;
		for (unsigned j = 0; j <= d; ++j)
			inner += q[j] * g[j];
		total.emplace_back(h, exp(term.rate * s) * inner);
	}
	return lincomb(total);
}

void check_inside(const UCFun &f, const BigRational &a)
{
	if (f.domain().provably_outside(a))
		throw DomainError("integration range leaves the domain at " + a.str());
}

CReal uniform_sum(const UCFun &f, const BigRational &lo, const BigRational &hi, const BigInt &n)
{
	check_inside(f, lo);
	check_inside(f, hi);
	if (f.shape())
		return closed_form_sum(*f.shape(), lo, hi, n);
	if (n > BigInt(std::to_string(kMaxDirectCells)))
		throw ResourceError("partition needs " + n.get_str() + " cells");
	return riemann_sum_uniform_direct(f, lo, hi, to_u64(n));
}

/* bound of sup |f| near [a, b] for the tolerance test on reversed ranges */
BigRational local_sup(const UCFun &f, const BigRational &a, const BigRational &b)
{
	if (f.domain().bounded())
		return f.sup_bound();
	UCFun r = restrict(f, Domain::interval(min(a, b) - 1, max(a, b) + 1));
	return r.sup_bound();
}

CReal residual_max0(const CReal &x) { return max(CReal(), x); }

AlgebraCheck make_check(std::string name, const CReal &residual, std::uint64_t k)
{
	BigInt K(4 * k);
	BigRational q = residual.approx(K);
	AlgebraCheck c;
	c.name = std::move(name);
	c.residual_bound = q.abs() + recip(K);
	c.tolerance = BigRational(BigInt(3), BigInt(k));
	c.ok = c.residual_bound <= c.tolerance;
	return c;
}

UCFun improper_integrand(const std::vector<CReal> &p, const BigRational &cutoff)
{
	Domain dom = Domain::interval(BigRational(0), cutoff);
	return product(poly(p, dom), exp_scaled(BigRational(-1), dom)).f;
}

} // namespace

TaggedPartition TaggedPartition::uniform_midpoint(const BigRational &lo, const BigRational &hi, std::uint64_t n)
{
	if (n == 0 || !(lo < hi))
		throw DomainError("uniform partition needs lo < hi and n >= 1");
	TaggedPartition p;
	BigRational h = (hi - lo) / BigRational(BigInt(std::to_string(n)));
	for (std::uint64_t i = 0; i <= n; ++i)
		p.points.push_back(lo + h * BigRational(BigInt(std::to_string(i))));
	p.points.back() = hi;
	for (std::uint64_t i = 0; i < n; ++i)
		p.tags.push_back((p.points[i] + p.points[i + 1]) / 2);
	return p;
}

TaggedPartition TaggedPartition::uniform_left(const BigRational &lo, const BigRational &hi, std::uint64_t n)
{
	TaggedPartition p = uniform_midpoint(lo, hi, n);
	for (std::uint64_t i = 0; i < n; ++i)
		p.tags[i] = p.points[i];
	return p;
}

BigRational TaggedPartition::norm() const
{
	BigRational d;
	for (std::size_t i = 1; i < points.size(); ++i)
		d = max(d, points[i] - points[i - 1]);
	return d;
}

void TaggedPartition::validate() const
{
	if (points.size() < 2 || tags.size() + 1 != points.size())
		throw DomainError("partition needs n+1 points and n tags");
	for (std::size_t i = 0; i < tags.size(); ++i) {
		if (!(points[i] < points[i + 1]))
			throw DomainError("partition points are not strictly increasing");
		if (tags[i] < points[i] || tags[i] > points[i + 1])
			throw DomainError("tag outside its cell");
	}
}

CReal riemann_sum(const UCFun &f, const TaggedPartition &p)
{
	p.validate();
	check_inside(f, p.points.front());
	check_inside(f, p.points.back());
	std::vector<BigRational> widths;
	std::vector<long> shift;
	for (std::size_t i = 0; i < p.tags.size(); ++i) {
		check_inside(f, p.tags[i]);
		widths.push_back(p.points[i + 1] - p.points[i]);
		shift.push_back(ceil_log2(widths.back()));
	}
	std::vector<BigRational> tags = p.tags;
	return weighted_term_sum(tags.size(), BigRational(1),
	                         [f, tags, widths, shift](std::uint64_t i, long b) {
		                         return widths[i] * f.approx_at(tags[i], b + shift[i]);
	                         });
}

CReal riemann_sum_uniform_direct(const UCFun &f, const BigRational &lo, const BigRational &hi, std::uint64_t n)
{
	if (n == 0 || !(lo < hi))
		throw DomainError("uniform sum needs lo < hi and n >= 1");
	check_inside(f, lo);
	check_inside(f, hi);
	BigRational h = (hi - lo) / BigRational(BigInt(std::to_string(n)));
	BigRational s = lo + h / 2;
	return weighted_term_sum(n, h, [f, h, s](std::uint64_t i, long b) {
		return f.approx_at(s + h * BigRational(BigInt(std::to_string(i))), b);
	});
}

CReal riemann_sum_uniform(const UCFun &f, const BigRational &lo, const BigRational &hi, const BigInt &n)
{
	if (n < 1 || !(lo < hi))
		throw DomainError("uniform sum needs lo < hi and n >= 1");
	return uniform_sum(f, lo, hi, n);
}

IntegralResult integrate(const UCFun &f, const CReal &u, const CReal &v, std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("integrate needs k >= 1");
	IntegralResult r;
	r.requested_k = k;
	BigInt kk(std::to_string(k));

	// orientation
	BigRational gap; // certified lower bound of v - u once oriented
	if (u.exact() && v.exact()) {
		const BigRational &a = *u.exact(), &b = *v.exact();
		if (a == b) {
			r.value = CReal();
			return r;
		}
		if (b < a) {
			r = integrate(f, v, u, k);
			r.value = -r.value;
			return r;
		}
		gap = b - a;
	} else {
		BigRational ua = u.approx_bits(8), va = v.approx_bits(8);
		BigRational B = local_sup(f, ua, va);
		BigInt K = ceil_pos(4 * BigRational(kk) * B) + 1;
		Cmp c = compare(u, v, K);
		if (c == Cmp::Within) {
			r.value = CReal();
			r.partition_norm_used = 0;
			return r;
		}
		if (c == Cmp::Greater) {
			r = integrate(f, v, u, k);
			r.value = -r.value;
			return r;
		}
		// compare reported Less at precision K: v - u > 1/(2K) is not guaranteed,
		// so certify a positive gap by refinement
		CReal d = v - u;
		for (long b = ceil_log2(BigInt(4 * K));; b += 8) {
			BigRational q = d.approx_bits(b);
			if (q > pow2(-b + 1)) {
				gap = q - pow2(-b);
				break;
			}
			if (b > 1 << 16)
				throw PrecisionExhausted("integrate: cannot separate the endpoints");
		}
	}

	CReal span = v - u;
	BigRational W = span.exact() ? *span.exact() : span.upper_abs(16);
	BigInt l = f.modulus(ceil_pos(2 * (W + 1) * BigRational(kk)));

	if (u.exact() && v.exact()) {
		BigRational a = *u.exact(), b = *v.exact();
		BigInt n = ceil_pos((b - a) * BigRational(l));
		r.value = uniform_sum(f, a, b, n);
		r.partition_norm_used = (b - a) / BigRational(n);
		r.cells = n;
		return r;
	}

	BigInt lsep = ceil_pos(2 / gap);
	if (lsep > l)
		l = lsep;
	BigInt l8 = 8 * l;
	BigRational up = u.exact() ? *u.exact() : u.approx(l8) + recip(l8);
	BigRational vp = v.exact() ? *v.exact() : v.approx(l8) - recip(l8);
	std::vector<std::pair<BigRational, CReal>> parts;
	CReal value;
	BigInt n = ceil_pos((vp - up) * BigRational(l));
	value = uniform_sum(f, up, vp, n);
	if (!u.exact())
		value += f(up) * (CReal(up) - u);
	if (!v.exact())
		value += f(vp) * (v - CReal(vp));
	r.value = value;
	r.partition_norm_used = max((vp - up) / BigRational(n), recip(4 * l));
	r.cells = n + (u.exact() ? 0 : 1) + (v.exact() ? 0 : 1);
	return r;
}

ImproperIntegral integrate_improper_polyexp_detail(const std::vector<CReal> &p, std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("integrate_improper_polyexp needs k >= 1");
	ImproperIntegral out;
	// |p(a)| <= C e^(a/2) with C = sum |p_j| j! 2^j, tail beyond A is at most 2 C e^(-A/2)
	BigRational C;
	for (std::size_t j = 0; j < p.size(); ++j) {
		if (p[j].exact() && p[j].exact()->is_zero())
			continue;
		C += p[j].upper_abs(8) * BigRational(factorial(j)) * pow2(static_cast<long>(j));
	}
	if (C.is_zero()) {
		out.value = CReal();
		out.cutoff = 0;
		return out;
	}
	BigInt kk(std::to_string(k));
	BigInt X = exp_dominance_bound(0, ceil_pos(4 * BigRational(kk) * C));
	BigRational A = 2 * BigRational(X);
	if (A < 1)
		A = 1;
	UCFun f = improper_integrand(p, A);
	IntegralResult r = integrate(f, CReal(BigRational(0)), CReal(A), 2 * k);
	out.value = r.value;
	out.cutoff = A;
	out.cells = r.cells;
	return out;
}

CReal integrate_improper_polyexp(const std::vector<CReal> &p, std::uint64_t k)
{
	return integrate_improper_polyexp_detail(p, k).value;
}

FtaCheck check_fta(const UDiffFun &g, const CReal &u, const CReal &v, std::uint64_t k)
{
	IntegralResult I = integrate(g.deriv, u, v, 2 * k);
	CReal diff = eval_at_real(g.f, v) - eval_at_real(g.f, u);
	FtaCheck c;
	c.residual = I.value - diff;
	BigInt K(8 * k);
	c.residual_bound = c.residual.approx(K).abs() + recip(K);
	c.ok = c.residual_bound <= BigRational(BigInt(1), BigInt(k));
	return c;
}

bool AlgebraReport::ok() const
{
	for (const auto &c : checks)
		if (!c.ok)
			return false;
	return true;
}

AlgebraReport verify_integral_algebra(const UCFun &f, const UCFun &g, const CReal &u, const CReal &v,
                                      const CReal &w, const CReal &x, const CReal &y, const CReal &shift,
                                      std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("verify_integral_algebra needs k >= 1");
	AlgebraReport rep;
	BigRational X = x.upper_abs(8), Y = y.upper_abs(8);
	// each identity's integral errors sum to at most 1/(2k)
	std::uint64_t K = to_u64(ceil_pos(4 * (1 + X + Y) * BigRational(BigInt(std::to_string(k)))));
	std::uint64_t K2 = 2 * k;

	CReal If = integrate(f, u, v, K).value;
	CReal Ig = integrate(g, u, v, K).value;
	CReal Ilin = integrate(lin_comb(x, f, y, g), u, v, K).value;
	rep.checks.push_back(make_check("linearity", Ilin - (x * If + y * Ig), k));

	CReal Iuw = integrate(f, u, w, K).value;
	CReal Ivw = integrate(f, v, w, K).value;
	rep.checks.push_back(make_check("additivity", Iuw - (If + Ivw), k));

	CReal Ishift = integrate(hmc::shift(f, shift), u, v, K).value;
	CReal Imoved = integrate(f, u + shift, v + shift, K).value;
	rep.checks.push_back(make_check("shift", Ishift - Imoved, k));

	CReal If2 = integrate(f, u, v, K2).value;
	UCFun dominating = lin_comb(CReal(BigRational(1)), f, CReal(BigRational(1)), abs_fun(g));
	CReal Idom = integrate(dominating, u, v, K2).value;
	rep.checks.push_back(make_check("monotonicity", residual_max0(If2 - Idom), k));

	CReal Iabs = integrate(abs_fun(f), u, v, K2).value;
	rep.checks.push_back(make_check("abs_inequality", residual_max0(If2.abs() - Iabs), k));

	BigRational B = bound(f, BigInt(std::to_string(K2)));
	rep.checks.push_back(make_check("lm_bound", residual_max0(If2.abs() - B * (v - u)), k));
	return rep;
}

std::vector<CReal> shift_coefficients(const std::vector<CReal> &p, const BigRational &x)
{
	std::vector<CReal> out(p.size());
	for (std::size_t l = 0; l < p.size(); ++l) {
		std::vector<std::pair<BigRational, CReal>> acc;
		for (std::size_t j = l; j < p.size(); ++j)
			acc.emplace_back(BigRational(binomial(j, l)) * pow(x, j - l), p[j]);
		out[l] = lincomb(acc);
	}
	return out;
}

CReal factorial_moment(const std::vector<CReal> &p)
{
	std::vector<std::pair<BigRational, CReal>> acc;
	for (std::size_t j = 0; j < p.size(); ++j)
		acc.emplace_back(BigRational(factorial(j)), p[j]);
	return lincomb(acc);
}

AlgebraReport verify_improper_algebra(const std::vector<CReal> &p, const std::vector<CReal> &q,
                                      const CReal &x, const CReal &y, const BigRational &v,
                                      const BigRational &i, std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("verify_improper_algebra needs k >= 1");
	if (v.sign() < 0 || i.sign() < 0)
		throw PreconditionError("split point and shift must be nonnegative");
	AlgebraReport rep;
	BigRational X = x.upper_abs(8), Y = y.upper_abs(8);
	std::uint64_t K = to_u64(ceil_pos(4 * (1 + X + Y) * BigRational(BigInt(std::to_string(k)))));

	std::size_t n = std::max(p.size(), q.size());
	std::vector<CReal> r(n);
	for (std::size_t j = 0; j < n; ++j) {
		CReal pj = j < p.size() ? p[j] : CReal(), qj = j < q.size() ? q[j] : CReal();
		r[j] = x * pj + y * qj;
	}
	CReal Ip = integrate_improper_polyexp(p, K);
	CReal Iq = integrate_improper_polyexp(q, K);
	CReal Ir = integrate_improper_polyexp(r, K);
	rep.checks.push_back(make_check("improper_linearity", Ir - (x * Ip + y * Iq), k));

	// int_0^inf = int_0^v + e^-v int_0^inf p(a + v) e^-a
	std::uint64_t K4 = 4 * k;
	CReal head;
	if (v.sign() > 0)
		head = integrate(improper_integrand(p, v), CReal(BigRational(0)), CReal(v), K4).value;
	CReal ev = exp(-v);
	BigRational evb = ev.upper_abs(8);
	std::uint64_t Kt = to_u64(ceil_pos(BigRational(BigInt(std::to_string(K4))) * max(evb, BigRational(1))));
	CReal tail = ev * integrate_improper_polyexp(shift_coefficients(p, v), Kt);
	CReal whole = integrate_improper_polyexp(p, K4);
	rep.checks.push_back(make_check("improper_split", whole - (head + tail), k));

	auto ps = shift_coefficients(p, i);
	CReal expansion = factorial_moment(ps);
	CReal quad = integrate_improper_polyexp(ps, 2 * k);
	rep.checks.push_back(make_check("improper_shift", quad - expansion, k));
	return rep;
}

} // namespace hmc
