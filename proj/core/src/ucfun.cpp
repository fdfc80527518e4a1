/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/ucfun.hpp"

#include <algorithm>

namespace hmc {

namespace {

const BigInt kMembershipPrecision = BigInt(1) << 64;

BigInt ceil_pos(const BigRational &x)
{
	BigInt c = x.ceil();
	return c < 1 ? BigInt(1) : c;
}

BigRational recip(const BigInt &l) { return BigRational(BigInt(1), l); }

} // namespace

/* ---- Domain ---- */

Domain Domain::line()
{
	return Domain();
}

Domain Domain::interval(const BigRational &lo, const BigRational &hi)
{
	if (!(lo < hi))
		throw DomainError("interval needs lo < hi");
	Domain d;
	d.bounded_ = true;
	d.lo_ = CReal(lo);
	d.hi_ = CReal(hi);
	d.hull_lo_ = lo;
	d.hull_hi_ = hi;
	return d;
}

Domain Domain::interval(const CReal &lo, const CReal &hi)
{
	if (lo.exact() && hi.exact())
		return interval(*lo.exact(), *hi.exact());
	auto w = find_witness(hi - lo);
	if (!w || (hi - lo).approx(2 * w->k).sign() <= 0)
		throw DomainError("interval endpoints are not certifiably ordered");
	Domain d;
	d.bounded_ = true;
	d.lo_ = lo;
	d.hi_ = hi;
	d.hull_lo_ = lo.exact() ? *lo.exact() : lo.approx_bits(32) - pow2(-32);
	d.hull_hi_ = hi.exact() ? *hi.exact() : hi.approx_bits(32) + pow2(-32);
	return d;
}

BigRational Domain::abs_bound() const
{
	if (!bounded_)
		throw DomainError("unbounded domain");
	return max(hull_lo_.abs(), hull_hi_.abs());
}

bool Domain::provably_outside(const BigRational &a) const
{
	if (!bounded_)
		return false;
	if (lo_.exact() && hi_.exact())
		return a < *lo_.exact() || a > *hi_.exact();
	if (a < hull_lo_ || a > hull_hi_)
		return true;
	return compare(CReal(a), lo_, kMembershipPrecision) == Cmp::Less ||
	       compare(CReal(a), hi_, kMembershipPrecision) == Cmp::Greater;
}

BigRational Domain::inner_lo(const BigInt &l) const
{
	if (!bounded_)
		throw DomainError("unbounded domain");
	if (lo_.exact())
		return *lo_.exact();
	return lo_.approx(4 * l) + BigRational(BigInt(1), 2 * l);
}

BigRational Domain::inner_hi(const BigInt &l) const
{
	if (!bounded_)
		throw DomainError("unbounded domain");
	if (hi_.exact())
		return *hi_.exact();
	return hi_.approx(4 * l) - BigRational(BigInt(1), 2 * l);
}

BigRational Domain::clamp(const BigRational &a, const BigInt &l) const
{
	if (!bounded_)
		return a;
	BigRational lo = inner_lo(l), hi = inner_hi(l);
	if (a < lo)
		return lo;
	if (a > hi)
		return hi;
	return a;
}

std::vector<BigRational> Domain::net(const BigInt &l) const
{
	if (!bounded_)
		throw DomainError("net of an unbounded domain");
	BigRational lo = inner_lo(4 * l), hi = inner_hi(4 * l);
	if (hi < lo) {
		// narrower than 1/l: one interior point suffices
		BigRational mid = ((lo_ + hi_) * CReal(BigRational(BigInt(1), BigInt(2)))).approx(64 * l);
		return {mid};
	}
	BigInt n = ceil_pos((hi - lo) * BigRational(l));
	std::uint64_t cells = to_u64(n);
	if (cells > (std::uint64_t(1) << 26))
		throw ResourceError("net with more than 2^26 points requested");
	std::vector<BigRational> pts;
	pts.reserve(cells + 1);
	BigRational step = (hi - lo) / BigRational(n);
	for (std::uint64_t i = 0; i <= cells; ++i)
		pts.push_back(lo + step * BigRational(BigInt(static_cast<unsigned long>(i))));
	return pts;
}

bool Domain::same_as(const Domain &o) const
{
	if (bounded_ != o.bounded_)
		return false;
	if (!bounded_)
		return true;
	auto same = [](const CReal &a, const CReal &b) {
		if (a.exact() && b.exact())
			return *a.exact() == *b.exact();
		return a.id() == b.id();
	};
	return same(lo_, o.lo_) && same(hi_, o.hi_);
}

/* ---- UCFun ---- */

struct UCFun::Impl {
	Domain domain;
	Eval eval;
	Modulus modulus;
	Approx approx;
	std::optional<PolyExp> shape;
};

UCFun::UCFun(Domain domain, Eval eval, Modulus modulus, Approx approx)
{
	auto impl = std::make_shared<Impl>();
	impl->domain = std::move(domain);
	impl->eval = std::move(eval);
	impl->modulus = std::move(modulus);
	impl->approx = std::move(approx);
	impl_ = std::move(impl);
}

UCFun UCFun::from_shape(Domain domain, PolyExp shape, Modulus modulus)
{
	if (domain.bounded()) {
		// mean value theorem: sup |f'| is a Lipschitz constant
		BigRational lip = shape.derivative().abs_bound(domain.hull_lo(), domain.hull_hi());
		Modulus recipe = std::move(modulus);
		modulus = [recipe, lip](const BigInt &k) {
			BigInt a = recipe(k), b = ceil_pos(lip * BigRational(k));
			return a < b ? a : b;
		};
	}
	auto impl = std::make_shared<Impl>();
	impl->domain = std::move(domain);
	impl->shape = std::move(shape);
	const PolyExp *s = &*impl->shape;
	impl->eval = [s](const BigRational &a) { return s->eval(a); };
	impl->approx = [s](const BigRational &a, long bits) { return s->approx(a, bits); };
	impl->modulus = std::move(modulus);
	UCFun f(Domain::line(), nullptr, nullptr);
	f.impl_ = std::move(impl);
	return f;
}

CReal UCFun::operator()(const BigRational &a) const
{
	if (impl_->domain.provably_outside(a))
		throw DomainError("point " + a.str() + " outside the domain");
	return impl_->eval(a);
}

BigRational UCFun::approx_at(const BigRational &a, long bits) const
{
	if (impl_->domain.provably_outside(a))
		throw DomainError("point " + a.str() + " outside the domain");
	if (impl_->approx)
		return impl_->approx(a, bits);
	return impl_->eval(a).approx_bits(bits);
}

BigInt UCFun::modulus(const BigInt &k) const
{
	BigInt l = impl_->modulus(k);
	return l < 1 ? BigInt(1) : l;
}

const Domain &UCFun::domain() const { return impl_->domain; }

const PolyExp *UCFun::shape() const { return impl_->shape ? &*impl_->shape : nullptr; }

BigRational UCFun::sup_bound() const
{
	const Domain &d = impl_->domain;
	if (!d.bounded())
		throw DomainError("sup bound on an unbounded domain");
	if (impl_->shape)
		return impl_->shape->abs_bound(d.hull_lo(), d.hull_hi());
	return bound(*this, BigInt(1));
}

UCFun UCFun::with_modulus(Modulus m) const
{
	auto impl = std::make_shared<Impl>(*impl_);
	impl->modulus = std::move(m);
	if (impl->shape) {
		const PolyExp *s = &*impl->shape;
		impl->eval = [s](const BigRational &a) { return s->eval(a); };
		impl->approx = [s](const BigRational &a, long bits) { return s->approx(a, bits); };
	}
	UCFun f(Domain::line(), nullptr, nullptr);
	f.impl_ = std::move(impl);
	return f;
}

/* ---- UC algebra ---- */

UCFun lin_comb(const CReal &x, const UCFun &f, const CReal &y, const UCFun &g)
{
	if (!f.domain().same_as(g.domain()))
		throw DomainError("lin_comb: domain mismatch");
	BigRational X = x.upper_abs(8), Y = y.upper_abs(8);
	UCFun::Modulus m = [f, g, X, Y](const BigInt &k) -> BigInt {
		BigRational s = X + Y;
		if (s.is_zero())
			return 1;
		BigInt K = ceil_pos(s * BigRational(k));
		return max(f.modulus(K), g.modulus(K));
	};
	if (f.shape() && g.shape())
		return UCFun::from_shape(f.domain(), x * *f.shape() + y * *g.shape(), m);
	return UCFun(
	    f.domain(), [x, f, y, g](const BigRational &a) { return x * f(a) + y * g(a); }, m);
}

UCFun product(const UCFun &f, const UCFun &g)
{
	if (!f.domain().same_as(g.domain()))
		throw DomainError("product: domain mismatch");
	if (!f.domain().bounded())
		throw DomainError("product needs a bounded domain");
	BigRational y = max(f.sup_bound(), g.sup_bound());
	UCFun::Modulus m = [f, g, y](const BigInt &k) -> BigInt {
		BigInt K = ceil_pos(2 * y * BigRational(k));
		return max(f.modulus(K), g.modulus(K));
	};
	if (f.shape() && g.shape())
		return UCFun::from_shape(f.domain(), *f.shape() * *g.shape(), m);
	return UCFun(
	    f.domain(), [f, g](const BigRational &a) { return f(a) * g(a); }, m);
}

UCFun abs_fun(const UCFun &f)
{
	return UCFun(
	    f.domain(), [f](const BigRational &a) { return f(a).abs(); },
	    [f](const BigInt &k) { return f.modulus(k); },
	    [f](const BigRational &a, long bits) { return f.approx_at(a, bits).abs(); });
}

UCFun shift(const UCFun &f, const BigRational &x)
{
	const Domain &d = f.domain();
	Domain nd = d.bounded() ? Domain::interval(d.lo() - CReal(x), d.hi() - CReal(x)) : Domain::line();
	UCFun::Modulus m = [f](const BigInt &k) { return f.modulus(k); };
	if (f.shape())
		return UCFun::from_shape(nd, f.shape()->shifted(x), m);
	return UCFun(
	    nd, [f, x](const BigRational &a) { return f(a + x); }, m,
	    [f, x](const BigRational &a, long bits) { return f.approx_at(a + x, bits); });
}

UCFun shift(const UCFun &f, const CReal &x)
{
	if (x.exact())
		return shift(f, *x.exact());
	const Domain &d = f.domain();
	Domain nd = d.bounded() ? Domain::interval(d.lo() - x, d.hi() - x) : Domain::line();
	return UCFun(
	    nd, [f, x](const BigRational &a) { return eval_at_real(f, CReal(a) + x); },
	    [f](const BigInt &k) { return f.modulus(k); });
}

UCFun compose(const UCFun &f, const UCFun &g)
{
	return UCFun(
	    g.domain(), [f, g](const BigRational &a) { return eval_at_real(f, g(a)); },
	    [f, g](const BigInt &k) { return g.modulus(2 * f.modulus(k)); });
}

UCFun restrict(const UCFun &f, const Domain &sub)
{
	UCFun::Modulus m = [f](const BigInt &k) { return f.modulus(k); };
	if (f.shape())
		return UCFun::from_shape(sub, *f.shape(), m);
	return UCFun(
	    sub, [f](const BigRational &a) { return f(a); }, m,
	    [f](const BigRational &a, long bits) { return f.approx_at(a, bits); });
}

/* ---- UDiffFun constructors ---- */

namespace {

UCFun::Modulus lipschitz(const BigRational &L)
{
	return [L](const BigInt &k) { return ceil_pos(L * BigRational(k)); };
}

// Taylor: |delta| <= sup|f''| |b - a| / 2
void tighten_ud(UDiffFun &u)
{
	if (!u.f.shape() || !u.f.domain().bounded())
		return;
	const Domain &d = u.f.domain();
	BigRational y2 = u.f.shape()->derivative().derivative().abs_bound(d.hull_lo(), d.hull_hi());
	auto recipe = u.ud_modulus;
	u.ud_modulus = [recipe, y2](const BigInt &k) {
		BigInt a = recipe(k), b = ceil_pos(y2 * BigRational(k) / BigRational(2));
		return a < b ? a : b;
	};
}

} // namespace

UDiffFun poly(const std::vector<CReal> &coeffs, const Domain &domain)
{
	std::vector<CReal> c = coeffs;
	while (c.size() > 1 && c.back().exact() && c.back().exact()->is_zero())
		c.pop_back();
	if (c.empty())
		c.push_back(CReal());
	std::size_t deg = c.size() - 1;
	if (!domain.bounded() && deg >= 2)
		throw DomainError("polynomial of degree >= 2 needs a bounded domain");
	BigRational M = domain.bounded() ? domain.abs_bound() : BigRational(0);
	BigRational L1, L2;
	for (std::size_t i = 1; i <= deg; ++i) {
		BigRational Y = c[i].upper_abs(8);
		L1 += BigRational(static_cast<long>(i)) * Y * pow(M, i - 1);
		if (i >= 2)
			L2 += BigRational(static_cast<long>(i * (i - 1))) * Y * pow(M, i - 2);
	}
	std::vector<CReal> d;
	for (std::size_t i = 1; i <= deg; ++i)
		d.push_back(BigRational(static_cast<long>(i)) * c[i]);
	if (d.empty())
		d.push_back(CReal());
	UDiffFun u{UCFun::from_shape(domain, PolyExp::polynomial(c), lipschitz(L1)),
	           UCFun::from_shape(domain, PolyExp::polynomial(d), lipschitz(L2)),
	           lipschitz(L2 / BigRational(2))};
	return u;
}

UDiffFun exp_scaled(const BigRational &c, const Domain &domain)
{
	if (!domain.bounded())
		throw DomainError("exp_scaled needs a bounded domain");
	if (c.is_zero())
		return poly({CReal(BigRational(1))}, domain);
	BigRational ac = c.abs();
	BigRational E = exp(ac * domain.abs_bound()).upper_abs(8);
	BigInt floor_l = ceil_pos(2 * ac);
	// |c (a - b)| <= 1/2 is needed by both estimates
	UCFun::Modulus uc = [ac, E, floor_l](const BigInt &k) {
		return max(ceil_pos(2 * ac * E * BigRational(k)), floor_l);
	};
	UCFun::Modulus duc = [uc, ac](const BigInt &k) { return uc(ceil_pos(ac * BigRational(k))); };
	UCFun::Modulus ud = [ac, E, floor_l](const BigInt &k) {
		return max(ceil_pos(ac * ac * E * BigRational(k)), floor_l);
	};
	PolyExp e = PolyExp::exponential(c);
	UDiffFun u{UCFun::from_shape(domain, e, uc), UCFun::from_shape(domain, CReal(c) * e, duc), ud};
	tighten_ud(u);
	return u;
}

UDiffFun lin_comb(const CReal &x, const UDiffFun &f, const CReal &y, const UDiffFun &g)
{
	if (!f.domain().same_as(g.domain()))
		throw DomainError("lin_comb: domain mismatch");
	BigRational X = x.upper_abs(8), Y = y.upper_abs(8);
	auto fu = f.ud_modulus, gu = g.ud_modulus;
	UDiffFun u{lin_comb(x, f.f, y, g.f), lin_comb(x, f.deriv, y, g.deriv),
	           [fu, gu, X, Y](const BigInt &k) -> BigInt {
		           BigRational s = X + Y;
		           if (s.is_zero())
			           return 1;
		           BigInt K = ceil_pos(s * BigRational(k));
		           return max(fu(K), gu(K));
	           }};
	tighten_ud(u);
	return u;
}

UDiffFun product(const UDiffFun &f, const UDiffFun &g)
{
	if (!f.domain().same_as(g.domain()))
		throw DomainError("product: domain mismatch");
	if (!f.domain().bounded())
		throw DomainError("product needs a bounded domain");
	BigRational y = max(max(f.f.sup_bound(), g.f.sup_bound()), max(f.deriv.sup_bound(), g.deriv.sup_bound()));
	UCFun one_f = f.f, one_g = g.f;
	auto fu = f.ud_modulus, gu = g.ud_modulus;
	CReal one(BigRational(1));
	UDiffFun u{product(f.f, g.f), lin_comb(one, product(f.deriv, g.f), one, product(f.f, g.deriv)),
	           [fu, gu, one_f, one_g, y](const BigInt &k) {
		           BigInt K = ceil_pos(3 * y * BigRational(k));
		           return max(max(fu(K), gu(K)), max(one_f.modulus(K), one_g.modulus(K)));
	           }};
	tighten_ud(u);
	return u;
}

UDiffFun polyexp(const CReal &y, unsigned n, const BigRational &c, const Domain &domain)
{
	UDiffFun e = exp_scaled(c, domain);
	if (n == 0)
		return lin_comb(y, e, CReal(), e);
	std::vector<CReal> coeffs(n + 1);
	coeffs[n] = y;
	return product(poly(coeffs, domain), e);
}

/* ---- analysis ---- */

BigRational bound(const UCFun &f, const BigInt &k)
{
	if (!f.domain().bounded())
		throw DomainError("bound needs a bounded domain");
	auto pts = f.domain().net(f.modulus(k));
	long b = ceil_log2(BigInt(2 * k));
	BigRational best;
	for (auto &p : pts)
		best = max(best, f.approx_at(p, b).abs() + pow2(-b));
	return best + recip(k);
}

CReal eval_at_real(const UCFun &f, const CReal &x)
{
	if (x.exact())
		return f(*x.exact());
	const Domain &d = f.domain();
	if (d.bounded() && (compare(x, d.lo(), BigInt(1) << 32) == Cmp::Less ||
	                    compare(x, d.hi(), BigInt(1) << 32) == Cmp::Greater))
		throw DomainError("eval_at_real: point outside the domain");
	return CReal::from_bits([f, x](long n) {
		BigInt l = f.modulus(BigInt(1) << static_cast<mp_bitcnt_t>(std::max(n + 1, 0L)));
		BigRational a = f.domain().clamp(x.approx(2 * l), 4 * l);
		return f.approx_at(a, n + 1);
	});
}

BigRational approx_zero(const UCFun &f, const BigInt &k)
{
	const Domain &d = f.domain();
	if (!d.bounded())
		throw DomainError("approx_zero needs a bounded domain");
	BigInt k8 = 8 * k;
	long b = ceil_log2(k8);
	BigRational e = pow2(-b), small = BigRational(7) / BigRational(k8);
	BigInt l = f.modulus(2 * k);
	BigRational lo = d.inner_lo(8 * l), hi = d.inner_hi(8 * l);
	BigRational qlo = f.approx_at(lo, b), qhi = f.approx_at(hi, b);
	if (qlo.abs() <= small)
		return lo;
	if (qhi.abs() <= small)
		return hi;
	if (qlo.sign() == qhi.sign())
		throw PreconditionError("approx_zero: no sign change detectable at the endpoints");
	int sigma = qlo.sign() < 0 ? 1 : -1;
	// invariant: sigma*q(lo) <= 0 < sigma*q(hi)
	BigRational width = recip(l);
	while (hi - lo > width) {
		BigRational mid = (lo + hi) / BigRational(2);
		BigRational q = f.approx_at(mid, b);
		if (sigma * q.sign() <= 0)
			lo = mid;
		else
			hi = mid;
	}
	BigRational q = f.approx_at(hi, b);
	if (q.abs() + e > recip(k))
		throw ContractViolation("approx_zero: result failed verification");
	return hi;
}

BigRational approx_extremum(const UCFun &f, const BigInt &k, Extremum which)
{
	if (!f.domain().bounded())
		throw DomainError("approx_extremum needs a bounded domain");
	auto pts = f.domain().net(f.modulus(3 * k));
	long b = ceil_log2(BigInt(6 * k));
	std::optional<BigRational> best_q;
	BigRational best_a;
	for (auto &p : pts) {
		BigRational q = f.approx_at(p, b);
		bool better = !best_q || (which == Extremum::Max ? q > *best_q : q < *best_q);
		if (better) {
			best_q = q;
			best_a = p;
		}
	}
	return best_a;
}

EscapePair escape_extreme(const UDiffFun &f, const CReal &x, const SeparationWitness &s,
                          unsigned max_doublings)
{
	const Domain &dom = f.domain();
	if (!dom.bounded())
		throw DomainError("escape_extreme needs a bounded domain");
	CReal d = eval_at_real(f.deriv, x);
	if (!witness_valid(d, s))
		throw ContractViolation("escape_extreme: witness does not separate f'(x) from 0");
	int sigma = d.approx(2 * s.k).sign();
	BigRational D = recip(s.k);

	auto gap = [](const CReal &g) {
		for (long n = 4; n <= 4096; n *= 2) {
			BigRational q = g.approx_bits(n) - pow2(-n);
			if (q.sign() > 0)
				return q;
		}
		throw PreconditionError("escape_extreme: x is not certifiably interior");
	};
	BigRational gl = gap(x - dom.lo()), gr = gap(dom.hi() - x);

	BigInt l = f.ud_modulus(3 * s.k);
	l = max(l, max(ceil_pos(BigRational(3) / gl), ceil_pos(BigRational(3) / gr)));
	BigInt ld = f.deriv.modulus(2 * s.k);
	BigInt lf = f.f.modulus(24 * l * s.k);
	BigRational delta = min(min(recip(2 * ld), recip(2 * lf)), min(gl, gr) / BigRational(3));

	BigRational xq = x.approx(ceil_pos(BigRational(4) / delta));
	BigRational step = BigRational(3) / BigRational(4 * l);
	BigRational ar = xq + delta / BigRational(2), al = xq - delta / BigRational(2);
	BigRational br = ar + step, bl = al - step;

	EscapePair out;
	out.l = l;
	if (sigma > 0) {
		out.lower = bl;
		out.upper = br;
	} else {
		out.lower = br;
		out.upper = bl;
	}
	CReal fx = eval_at_real(f.f, x);
	BigInt K = 48 * l * s.k;
	for (unsigned i = 0; i <= max_doublings; ++i, K *= 2) {
		if (compare(f.f(out.lower), fx, K) == Cmp::Less && compare(f.f(out.upper), fx, K) == Cmp::Greater) {
			out.precision = K;
			return out;
		}
	}
	throw PrecisionExhausted("escape_extreme: margin D/(24l) with D = 1/" + s.k.get_str() + ", l = " +
	                         l.get_str() + " not certified up to precision " + K.get_str());
}

} // namespace hmc
