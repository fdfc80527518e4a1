/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/fps.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace hmc {

struct ConvFPS::Impl {
	Coeff coeff;
	RationalCoeff rational;
	GrowthFn growth;
	std::optional<std::uint64_t> degree;
	std::mutex mu;
	std::unordered_map<std::uint64_t, CReal> reals;
	std::unordered_map<std::uint64_t, BigRational> rats;
};

namespace {

BigRational recip(const BigInt &l) { return BigRational(BigInt(1), l); }

BigInt ceil_pos(const BigRational &x)
{
	BigInt c = x.ceil();
	return c < 1 ? BigInt(1) : c;
}

BigInt big(std::uint64_t n) { return BigInt(std::to_string(n)); }

std::optional<std::uint64_t> max_degree(const ConvFPS &f, const ConvFPS &g)
{
	if (!f.degree() || !g.degree())
		return std::nullopt;
	return std::max(*f.degree(), *g.degree());
}

AlgebraCheck check_residual(std::string name, const CReal &residual, const BigRational &tol)
{
	BigInt K = ceil_pos(4 / tol);
	AlgebraCheck c;
	c.name = std::move(name);
	c.residual_bound = residual.approx(K).abs() + recip(K);
	c.tolerance = tol;
	c.ok = c.residual_bound <= tol;
	return c;
}

} // namespace

ConvFPS::ConvFPS(Coeff coeff, GrowthFn growth, std::optional<std::uint64_t> degree)
    : impl_(std::make_shared<Impl>())
{
	impl_->coeff = std::move(coeff);
	impl_->growth = std::move(growth);
	impl_->degree = degree;
}

ConvFPS ConvFPS::rational(RationalCoeff coeff, GrowthFn growth, std::optional<std::uint64_t> degree)
{
	ConvFPS f(nullptr, std::move(growth), degree);
	f.impl_->rational = std::move(coeff);
	return f;
}

ConvFPS ConvFPS::zero()
{
	return polynomial(std::vector<BigRational>{});
}

ConvFPS ConvFPS::one()
{
	return polynomial(std::vector<BigRational>{BigRational(1)});
}

ConvFPS ConvFPS::polynomial(const std::vector<BigRational> &coeffs)
{
	std::uint64_t d = coeffs.empty() ? 0 : coeffs.size() - 1;
	return rational(
	    [coeffs](std::uint64_t n) { return n < coeffs.size() ? coeffs[n] : BigRational(0); },
	    [coeffs](const BigRational &y) {
		    // |c_n| y^n = |c_n| (2y)^n 2^-n
		    BigRational C, t(1);
		    for (const auto &c : coeffs) {
			    C = max(C, c.abs() * t);
			    t *= 2 * y;
		    }
		    return Growth{C, BigRational(BigInt(1), BigInt(2))};
	    },
	    d);
}

ConvFPS ConvFPS::polynomial(std::vector<CReal> coeffs)
{
	bool exact = true;
	for (const auto &c : coeffs)
		exact = exact && c.exact();
	if (exact) {
		std::vector<BigRational> q;
		for (const auto &c : coeffs)
			q.push_back(*c.exact());
		return polynomial(q);
	}
	std::vector<BigRational> mags;
	for (const auto &c : coeffs)
		mags.push_back(c.upper_abs(8));
	std::uint64_t d = coeffs.empty() ? 0 : coeffs.size() - 1;
	return ConvFPS(
	    [coeffs](std::uint64_t n) { return n < coeffs.size() ? coeffs[n] : CReal(); },
	    [mags](const BigRational &y) {
		    BigRational C, t(1);
		    for (const auto &c : mags) {
			    C = max(C, c * t);
			    t *= 2 * y;
		    }
		    return Growth{C, BigRational(BigInt(1), BigInt(2))};
	    },
	    d);
}

ConvFPS ConvFPS::exp()
{
	return rational([](std::uint64_t n) { return BigRational(BigInt(1), factorial(n)); },
	                [](const BigRational &y) {
		                // y^n/n! = (2y)^n/n! 2^-n, maximal at n = floor(2y)
		                BigRational t = 2 * y;
		                unsigned long m = t.floor().get_ui();
		                return Growth{pow(t, m) / BigRational(factorial(m)), BigRational(BigInt(1), BigInt(2))};
	                });
}

CReal ConvFPS::coeff(std::uint64_t n) const
{
	if (impl_->rational)
		return CReal(rational_coeff(n));
	{
		std::lock_guard lock(impl_->mu);
		auto it = impl_->reals.find(n);
		if (it != impl_->reals.end())
			return it->second;
	}
	CReal x = impl_->degree && n > *impl_->degree ? CReal() : impl_->coeff(n);
	std::lock_guard lock(impl_->mu);
	return impl_->reals.emplace(n, std::move(x)).first->second;
}

bool ConvFPS::is_rational() const { return static_cast<bool>(impl_->rational); }

BigRational ConvFPS::rational_coeff(std::uint64_t n) const
{
	if (!impl_->rational)
		throw PreconditionError("series has non-rational coefficients");
	{
		std::lock_guard lock(impl_->mu);
		auto it = impl_->rats.find(n);
		if (it != impl_->rats.end())
			return it->second;
	}
	BigRational q = impl_->degree && n > *impl_->degree ? BigRational(0) : impl_->rational(n);
	std::lock_guard lock(impl_->mu);
	return impl_->rats.emplace(n, std::move(q)).first->second;
}

Growth ConvFPS::growth(const BigRational &y) const
{
	if (y.sign() <= 0)
		throw PreconditionError("growth radius must be positive");
	return impl_->growth(y);
}

std::optional<std::uint64_t> ConvFPS::degree() const { return impl_->degree; }

std::uint64_t geometric_tail_index(const BigRational &C, const BigRational &r, const BigInt &k)
{
	if (C.is_zero())
		return 0;
	if (r.sign() <= 0 || r >= BigRational(1))
		throw PreconditionError("growth ratio must lie in (0, 1)");
	BigRational target = (1 - r) / (BigRational(k) * C);
	// start below the answer using log2 estimates, then step exactly
	long need = -ceil_log2(target);
	double lr = -std::log2(r.to_double());
	std::uint64_t N = 0;
	if (need > 2 && lr > 0) {
		double est = static_cast<double>(need - 2) / (lr * 1.0001) - 2;
		if (est > 0)
			N = static_cast<std::uint64_t>(est);
	}
	BigRational p = pow(r, N + 1);
	while (p > target) {
		p *= r;
		++N;
	}
	return N;
}

ConvSeries ConvFPS::at(const CReal &a) const
{
	ConvFPS self = *this;
	BigRational A = max(a.upper_abs(8), BigRational(1));
	Growth G = growth(A);
	auto deg = impl_->degree;
	auto tail = [G, deg](const BigInt &k) {
		std::uint64_t N = geometric_tail_index(G.C, G.r, k);
		return deg ? std::min(N, *deg) : N;
	};
	if (is_rational() && a.exact()) {
		BigRational q = *a.exact();
		return ConvSeries::rational(
		    [self, q](std::uint64_t n) { return self.rational_coeff(n) * pow(q, n); }, tail);
	}
	return ConvSeries([self, a](std::uint64_t n) { return self.coeff(n) * pow(a, n); }, tail);
}

CReal ConvFPS::eval(const CReal &a) const { return sum(at(a)); }

ConvFPS lin_comb(const CReal &z, const ConvFPS &f, const CReal &w, const ConvFPS &g)
{
	BigRational Z = z.upper_abs(8), W = w.upper_abs(8);
	auto growth = [f, g, Z, W](const BigRational &y) {
		Growth a = f.growth(y), b = g.growth(y);
		return Growth{Z * a.C + W * b.C, max(a.r, b.r)};
	};
	auto deg = max_degree(f, g);
	if (f.is_rational() && g.is_rational() && z.exact() && w.exact()) {
		BigRational zq = *z.exact(), wq = *w.exact();
		return ConvFPS::rational(
		    [f, g, zq, wq](std::uint64_t n) { return zq * f.rational_coeff(n) + wq * g.rational_coeff(n); },
		    growth, deg);
	}
	return ConvFPS([f, g, z, w](std::uint64_t n) { return z * f.coeff(n) + w * g.coeff(n); }, growth, deg);
}

ConvFPS cauchy_product(const ConvFPS &f, const ConvFPS &g)
{
	auto growth = [f, g](const BigRational &y) {
		Growth a = f.growth(y), b = g.growth(y);
		// (n+1) r^n <= s^n / (1 - r/s)^2 with s = (1+r)/2
		BigRational r = max(a.r, b.r);
		BigRational s = (1 + r) / 2;
		BigRational t = 1 - r / s;
		return Growth{a.C * b.C / (t * t), s};
	};
	std::optional<std::uint64_t> deg;
	if (f.degree() && g.degree())
		deg = *f.degree() + *g.degree();
	auto range = [f, g](std::uint64_t n) {
		std::uint64_t lo = 0, hi = n;
		if (g.degree() && n > *g.degree())
			lo = n - *g.degree();
		if (f.degree())
			hi = std::min(hi, *f.degree());
		return std::pair{lo, hi};
	};
	if (f.is_rational() && g.is_rational())
		return ConvFPS::rational(
		    [f, g, range](std::uint64_t n) {
			    auto [lo, hi] = range(n);
			    BigRational z;
			    for (std::uint64_t i = lo; i <= hi; ++i)
				    z += f.rational_coeff(i) * g.rational_coeff(n - i);
			    return z;
		    },
		    growth, deg);
	return ConvFPS(
	    [f, g, range](std::uint64_t n) {
		    auto [lo, hi] = range(n);
		    CReal z;
		    for (std::uint64_t i = lo; i <= hi; ++i)
			    z += f.coeff(i) * g.coeff(n - i);
		    return z;
	    },
	    growth, deg);
}

ConvFPS scale_arg(const ConvFPS &f, const CReal &x)
{
	BigRational X = x.upper_abs(8);
	auto growth = [f, X](const BigRational &y) {
		BigRational yy = X * y;
		return f.growth(yy.sign() > 0 ? yy : y);
	};
	if (f.is_rational() && x.exact()) {
		BigRational q = *x.exact();
		return ConvFPS::rational([f, q](std::uint64_t n) { return f.rational_coeff(n) * pow(q, n); }, growth,
		                         f.degree());
	}
	return ConvFPS([f, x](std::uint64_t n) { return f.coeff(n) * pow(x, n); }, growth, f.degree());
}

ConvFPS formal_derivative(const ConvFPS &f)
{
	auto growth = [f](const BigRational &y) {
		Growth a = f.growth(2 * y);
		return Growth{a.C * a.r / y, a.r};
	};
	std::optional<std::uint64_t> deg;
	if (f.degree())
		deg = *f.degree() == 0 ? 0 : *f.degree() - 1;
	if (f.is_rational())
		return ConvFPS::rational(
		    [f](std::uint64_t n) { return BigRational(big(n + 1)) * f.rational_coeff(n + 1); }, growth, deg);
	return ConvFPS([f](std::uint64_t n) { return BigRational(big(n + 1)) * f.coeff(n + 1); }, growth, deg);
}

ConvFPS formal_primitive(const ConvFPS &f)
{
	auto growth = [f](const BigRational &y) {
		Growth a = f.growth(y);
		return Growth{y * a.C / a.r, a.r};
	};
	std::optional<std::uint64_t> deg;
	if (f.degree())
		deg = *f.degree() + 1;
	if (f.is_rational())
		return ConvFPS::rational(
		    [f](std::uint64_t n) {
			    return n == 0 ? BigRational(0) : f.rational_coeff(n - 1) / BigRational(big(n));
		    },
		    growth, deg);
	return ConvFPS(
	    [f](std::uint64_t n) {
		    return n == 0 ? CReal() : BigRational(BigInt(1), big(n)) * f.coeff(n - 1);
	    },
	    growth, deg);
}

ConvFPS quasi_shift(const ConvFPS &f, const CReal &x)
{
	BigRational X = x.upper_abs(8);
	auto growth = [f, X](const BigRational &y) {
		// C(m,n) X^(m-n) y^n <= (X+y)^m; growth at 2(X+y) leaves (r/2)^m summed from n
		Growth a = f.growth(2 * (X + y));
		return Growth{2 * a.C, a.r / 2};
	};
	auto deg = f.degree();
	if (deg) {
		std::uint64_t d = *deg;
		if (f.is_rational() && x.exact()) {
			BigRational q = *x.exact();
			return ConvFPS::rational(
			    [f, q, d](std::uint64_t n) {
				    BigRational z;
				    for (std::uint64_t m = n; m <= d; ++m)
					    z += BigRational(binomial(m, n)) * f.rational_coeff(m) * pow(q, m - n);
				    return z;
			    },
			    growth, deg);
		}
		return ConvFPS(
		    [f, x, d](std::uint64_t n) {
			    CReal z;
			    for (std::uint64_t m = n; m <= d; ++m)
				    z += BigRational(binomial(m, n)) * (f.coeff(m) * pow(x, m - n));
			    return z;
		    },
		    growth, deg);
	}
	// inner tails: C(m,n) |x_m| X^(m-n) <= |x_m| (2 max(X,1))^m <= C r^m
	Growth inner = f.growth(2 * max(X, BigRational(1)));
	auto tail_from = [inner](std::uint64_t n) {
		return [inner, n](const BigInt &k) -> std::uint64_t {
			std::uint64_t M = geometric_tail_index(inner.C, inner.r, k);
			return M > n ? M - n : 0;
		};
	};
	if (f.is_rational() && x.exact()) {
		BigRational q = *x.exact();
		return ConvFPS(
		    [f, q, tail_from](std::uint64_t n) {
			    return sum(ConvSeries::rational(
			        [f, q, n](std::uint64_t j) {
				        return BigRational(binomial(n + j, n)) * f.rational_coeff(n + j) * pow(q, j);
			        },
			        tail_from(n)));
		    },
		    growth);
	}
	return ConvFPS(
	    [f, x, tail_from](std::uint64_t n) {
		    return sum(ConvSeries(
		        [f, x, n](std::uint64_t j) {
			        return BigRational(binomial(n + j, n)) * (f.coeff(n + j) * pow(x, j));
		        },
		        tail_from(n)));
	    },
	    growth);
}

std::optional<std::uint64_t> order(const ConvFPS &f, std::uint64_t limit)
{
	for (std::uint64_t n = 0; n < limit; ++n) {
		if (f.is_rational()) {
			if (!f.rational_coeff(n).is_zero())
				return n;
			continue;
		}
		CReal c = f.coeff(n);
		if (!c.exact())
			throw PreconditionError("order needs exactly known coefficients");
		if (!c.exact()->is_zero())
			return n;
	}
	return std::nullopt;
}

CReal newton_integral(const ConvFPS &f, const CReal &u, const CReal &v)
{
	ConvFPS P = formal_primitive(f);
	return P.eval(v) - P.eval(u);
}

ConvFPS polyexp_fps(const std::vector<CReal> &p)
{
	return cauchy_product(ConvFPS::polynomial(p), scale_arg(ConvFPS::exp(), CReal(BigRational(-1))));
}

NewtonImproper newton_improper_polyexp_detail(const std::vector<CReal> &p, std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("newton_improper_polyexp needs k >= 1");
	// primitive is Q(0) - Q(Y) e^-Y with Q = sum_l p^(l); |Q(Y)| <= W max_l Y^l
	BigRational W;
	unsigned deg = 0;
	for (std::size_t j = 0; j < p.size(); ++j) {
		if (p[j].exact() && p[j].exact()->is_zero())
			continue;
		deg = static_cast<unsigned>(j);
		BigRational s;
		for (std::size_t l = 0; l <= j; ++l)
			s += BigRational(factorial(j), factorial(l));
		W += p[j].upper_abs(8) * s;
	}
	NewtonImproper out;
	if (W.is_zero()) {
		out.value = CReal();
		out.cutoff = 0;
		return out;
	}
	BigInt K = ceil_pos(2 * BigRational(big(k)) * W);
	BigInt Y(1);
	for (unsigned l = 0; l <= deg; ++l)
		Y = max(Y, exp_dominance_bound(l, K));
	out.cutoff = Y;
	out.value = newton_integral(polyexp_fps(p), CReal(BigRational(0)), CReal(BigRational(Y)));
	return out;
}

CReal newton_improper_polyexp(const std::vector<CReal> &p, std::uint64_t k)
{
	return newton_improper_polyexp_detail(p, k).value;
}

BigRational fake_lm_bound(unsigned i, unsigned k)
{
	return pow(BigRational(static_cast<long>(i)), k + 1) * pow(BigRational(BigInt(27183), BigInt(10000)), i);
}

AlgebraReport verify_shift_algebra(const ConvFPS &f, const ConvFPS &g, const CReal &x, const CReal &y,
                                   std::uint64_t N, const BigRational &tol)
{
	AlgebraReport rep;
	ConvFPS twice = quasi_shift(quasi_shift(f, x), y);
	ConvFPS once = quasi_shift(f, x + y);
	ConvFPS prod_shift = quasi_shift(cauchy_product(f, g), x);
	ConvFPS shift_prod = cauchy_product(quasi_shift(f, x), quasi_shift(g, x));

	AlgebraCheck repeated{"repeated_shift", BigRational(0), tol, true};
	AlgebraCheck product{"product_shift", BigRational(0), tol, true};
	for (std::uint64_t n = 0; n <= N; ++n) {
		AlgebraCheck a = check_residual("", twice.coeff(n) - once.coeff(n), tol);
		repeated.residual_bound = max(repeated.residual_bound, a.residual_bound);
		repeated.ok = repeated.ok && a.ok;
		AlgebraCheck b = check_residual("", prod_shift.coeff(n) - shift_prod.coeff(n), tol);
		product.residual_bound = max(product.residual_bound, b.residual_bound);
		product.ok = product.ok && b.ok;
	}
	rep.checks.push_back(repeated);
	rep.checks.push_back(product);
	return rep;
}

AlgebraReport verify_newton_algebra(const ConvFPS &f, const ConvFPS &g, const CReal &u, const CReal &v,
                                    const CReal &w, const CReal &x, const CReal &y, const CReal &shift,
                                    std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("verify_newton_algebra needs k >= 1");
	BigRational tol(BigInt(3), big(k));
	AlgebraReport rep;
	CReal If = newton_integral(f, u, v);
	CReal Ig = newton_integral(g, u, v);
	CReal Ilin = newton_integral(lin_comb(x, f, y, g), u, v);
	rep.checks.push_back(check_residual("linearity", Ilin - (x * If + y * Ig), tol));

	CReal Iuw = newton_integral(f, u, w);
	CReal Ivw = newton_integral(f, v, w);
	rep.checks.push_back(check_residual("additivity", Iuw - (If + Ivw), tol));

	CReal Ishift = newton_integral(quasi_shift(f, shift), u, v);
	CReal Imoved = newton_integral(f, u + shift, v + shift);
	rep.checks.push_back(check_residual("shift", Ishift - Imoved, tol));
	return rep;
}

AlgebraReport verify_newton_improper_algebra(const std::vector<CReal> &p, const std::vector<CReal> &q,
                                             const CReal &x, const CReal &y, const BigRational &v,
                                             const BigRational &i, std::uint64_t k)
{
	if (k == 0)
		throw PreconditionError("verify_newton_improper_algebra needs k >= 1");
	if (v.sign() < 0 || i.sign() < 0)
		throw PreconditionError("split point and shift must be nonnegative");
	BigRational tol(BigInt(3), big(k));
	AlgebraReport rep;
	BigRational X = x.upper_abs(8), Y = y.upper_abs(8);
	std::uint64_t K = to_u64(ceil_pos(4 * (1 + X + Y) * BigRational(big(k))));

	std::size_t n = std::max(p.size(), q.size());
	std::vector<CReal> r(n);
	for (std::size_t j = 0; j < n; ++j) {
		CReal pj = j < p.size() ? p[j] : CReal(), qj = j < q.size() ? q[j] : CReal();
		r[j] = x * pj + y * qj;
	}
	CReal Ip = newton_improper_polyexp(p, K);
	CReal Iq = newton_improper_polyexp(q, K);
	CReal Ir = newton_improper_polyexp(r, K);
	rep.checks.push_back(check_residual("improper_linearity", Ir - (x * Ip + y * Iq), tol));

	// int_0^inf = int_0^v + e^-v int_0^inf p(a + v) Exp(-a)
	std::uint64_t K4 = 4 * k;
	CReal head = newton_integral(polyexp_fps(p), CReal(BigRational(0)), CReal(v));
	ConvFPS pv = quasi_shift(ConvFPS::polynomial(p), CReal(v));
	std::vector<CReal> shifted;
	for (std::size_t j = 0; j < p.size(); ++j)
		shifted.push_back(pv.coeff(j));
	CReal tail = exp(-v) * newton_improper_polyexp(shifted, K4);
	CReal whole = newton_improper_polyexp(p, K4);
	rep.checks.push_back(check_residual("improper_split", whole - (head + tail), tol));

	ConvFPS pi = quasi_shift(ConvFPS::polynomial(p), CReal(i));
	std::vector<CReal> moved;
	for (std::size_t j = 0; j < p.size(); ++j)
		moved.push_back(pi.coeff(j));
	CReal newton = newton_improper_polyexp(moved, 2 * k);
	CReal expansion = factorial_moment(shift_coefficients(p, i));
	rep.checks.push_back(check_residual("improper_shift", newton - expansion, tol));
	return rep;
}

std::string dump(const ConvFPS &f, std::uint64_t count, unsigned digits)
{
	std::ostringstream os;
	for (std::uint64_t n = 0; n < count; ++n) {
		os << n << ' ';
		if (f.is_rational()) {
			BigRational q = f.rational_coeff(n);
			os << q.num().get_str() << ' ' << q.den().get_str();
		} else {
			os << render(f.coeff(n), digits);
		}
		os << '\n';
	}
	return os.str();
}

} // namespace hmc
