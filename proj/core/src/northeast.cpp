/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/northeast.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace hmc {

namespace {

BigInt fusc(const BigInt &n)
{
	BigInt a(1), b(0), m = n;
	while (m > 0) {
		if (mpz_odd_p(m.get_mpz_t()))
			b += a;
		else
			a += b;
		m >>= 1;
	}
	return b;
}

/* largest 2^-t with 2^-t <= 1/n and 2^-t < mu */
BigRational c_rule(unsigned n, const QSqrt2 &mu)
{
	BigRational c(1);
	while (c > BigRational(BigInt(1), BigInt(n)))
		c /= 2;
	while (!(QSqrt2(c) < mu))
		c /= 2;
	return c;
}

std::vector<Segment> initial_segments()
{
	QSqrt2 r = QSqrt2::inv_sqrt2();
	Segment s1{QSqrt2(0), r, QSqrt2(0), QSqrt2(0), true};
	Segment s2{r, QSqrt2(1), -r, QSqrt2(1), false};
	BigRational a1 = enumerate_q01(1);
	if (s2.contains(a1))
		s2.blue_from = (s2.left + QSqrt2(a1)) / BigRational(2);
	return {s1, s2};
}

void check_unit(const BigRational &a)
{
	if (a.sign() < 0 || a > BigRational(1))
		throw DomainError("point " + a.str() + " outside [0,1]");
}

} // namespace

BigRational enumerate_q01(std::uint64_t j)
{
	if (j == 0)
		throw PreconditionError("enumeration starts at 1");
	if (j == 1)
		return BigRational(0);
	if (j == 2)
		return BigRational(1);
	BigInt i(std::to_string(j - 2));
	BigInt p = fusc(i), q = fusc(i + 1);
	return BigRational(p, p + q);
}

BigInt index_q01(const BigRational &a, unsigned long max_bits)
{
	check_unit(a);
	if (a.is_zero())
		return BigInt(1);
	if (a == BigRational(1))
		return BigInt(2);
	BigInt p = a.num(), q = a.den() - a.num();
	// walk from x = p/q up to the root 1/1, collecting path bits from the bottom
	BigInt bits(0);
	unsigned long len = 0;
	while (!(p == 1 && q == 1)) {
		if (p < q) {
			BigInt t = (q - 1) / p;
			if (len + t > max_bits)
				throw ResourceError("enumeration index exceeds 2^" + std::to_string(max_bits));
			q -= t * p;
			len += t.get_ui();
		} else {
			BigInt t = (p - 1) / q;
			if (len + t > max_bits)
				throw ResourceError("enumeration index exceeds 2^" + std::to_string(max_bits));
			unsigned long tt = t.get_ui();
			bits += ((BigInt(1) << tt) - 1) << len;
			p -= t * q;
			len += tt;
		}
	}
	BigInt index = (BigInt(1) << len) + bits;
	return index + 2;
}

bool Segment::contains(const BigRational &a) const
{
	QSqrt2 x(a);
	return left <= x && x <= right;
}

bool Segment::blue_at(const BigRational &a) const
{
	return contains(a) && (first || QSqrt2(a) > blue_from);
}

const Segment &StageFunction::segment_of(const BigRational &a) const
{
	check_unit(a);
	auto it = std::lower_bound(segments.begin(), segments.end(), QSqrt2(a),
	                           [](const Segment &s, const QSqrt2 &x) { return s.right < x; });
	if (it == segments.end() || !it->contains(a))
		throw ContractViolation("stage segments do not cover " + a.str());
	return *it;
}

std::string StageFunction::dump() const
{
	std::ostringstream os;
	for (std::size_t i = 0; i < segments.size(); ++i) {
		const Segment &s = segments[i];
		os << i + 1 << ' ' << s.left.str() << " | " << s.right.str() << " | " << s.offset.str() << " | "
		   << s.blue_from.str() << '\n';
	}
	return os.str();
}

QSqrt2 stage_jump(unsigned n)
{
	if (n < 1)
		throw PreconditionError("stages start at 1");
	return QSqrt2(BigRational(0), pow2(-static_cast<long>(n)));
}

StageFunction build_stage(unsigned n, unsigned max_n)
{
	if (n < 1)
		throw PreconditionError("stages start at 1");
	if (n > max_n)
		throw ResourceError("stage " + std::to_string(n) + " has too many segments to list");
	auto least_uncolored = [](const std::vector<Segment> &segs) {
		QSqrt2 mu = segs[1].uncolored_length();
		for (std::size_t i = 2; i < segs.size(); ++i)
			mu = min(mu, segs[i].uncolored_length());
		return mu;
	};
	StageFunction st;
	st.n = 1;
	st.segments = initial_segments();
	st.c = c_rule(1, least_uncolored(st.segments));
	for (unsigned s = 1; s < n; ++s) {
		BigRational a = enumerate_q01(s + 1);
		for (auto &seg : st.segments)
			if (seg.contains(a) && !seg.blue_at(a)) {
				seg.blue_from = (seg.left + QSqrt2(a)) / BigRational(2);
				break;
			}
		QSqrt2 half_jump = stage_jump(s + 1);
		BigRational cap = min(st.c / 2, pow2(-static_cast<long>(s + 1)));
		std::vector<Segment> next;
		next.reserve(2 * st.segments.size());
		next.push_back(st.segments[0]);
		for (std::size_t i = 1; i < st.segments.size(); ++i) {
			const Segment &seg = st.segments[i];
			BigRational lam = min(cap, pow2_floor(seg.uncolored_length() / BigRational(2)));
			QSqrt2 cut = seg.left + QSqrt2(lam);
			next.push_back(Segment{seg.left, cut, seg.offset + half_jump, cut, false});
			next.push_back(Segment{cut, seg.right, seg.offset, seg.blue_from, false});
		}
		st.segments = std::move(next);
		st.n = s + 1;
		st.c = c_rule(s + 1, least_uncolored(st.segments));
	}
	return st;
}

bool StageInvariantReport::all() const
{
	return segment_count && breaks_increasing && first_break && jumps_equal && offsets_decreasing &&
	       uncolored_above_c && c_below_inverse_n && values_below_peak;
}

StageInvariantReport check_stage_invariants(const StageFunction &s)
{
	StageInvariantReport r;
	const auto &g = s.segments;
	r.segment_count = g.size() == (std::size_t(1) << (s.n - 1)) + 1;
	r.breaks_increasing = !g.empty() && g.front().left == QSqrt2(0) && g.back().right == QSqrt2(1);
	for (std::size_t i = 0; i < g.size(); ++i) {
		r.breaks_increasing = r.breaks_increasing && g[i].left < g[i].right;
		if (i + 1 < g.size())
			r.breaks_increasing = r.breaks_increasing && g[i].right == g[i + 1].left && !g[i].right.is_rational();
	}
	r.first_break = !g.empty() && g[0].right == QSqrt2::inv_sqrt2() && g[0].first;
	r.jumps_equal = r.offsets_decreasing = true;
	QSqrt2 J = stage_jump(s.n);
	for (std::size_t i = 0; i + 1 < g.size(); ++i) {
		r.jumps_equal = r.jumps_equal && g[i].offset - g[i + 1].offset == J;
		r.offsets_decreasing = r.offsets_decreasing && g[i].offset > g[i + 1].offset;
	}
	r.uncolored_above_c = s.c.sign() > 0;
	r.values_below_peak = true;
	QSqrt2 peak = QSqrt2::inv_sqrt2();
	for (std::size_t i = 1; i < g.size(); ++i) {
		QSqrt2 u = g[i].uncolored_length();
		r.uncolored_above_c = r.uncolored_above_c && u.sign() > 0 && u >= QSqrt2(s.c) &&
		                      g[i].blue_from <= g[i].right;
		r.values_below_peak = r.values_below_peak && g[i].right + g[i].offset < peak;
	}
	r.c_below_inverse_n = s.c <= BigRational(BigInt(1), BigInt(s.n));
	return r;
}

bool blue_refines(const StageFunction &a, const StageFunction &b)
{
	for (const auto &s : a.segments) {
		if (!s.first && s.blue_from == s.right)
			continue;
		QSqrt2 lo = s.first ? s.left : s.blue_from;
		bool found = false;
		for (const auto &t : b.segments) {
			QSqrt2 tlo = t.first ? t.left : t.blue_from;
			if (t.offset == s.offset && tlo <= lo && s.right <= t.right) {
				found = true;
				break;
			}
		}
		if (!found)
			return false;
	}
	return true;
}

/* ---- lazy construction ---- */

NorthEast::NorthEast(unsigned max_stage) : max_stage_(max_stage)
{
	auto init = initial_segments();
	classes_.push_back({init[1].uncolored_length(), BigInt(1)});
}

void NorthEast::extend_to(unsigned n)
{
	if (n > max_stage_)
		throw ResourceError("stage " + std::to_string(n) + " beyond the cap " + std::to_string(max_stage_));
	while (steps_.size() < n) {
		unsigned s = static_cast<unsigned>(steps_.size()) + 1;
		Transition t;
		t.mu = classes_.front().length;
		for (const auto &c : classes_)
			t.mu = min(t.mu, c.length);
		t.c = c_rule(s, t.mu);
		t.lambda = min(t.c / 2, pow2(-static_cast<long>(s + 1)));

		BigRational a = enumerate_q01(s + 1);
		TrackedPoint tp = track_locked(a, s);
		QSqrt2 old_len, new_len;
		if (!tp.blue) {
			t.event = true;
			t.event_left = tp.segment.left;
			old_len = tp.segment.uncolored_length();
			t.beta = (tp.segment.left + QSqrt2(a)) / BigRational(2);
			new_len = t.beta - t.event_left;
			t.event_lambda = min(t.lambda, pow2_floor(new_len / BigRational(2)));
		}
		steps_.push_back(t);

		// uncolored lengths at stage s+1
		if (t.event) {
			auto it = std::find_if(classes_.begin(), classes_.end(),
			                       [&](const LengthClass &c) { return c.length == old_len; });
			if (it == classes_.end())
				throw ContractViolation("event segment length not tracked");
			it->count -= 1;
		}
		std::vector<LengthClass> next;
		for (const auto &c : classes_)
			if (c.count > 0)
				next.push_back({c.length - QSqrt2(t.lambda), c.count});
		BigInt fresh = (BigInt(1) << (s - 1)) - (t.event ? 1 : 0);
		if (fresh > 0)
			next.push_back({QSqrt2(t.lambda), fresh});
		if (t.event) {
			next.push_back({QSqrt2(t.event_lambda), BigInt(1)});
			next.push_back({new_len - QSqrt2(t.event_lambda), BigInt(1)});
		}
		classes_.clear();
		for (auto &c : next) {
			auto it = std::find_if(classes_.begin(), classes_.end(),
			                       [&](const LengthClass &d) { return d.length == c.length; });
			if (it != classes_.end())
				it->count += c.count;
			else
				classes_.push_back(std::move(c));
		}
	}
}

namespace {

void step_segment(Segment &seg, const BigRational &a, const NorthEast::Transition &t, unsigned s)
{
	if (seg.first)
		return;
	BigRational lam = t.lambda;
	if (t.event && seg.left == t.event_left) {
		seg.blue_from = t.beta;
		lam = t.event_lambda;
	}
	QSqrt2 cut = seg.left + QSqrt2(lam);
	if (QSqrt2(a) < cut)
		seg = Segment{seg.left, cut, seg.offset + stage_jump(s + 1), cut, false};
	else
		seg.left = cut;
}

Segment stage_one_segment(const BigRational &a)
{
	auto init = initial_segments();
	return init[0].contains(a) ? init[0] : init[1];
}

} // namespace

TrackedPoint NorthEast::track_locked(const BigRational &a, unsigned n)
{
	check_unit(a);
	if (n < 1)
		throw PreconditionError("stages start at 1");
	if (steps_.size() + 1 < n)
		throw ContractViolation("stage data missing");
	TrackedPoint tp;
	tp.segment = stage_one_segment(a);
	for (unsigned s = 1; s < n; ++s)
		step_segment(tp.segment, a, steps_[s - 1], s);
	tp.stage = n;
	tp.blue = tp.segment.blue_at(a);
	tp.value = QSqrt2(a) + tp.segment.offset;
	return tp;
}

NorthEast::Transition NorthEast::transition(unsigned n)
{
	std::lock_guard lock(mu_);
	if (n < 1)
		throw PreconditionError("stages start at 1");
	extend_to(n);
	return steps_[n - 1];
}

TrackedPoint NorthEast::track(const BigRational &a, unsigned n)
{
	std::lock_guard lock(mu_);
	if (n > 1)
		extend_to(n - 1);
	return track_locked(a, n);
}

Evaluation NorthEast::eval(const BigRational &a, unsigned stage_cap)
{
	check_unit(a);
	unsigned cap = stage_cap == 0 ? max_stage_ : std::min(stage_cap, max_stage_);
	std::lock_guard lock(mu_);
	Segment seg = stage_one_segment(a);
	unsigned s = 1;
	while (!seg.blue_at(a)) {
		if (s >= cap)
			throw ResourceError(a.str() + " is still uncolored at stage " + std::to_string(cap));
		extend_to(s);
		step_segment(seg, a, steps_[s - 1], s);
		++s;
	}
	return Evaluation{QSqrt2(a) + seg.offset, s};
}

NorthEast &default_northeast()
{
	static NorthEast instance;
	return instance;
}

QSqrt2 eval_f(const BigRational &a) { return default_northeast().eval(a).value; }

QSqrt2 difference_quotient(const BigRational &a, const BigRational &b)
{
	if (a == b)
		throw DomainError("difference quotient needs a != b");
	return (eval_f(b) - eval_f(a)) / (b - a);
}

UcEstimateReport verify_uc_estimate(std::uint64_t k, std::uint64_t trials, std::uint64_t seed, unsigned pool)
{
	if (k == 0)
		throw PreconditionError("verify_uc_estimate needs k >= 1");
	NorthEast &ne = default_northeast();
	UcEstimateReport r;
	r.k = k;
	BigInt kk(std::to_string(k));
	BigInt four_k2 = 4 * kk * kk;
	std::uint64_t n = 2 * k;
	while (BigInt(1) << static_cast<mp_bitcnt_t>(2 * n - 1) < four_k2)
		++n;
	if (n > ne.max_stage())
		throw ResourceError("stage for this k is beyond the cap");
	r.n = static_cast<unsigned>(n);
	r.c_n = ne.c(r.n);

	struct Point {
		BigRational a;
		QSqrt2 v;
	};
	std::vector<Point> pts;
	for (unsigned j = 1; j <= pool; ++j) {
		BigRational a = enumerate_q01(j);
		pts.push_back({a, ne.eval(a).value});
	}
	std::sort(pts.begin(), pts.end(), [](const Point &x, const Point &y) { return x.a < y.a; });
	std::vector<std::pair<std::size_t, std::size_t>> cand;
	for (std::size_t i = 0; i < pts.size(); ++i)
		for (std::size_t j = i + 1; j < pts.size() && pts[j].a - pts[i].a <= r.c_n; ++j)
			cand.emplace_back(i, j);

	std::mt19937_64 rng(seed);
	for (std::size_t i = cand.size(); i > 1; --i)
		std::swap(cand[i - 1], cand[rng() % i]);

	BigRational tol(BigInt(1), kk);
	r.ok = true;
	auto record = [&](const QSqrt2 &va, const QSqrt2 &vb) {
		QSqrt2 gap = (va - vb).abs();
		r.max_gap = max(r.max_gap, gap);
		r.ok = r.ok && gap <= QSqrt2(tol);
		++r.pairs;
	};
	for (std::size_t t = 0; t < cand.size() && r.pairs < trials; ++t)
		record(pts[cand[t].first].v, pts[cand[t].second].v);
	// top up with nearby points b = a +- c_n r/256 when the pool is too sparse
	for (std::uint64_t attempt = 0; r.pairs < trials && attempt < 8 * trials; ++attempt) {
		const Point &p = pts[rng() % pts.size()];
		BigRational d = r.c_n * BigRational(static_cast<long>(1 + rng() % 256), 256L);
		BigRational b = p.a + d <= BigRational(1) ? p.a + d : p.a - d;
		if (b.sign() < 0)
			continue;
		try {
			record(p.v, ne.eval(b, pool + 64).value);
		} catch (const ResourceError &) {
			continue;
		}
	}
	return r;
}

SlopeReport verify_slope_one(const BigRational &a, std::uint64_t k)
{
	NorthEast &ne = default_northeast();
	Evaluation e = ne.eval(a);
	TrackedPoint tp = ne.track(a, e.blue_stage);
	SlopeReport r;
	r.stage = e.blue_stage;
	const Segment &seg = tp.segment;
	QSqrt2 lo = seg.first ? seg.left : seg.blue_from;
	QSqrt2 x(a);
	if (x < seg.right) {
		r.right_side = true;
		r.h = pow2_floor((seg.right - x) / BigRational(2));
	} else {
		r.right_side = false;
		r.h = pow2_floor((x - lo) / BigRational(2));
	}
	r.ok = true;
	for (std::uint64_t t = 1; t <= std::max<std::uint64_t>(k, 1); ++t) {
		BigRational d = r.h / BigRational(static_cast<long>(t));
		BigRational b = r.right_side ? a + d : a - d;
		r.ok = r.ok && difference_quotient(a, b) == QSqrt2(1);
		++r.samples;
	}
	return r;
}

GlobalMaxReport verify_global_max(std::uint64_t count)
{
	GlobalMaxReport r;
	r.below_peak = true;
	QSqrt2 peak = QSqrt2::inv_sqrt2();
	bool have = false;
	for (std::uint64_t j = 1; j <= count; ++j) {
		BigRational a = enumerate_q01(j);
		QSqrt2 v = eval_f(a);
		r.below_peak = r.below_peak && v < peak;
		if (!have || v > r.best) {
			r.best = v;
			r.best_at = a;
			have = true;
		}
		++r.points;
	}
	return r;
}

} // namespace hmc
