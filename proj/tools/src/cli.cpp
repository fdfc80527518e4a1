/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmc/fps.hpp"
#include "hmc/northeast.hpp"
#include "hmc/quadrature.hpp"
#include "hmc/transcendence.hpp"

namespace hmc::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string &s, char sep)
{
	std::vector<std::string> out;
	std::string cur;
	std::istringstream is(s);
	while (std::getline(is, cur, sep))
		out.push_back(cur);
	if (!s.empty() && s.back() == sep)
		out.emplace_back();
	return out;
}

BigInt parse_int(const std::string &s)
{
	std::string t = s;
	t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
	std::string digits = !t.empty() && (t[0] == '-' || t[0] == '+') ? t.substr(1) : t;
	if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
		throw UsageError("not an integer: '" + s + "'");
	BigInt v;
	v.set_str(t[0] == '+' ? digits : t, 10);
	return v;
}

std::vector<BigInt> parse_int_list(const std::string &s)
{
	std::vector<BigInt> out;
	for (const auto &part : split(s, ','))
		out.push_back(parse_int(part));
	if (out.empty())
		throw UsageError("empty coefficient list");
	return out;
}

BigRational parse_rational(const std::string &s)
{
	try {
		return BigRational::parse(s);
	} catch (const std::exception &) {
		throw UsageError("not a rational: '" + s + "'");
	}
}

/* "1/k" -> k */
std::uint64_t parse_tol(const std::string &s)
{
	BigRational t = parse_rational(s);
	if (t.num() != 1 || t.den() < 1 || t.den() > BigInt("1000000000000"))
		throw UsageError("tolerance must have the form 1/k with 1 <= k <= 10^12");
	return to_u64(t.den());
}

std::string dec(const BigRational &q, unsigned digits) { return q.decimal(digits); }

unsigned digits_for(std::uint64_t k) { return static_cast<unsigned>(std::to_string(k).size()) + 2; }

void emit(std::ostream &out, const json &j) { out << j.dump(2) << '\n'; }

/* ---- edigits ---- */

struct EdigitsOpts {
	long precision = 10;
	bool json = false;
};

int cmd_edigits(const EdigitsOpts &o, std::ostream &out)
{
	if (o.precision < 1 || o.precision > 10000)
		throw UsageError("--precision must lie in [1, 10000]");
	unsigned d = static_cast<unsigned>(o.precision);
	std::string digits = render_digits(euler_e(), d);
	std::string marker = "1e-" + std::to_string(d);
	if (o.json) {
		emit(out, json{{"command", "edigits"}, {"precision", d}, {"digits", digits}, {"error", marker}});
	} else {
		out << digits << " ±" << marker << '\n';
	}
	return kOk;
}

/* ---- euler ---- */

struct EulerOpts {
	long k_max = 6;
	std::string mode = "newton";
	std::string tol = "1/100";
	bool json = false;
};

struct EulerRow {
	unsigned k;
	std::string mode;
	BigRational value;
	BigRational residual;
	bool ok;
};

EulerRow euler_row(unsigned k, const std::string &mode, std::uint64_t t)
{
	std::vector<CReal> p(k + 1);
	p[k] = CReal(BigRational(1));
	CReal I = mode == "riemann" ? integrate_improper_polyexp(p, 2 * t) : newton_improper_polyexp(p, 2 * t);
	BigRational q = I.approx(BigInt(std::to_string(4 * t)));
	BigRational res = (q - BigRational(factorial(k))).abs();
	return {k, mode, q, res, res <= BigRational(BigInt(1), BigInt(std::to_string(t)))};
}

int cmd_euler(const EulerOpts &o, std::ostream &out)
{
	if (o.k_max < 0 || o.k_max > 8)
		throw UsageError("--k-max must lie in [0, 8]");
	std::uint64_t t = parse_tol(o.tol);
	std::vector<std::string> modes;
	if (o.mode == "both")
		modes = {"riemann", "newton"};
	else
		modes = {o.mode};
	unsigned dg = digits_for(t);
	BigRational tol(BigInt(1), BigInt(std::to_string(t)));

	bool all_ok = true;
	json rows = json::array();
	std::ostringstream text;
	for (unsigned k = 0; k <= static_cast<unsigned>(o.k_max); ++k) {
		std::vector<EulerRow> rs;
		for (const auto &m : modes)
			rs.push_back(euler_row(k, m, t));
		for (const auto &r : rs) {
			all_ok = all_ok && r.ok;
			text << "k=" << k << ' ' << r.mode << " I=" << dec(r.value, dg) << " k!=" << factorial(k).get_str()
			     << " residual=" << dec(r.residual, dg) << ' ' << (r.ok ? "ok" : "FAIL") << '\n';
			rows.push_back(json{{"k", k},
			                    {"mode", r.mode},
			                    {"value", dec(r.value, dg)},
			                    {"factorial", factorial(k).get_str()},
			                    {"residual", dec(r.residual, dg)},
			                    {"ok", r.ok}});
		}
		if (rs.size() == 2) {
			BigRational gap = (rs[0].value - rs[1].value).abs();
			bool agree = gap <= 2 * tol;
			all_ok = all_ok && agree;
			text << "k=" << k << " routes differ by " << dec(gap, dg) << ' ' << (agree ? "ok" : "FAIL") << '\n';
			rows.back()["routes_gap"] = dec(gap, dg);
			rows.back()["routes_agree"] = agree;
		}
	}
	if (o.json)
		emit(out, json{{"command", "euler"}, {"k_max", o.k_max}, {"mode", o.mode}, {"tol", o.tol},
		               {"rows", rows}, {"ok", all_ok}});
	else
		out << text.str();
	return all_ok ? kOk : kFailed;
}

/* ---- hilbert ---- */

struct HilbertOpts {
	std::string coeffs;
	long m_max = 8;
	std::string route = "newton";
	std::string tol = "1/100";
	bool json = false;
};

int cmd_hilbert(const HilbertOpts &o, std::ostream &out)
{
	if (o.m_max < 1)
		throw UsageError("--m-max must be at least 1");
	if (o.m_max > 40)
		throw ResourceError("--m-max above 40 is not supported");
	auto a = parse_int_list(o.coeffs);
	if (a.size() < 2 || a.front() == 0 || a.back() == 0)
		throw UsageError("need a_0, ..., a_n with n >= 1, a_0 != 0 and a_n != 0");
	CandidateRelation rel(a);
	std::uint64_t k = parse_tol(o.tol);
	ARoute route = o.route == "riemann" ? ARoute::Riemann : ARoute::Newton;
	HilbertReport rep = hilbert_report(rel, static_cast<unsigned>(o.m_max), route, k);

	if (o.json) {
		json coeffs = json::array();
		for (const auto &c : a)
			coeffs.push_back(c.get_str());
		json records = json::array();
		for (const auto &r : rep.records)
			records.push_back(json{{"m", r.m},
			                       {"B", r.B.get_str()},
			                       {"B_mod_mfact", r.B_mod_mfact.get_str()},
			                       {"congruence_ok", r.congruence_ok},
			                       {"A_lo", r.A_lo.str()},
			                       {"A_hi", r.A_hi.str()},
			                       {"bound_ok", r.bound_ok},
			                       {"coprime", r.coprime},
			                       {"verdict", r.verdict}});
		emit(out, json{{"command", "hilbert"},
		               {"coeffs", coeffs},
		               {"route", o.route},
		               {"m_max", o.m_max},
		               {"records", records},
		               {"verdict", rep.refuted() ? "refuted" : "inconclusive"},
		               {"witness", rep.witness ? json(*rep.witness) : json(nullptr)}});
	} else {
		for (const auto &r : rep.records)
			out << "m=" << r.m << " B=" << r.B.get_str() << " B mod m!=" << r.B_mod_mfact.get_str()
			    << " congruence=" << (r.congruence_ok ? "ok" : "FAIL") << " A in [" << dec(r.A_lo, 6) << ", "
			    << dec(r.A_hi, 6) << "] bound=" << (r.bound_ok ? "ok" : "FAIL")
			    << " coprime=" << (r.coprime ? "yes" : "no") << '\n';
		if (rep.refuted())
			out << "refuted at m=" << *rep.witness << '\n';
		else
			out << "inconclusive up to m=" << o.m_max << '\n';
	}
	bool consistent = std::all_of(rep.records.begin(), rep.records.end(),
	                              [](const HilbertRecord &r) { return r.congruence_ok && r.bound_ok; });
	if (!consistent)
		return kFailed;
	return rep.refuted() ? kOk : kInconclusive;
}

/* ---- liouville ---- */

struct LiouvilleOpts {
	std::string poly;
	std::string samples = "convergents:5";
	std::string y;
	long max_bits = 1 << 14;
	bool json = false;
};

int cmd_liouville(const LiouvilleOpts &o, std::ostream &out, std::ostream &err)
{
	auto hi_first = parse_int_list(o.poly);
	IntPoly p(hi_first.rbegin(), hi_first.rend());
	while (p.size() > 1 && p.back() == 0)
		p.pop_back();
	if (p.size() < 2)
		throw UsageError("--poly needs degree >= 1");
	if (o.max_bits < 64 || o.max_bits > (1L << 20))
		throw UsageError("--max-bits must lie in [64, 2^20]");
	auto root = largest_real_root(p);
	if (!root) {
		err << "no real root with a sign change\n";
		return kInconclusive;
	}
	BigRational y = o.y.empty() ? liouville_constant(p, *root) : parse_rational(o.y);
	if (y.sign() <= 0)
		throw UsageError("--y must be positive");

	std::vector<BigRational> pts;
	const std::string prefix = "convergents:";
	if (o.samples.rfind(prefix, 0) == 0) {
		BigInt c = parse_int(o.samples.substr(prefix.size()));
		if (c < 1 || c > 200)
			throw UsageError("convergent count must lie in [1, 200]");
		pts = convergents(*root, static_cast<unsigned>(c.get_ui()));
	} else {
		for (const auto &s : split(o.samples, ','))
			pts.push_back(parse_rational(s));
		if (pts.empty())
			throw UsageError("no samples given");
	}
	LiouvilleWitness w = liouville_check(p, *root, y, pts, o.max_bits);

	bool violated = false, undecided = false;
	for (const auto &s : w.samples) {
		violated = violated || s.status == SampleStatus::Violated;
		undecided = undecided || s.status == SampleStatus::Undecided;
	}
	std::string root_digits = render(*root, 20);
	if (o.json) {
		json rows = json::array();
		for (const auto &s : w.samples)
			rows.push_back(json{{"pq", s.pq.str()}, {"lhs", s.lhs}, {"rhs", s.rhs.str()},
			                    {"status", to_string(s.status)}});
		json poly = json::array();
		for (const auto &c : hi_first)
			poly.push_back(c.get_str());
		emit(out, json{{"command", "liouville"},
		               {"poly", poly},
		               {"degree", w.degree},
		               {"root", root_digits},
		               {"y", w.y.str()},
		               {"samples", rows},
		               {"all_pass", w.all_pass()}});
	} else {
		out << "root " << root_digits << '\n';
		out << "degree " << w.degree << " y=" << w.y.str() << '\n';
		for (const auto &s : w.samples)
			out << s.pq.str() << " |x-p/q|=" << s.lhs << " y/q^n=" << s.rhs.str() << ' ' << to_string(s.status)
			    << '\n';
	}
	if (violated)
		return kFailed;
	return undecided ? kInconclusive : kOk;
}

/* ---- lambda ---- */

struct LambdaOpts {
	long degree = 2;
	std::string y = "1/5";
	bool json = false;
};

int cmd_lambda(const LambdaOpts &o, std::ostream &out)
{
	if (o.degree < 2 || o.degree > 64)
		throw UsageError("--degree must lie in [2, 64]");
	BigRational y = parse_rational(o.y);
	if (y.sign() <= 0)
		throw UsageError("--y must be positive");
	LambdaWitness w = lambda_witness(static_cast<unsigned>(o.degree), y);
	BigRational tail = lambda_tail_bound(w.m);
	if (o.json) {
		emit(out, json{{"command", "lambda"},
		               {"degree", o.degree},
		               {"y", y.str()},
		               {"m", w.m},
		               {"k", w.approx.k.get_str()},
		               {"l", w.approx.l.get_str()},
		               {"tail_bound", tail.str()},
		               {"error_bound", w.error_bound.str()},
		               {"liouville_rhs", w.liouville_rhs.str()},
		               {"verified", w.verified}});
	} else {
		out << "m=" << w.m << " k_m=" << w.approx.k.get_str() << " l_m=" << w.approx.l.get_str() << '\n';
		out << "|lambda - k_m/l_m| <= " << tail.str() << " <= 1/l_m^m = " << w.error_bound.str() << '\n';
		out << "1/l_m^m < y/l_m^" << o.degree << " = " << w.liouville_rhs.str() << ' '
		    << (w.verified ? "verified" : "FAIL") << '\n';
	}
	return w.verified ? kOk : kFailed;
}

/* ---- fps ---- */

struct FpsOpts {
	std::string series = "exp";
	std::string times;
	std::string scale;
	std::string shift;
	bool derivative = false;
	bool primitive = false;
	long terms = 10;
	long digits = 20;
	bool json = false;
};

ConvFPS parse_series(const std::string &s)
{
	if (s == "exp")
		return ConvFPS::exp();
	const std::string prefix = "poly:";
	if (s.rfind(prefix, 0) == 0) {
		std::vector<BigRational> c;
		for (const auto &part : split(s.substr(prefix.size()), ','))
			c.push_back(parse_rational(part));
		if (c.empty())
			throw UsageError("empty polynomial");
		return ConvFPS::polynomial(c);
	}
	throw UsageError("series must be 'exp' or 'poly:c0,c1,...'");
}

int cmd_fps(const FpsOpts &o, std::ostream &out)
{
	if (o.terms < 1 || o.terms > 1000)
		throw UsageError("--terms must lie in [1, 1000]");
	if (o.digits < 1 || o.digits > 1000)
		throw UsageError("--digits must lie in [1, 1000]");
	ConvFPS f = parse_series(o.series);
	json ops = json::array();
	if (!o.times.empty()) {
		f = cauchy_product(f, parse_series(o.times));
		ops.push_back("times " + o.times);
	}
	if (!o.scale.empty()) {
		f = scale_arg(f, CReal(parse_rational(o.scale)));
		ops.push_back("scale " + o.scale);
	}
	if (!o.shift.empty()) {
		f = quasi_shift(f, CReal(parse_rational(o.shift)));
		ops.push_back("shift " + o.shift);
	}
	if (o.derivative) {
		f = formal_derivative(f);
		ops.push_back("derivative");
	}
	if (o.primitive) {
		f = formal_primitive(f);
		ops.push_back("primitive");
	}
	unsigned d = static_cast<unsigned>(o.digits);
	if (o.json) {
		json coeffs = json::array();
		for (std::uint64_t n = 0; n < static_cast<std::uint64_t>(o.terms); ++n) {
			json c{{"n", n}};
			if (f.is_rational()) {
				c["exact"] = f.rational_coeff(n).str();
				c["decimal"] = f.rational_coeff(n).decimal(d);
			} else {
				c["exact"] = nullptr;
				c["decimal"] = render_digits(f.coeff(n), d);
			}
			coeffs.push_back(c);
		}
		emit(out, json{{"command", "fps"}, {"series", o.series}, {"operations", ops}, {"digits", d},
		               {"coefficients", coeffs}});
	} else {
		out << dump(f, static_cast<std::uint64_t>(o.terms), d);
	}
	return kOk;
}

/* ---- northeast ---- */

struct NortheastOpts {
	long stage = 3;
	std::string eval;
	bool json = false;
};

int cmd_northeast(const NortheastOpts &o, std::ostream &out)
{
	if (o.stage < 1)
		throw UsageError("--stage must be at least 1");
	StageFunction st = build_stage(static_cast<unsigned>(o.stage));
	StageInvariantReport inv = check_stage_invariants(st);
	std::optional<Evaluation> ev;
	BigRational a;
	if (!o.eval.empty()) {
		a = parse_rational(o.eval);
		if (a.sign() < 0 || a > BigRational(1))
			throw UsageError("--eval point must lie in [0, 1]");
		ev = default_northeast().eval(a);
	}
	if (o.json) {
		json segs = json::array();
		for (std::size_t i = 0; i < st.segments.size(); ++i) {
			const Segment &s = st.segments[i];
			segs.push_back(json{{"index", i + 1},
			                    {"left", s.left.str()},
			                    {"right", s.right.str()},
			                    {"offset", s.offset.str()},
			                    {"blue_from", s.blue_from.str()}});
		}
		json j{{"command", "northeast"},
		       {"stage", o.stage},
		       {"c", st.c.str()},
		       {"segments", segs},
		       {"invariants",
		        {{"segment_count", inv.segment_count},
		         {"breaks_increasing", inv.breaks_increasing},
		         {"first_break", inv.first_break},
		         {"jumps_equal", inv.jumps_equal},
		         {"offsets_decreasing", inv.offsets_decreasing},
		         {"uncolored_above_c", inv.uncolored_above_c},
		         {"c_below_inverse_n", inv.c_below_inverse_n},
		         {"values_below_peak", inv.values_below_peak}}},
		       {"ok", inv.all()}};
		if (ev)
			j["eval"] = json{{"a", a.str()}, {"value", ev->value.str()}, {"blue_stage", ev->blue_stage}};
		emit(out, j);
	} else {
		out << "stage " << o.stage << ": " << st.segments.size() << " segments, c=" << st.c.str() << '\n';
		out << st.dump();
		out << "invariants " << (inv.all() ? "ok" : "FAIL") << '\n';
		if (ev)
			out << "f(" << a.str() << ") = " << ev->value.str() << " (blue from stage " << ev->blue_stage
			    << ")\n";
	}
	return inv.all() ? kOk : kFailed;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
	CLI::App app{"Exact computations with certified reals", "hmc"};
	app.require_subcommand(1);

	EdigitsOpts ed;
	auto *c_ed = app.add_subcommand("edigits", "decimal digits of e");
	c_ed->add_option("--precision,-d", ed.precision, "digits after the point, 1..10000");
	c_ed->add_flag("--json", ed.json);

	EulerOpts eu;
	auto *c_eu = app.add_subcommand("euler", "integral of a^k e^-a over [0, inf) against k!");
	c_eu->add_option("--k-max", eu.k_max, "largest k, at most 8");
	c_eu->add_option("--mode", eu.mode)->check(CLI::IsMember({"riemann", "newton", "both"}));
	c_eu->add_option("--tol", eu.tol, "tolerance 1/k");
	c_eu->add_flag("--json", eu.json);

	HilbertOpts hi;
	auto *c_hi = app.add_subcommand("hilbert", "A(m), B(m) for a candidate relation in e");
	c_hi->add_option("--coeffs", hi.coeffs, "a0,a1,...,an")->required();
	c_hi->add_option("--m-max", hi.m_max);
	c_hi->add_option("--route", hi.route)->check(CLI::IsMember({"newton", "riemann"}));
	c_hi->add_option("--tol", hi.tol, "enclosure width 1/k");
	c_hi->add_flag("--json", hi.json);

	LiouvilleOpts li;
	auto *c_li = app.add_subcommand("liouville", "Liouville inequality at rational samples");
	c_li->add_option("--poly", li.poly, "integer coefficients, highest degree first")->required();
	c_li->add_option("--samples", li.samples, "convergents:N or p/q,p/q,...");
	c_li->add_option("--y", li.y, "override the computed constant");
	c_li->add_option("--max-bits", li.max_bits);
	c_li->add_flag("--json", li.json);

	LambdaOpts la;
	auto *c_la = app.add_subcommand("lambda", "approximant of sum 2^-(n!) beating a Liouville bound");
	c_la->add_option("--degree", la.degree);
	c_la->add_option("--y", la.y);
	c_la->add_flag("--json", la.json);

	FpsOpts fp;
	auto *c_fp = app.add_subcommand("fps", "coefficients of a formal power series");
	c_fp->add_option("--series", fp.series, "exp or poly:c0,c1,... (lowest degree first)");
	c_fp->add_option("--times", fp.times, "multiply by a second series");
	c_fp->add_option("--scale", fp.scale, "f(x a)");
	c_fp->add_option("--shift", fp.shift, "quasi-formal shift f(a + x)");
	c_fp->add_flag("--derivative", fp.derivative);
	c_fp->add_flag("--primitive", fp.primitive);
	c_fp->add_option("--terms", fp.terms);
	c_fp->add_option("--digits", fp.digits);
	c_fp->add_flag("--json", fp.json);

	NortheastOpts ne;
	auto *c_ne = app.add_subcommand("northeast", "stage of the north-east construction");
	c_ne->add_option("--stage", ne.stage, "stage n, at most 18");
	c_ne->add_option("--eval", ne.eval, "rational point in [0, 1]");
	c_ne->add_flag("--json", ne.json);

	try {
		std::vector<std::string> rev(args.rbegin(), args.rend());
		app.parse(rev);
	} catch (const CLI::CallForHelp &) {
		out << app.help();
		return kOk;
	} catch (const CLI::CallForAllHelp &) {
		out << app.help("", CLI::AppFormatMode::All);
		return kOk;
	} catch (const CLI::ParseError &e) {
		err << "usage error: " << e.what() << '\n';
		return kUsage;
	}

	try {
		if (c_ed->parsed())
			return cmd_edigits(ed, out);
		if (c_eu->parsed())
			return cmd_euler(eu, out);
		if (c_hi->parsed())
			return cmd_hilbert(hi, out);
		if (c_li->parsed())
			return cmd_liouville(li, out, err);
		if (c_la->parsed())
			return cmd_lambda(la, out);
		if (c_fp->parsed())
			return cmd_fps(fp, out);
		if (c_ne->parsed())
			return cmd_northeast(ne, out);
	} catch (const UsageError &e) {
		err << "usage error: " << e.what() << '\n';
		return kUsage;
	} catch (const PreconditionError &e) {
		err << "usage error: " << e.what() << '\n';
		return kUsage;
	} catch (const DomainError &e) {
		err << "usage error: " << e.what() << '\n';
		return kUsage;
	} catch (const ResourceError &e) {
		err << "resource cap: " << e.what() << '\n';
		return kResource;
	} catch (const PrecisionExhausted &e) {
		err << "inconclusive: " << e.what() << '\n';
		return kInconclusive;
	} catch (const std::exception &e) {
		err << "error: " << e.what() << '\n';
		return kFailed;
	}
	return kUsage;
}

} // namespace hmc::cli
