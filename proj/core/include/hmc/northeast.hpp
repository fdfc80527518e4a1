/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hmc/qsqrt2.hpp"

namespace hmc {

/* 1 -> 0, 2 -> 1, j >= 3 -> x/(1+x) with x the (j-2)-th Calkin-Wilf rational */
BigRational enumerate_q01(std::uint64_t j);
/* inverse of enumerate_q01; throws ResourceError when the index exceeds 2^max_bits */
BigInt index_q01(const BigRational &a, unsigned long max_bits = 1 << 20);

struct Segment {
	QSqrt2 left;
	QSqrt2 right;
	QSqrt2 offset;    // f(a) = a + offset on the segment
	QSqrt2 blue_from; // blue part is (blue_from, right); equals right when empty
	bool first = false; // the identity piece [0, 1/sqrt2), blue throughout

	bool contains(const BigRational &a) const;
	bool blue_at(const BigRational &a) const;
	QSqrt2 uncolored_length() const { return blue_from - left; }
};

struct StageFunction {
	unsigned n = 0;
	std::vector<Segment> segments;
	BigRational c;

	const Segment &segment_of(const BigRational &a) const;
	/* one line per segment: "i left right offset blue_from" */
	std::string dump() const;
};

/* 1/(2^(n-1) sqrt2) */
QSqrt2 stage_jump(unsigned n);

/* stage n built segment by segment; 2^(n-1)+1 segments, so n is capped */
StageFunction build_stage(unsigned n, unsigned max_n = 18);

struct StageInvariantReport {
	bool segment_count = false;
	bool breaks_increasing = false;
	bool first_break = false;
	bool jumps_equal = false;
	bool offsets_decreasing = false;
	bool uncolored_above_c = false;
	bool c_below_inverse_n = false;
	bool values_below_peak = false;
	bool all() const;
};

StageInvariantReport check_stage_invariants(const StageFunction &s);
/* blue parts at stage n lie inside blue parts at stage n+1 */
bool blue_refines(const StageFunction &a, const StageFunction &b);

struct TrackedPoint {
	unsigned stage = 0;
	Segment segment;
	bool blue = false;
	QSqrt2 value; // a + offset at this stage
};

struct Evaluation {
	QSqrt2 value;
	unsigned blue_stage = 0; // first stage where the point is blue
};

/*
 * Lazy form of the construction: only the global per-stage data is stored
 * (c_n, the uniform cut length and the single event segment), and a point
 * is followed through the stages on demand.
 */
class NorthEast {
public:
	explicit NorthEast(unsigned max_stage = 1 << 10);

	struct Transition {
		BigRational c;        // c_n
		QSqrt2 mu;            // least uncolored length at stage n
		BigRational lambda;   // cut length for segments away from the event
		bool event = false;   // a_{n+1} hit an uncolored part
		QSqrt2 event_left;
		QSqrt2 beta;          // new blue boundary of the event segment
		BigRational event_lambda;
	};

	/* data of stage n and its step to n+1 */
	Transition transition(unsigned n);
	BigRational c(unsigned n) { return transition(n).c; }

	TrackedPoint track(const BigRational &a, unsigned n);
	/* follows a until it lies in a blue part; ResourceError past stage_cap (0: max_stage) */
	Evaluation eval(const BigRational &a, unsigned stage_cap = 0);
	unsigned max_stage() const { return max_stage_; }

private:
	struct LengthClass {
		QSqrt2 length;
		BigInt count;
	};
	void extend_to(unsigned n);
	TrackedPoint track_locked(const BigRational &a, unsigned n);

	unsigned max_stage_;
	std::mutex mu_;
	std::vector<Transition> steps_; // steps_[n-1] for stage n
	std::vector<LengthClass> classes_;
};

NorthEast &default_northeast();

QSqrt2 eval_f(const BigRational &a);
/* (f(b) - f(a)) / (b - a) */
QSqrt2 difference_quotient(const BigRational &a, const BigRational &b);

struct UcEstimateReport {
	std::uint64_t k = 0;
	unsigned n = 0;
	BigRational c_n;
	std::uint64_t pairs = 0;
	QSqrt2 max_gap;
	bool ok = false;
};

/* pairs |a-b| <= c_n with n >= 2k and 1/(2^(n-1) sqrt2) <= 1/(2k); checks |f(a)-f(b)| <= 1/k */
UcEstimateReport verify_uc_estimate(std::uint64_t k, std::uint64_t trials, std::uint64_t seed = 20260101,
                                    unsigned pool = 600);

struct SlopeReport {
	unsigned stage = 0;
	BigRational h;       // neighbourhood radius used
	bool right_side = true;
	std::uint64_t samples = 0;
	bool ok = false;
};

SlopeReport verify_slope_one(const BigRational &a, std::uint64_t k);

struct GlobalMaxReport {
	std::uint64_t points = 0;
	bool below_peak = false;
	QSqrt2 best;
	BigRational best_at;
};

GlobalMaxReport verify_global_max(std::uint64_t count);

} // namespace hmc
