/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
	int code;
	std::string out, err;
};

Result run(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = hmc::cli::run(args, out, err);
	return {code, out.str(), err.str()};
}

json load_schema(const std::string &name)
{
	std::ifstream in(std::string(HMC_SCHEMA_DIR) + "/" + name + ".schema.json");
	return json::parse(in);
}

bool type_matches(const json &v, const std::string &t)
{
	if (t == "object")
		return v.is_object();
	if (t == "array")
		return v.is_array();
	if (t == "string")
		return v.is_string();
	if (t == "integer")
		return v.is_number_integer();
	if (t == "number")
		return v.is_number();
	if (t == "boolean")
		return v.is_boolean();
	if (t == "null")
		return v.is_null();
	return false;
}

/* the draft-07 keywords used by the committed schemas */
void validate(const json &v, const json &s, const std::string &path, std::vector<std::string> &errors)
{
	if (s.contains("type")) {
		bool ok = false;
		if (s["type"].is_array())
			for (const auto &t : s["type"])
				ok = ok || type_matches(v, t.get<std::string>());
		else
			ok = type_matches(v, s["type"].get<std::string>());
		if (!ok) {
			errors.push_back(path + ": type");
			return;
		}
	}
	if (s.contains("const") && v != s["const"])
		errors.push_back(path + ": const");
	if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end())
		errors.push_back(path + ": enum");
	if (s.contains("pattern") && v.is_string() &&
	    !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
		errors.push_back(path + ": pattern " + v.get<std::string>());
	if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
		errors.push_back(path + ": minimum");
	if (s.contains("maximum") && v.is_number() && v.get<double>() > s["maximum"].get<double>())
		errors.push_back(path + ": maximum");
	if (v.is_array()) {
		if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
			errors.push_back(path + ": minItems");
		if (s.contains("items"))
			for (std::size_t i = 0; i < v.size(); ++i)
				validate(v[i], s["items"], path + "/" + std::to_string(i), errors);
	}
	if (v.is_object()) {
		if (s.contains("required"))
			for (const auto &r : s["required"])
				if (!v.contains(r.get<std::string>()))
					errors.push_back(path + ": missing " + r.get<std::string>());
		json props = s.value("properties", json::object());
		for (auto it = v.begin(); it != v.end(); ++it) {
			if (props.contains(it.key()))
				validate(it.value(), props[it.key()], path + "/" + it.key(), errors);
			else if (s.contains("additionalProperties") && s["additionalProperties"] == false)
				errors.push_back(path + ": unexpected " + it.key());
		}
	}
}

::testing::AssertionResult conforms(const std::string &out, const std::string &schema)
{
	json v;
	try {
		v = json::parse(out);
	} catch (const json::exception &e) {
		return ::testing::AssertionFailure() << "not JSON: " << e.what();
	}
	std::vector<std::string> errors;
	validate(v, load_schema(schema), "", errors);
	if (errors.empty())
		return ::testing::AssertionSuccess();
	auto f = ::testing::AssertionFailure();
	for (const auto &e : errors)
		f << e << "; ";
	return f;
}

std::vector<std::string> lines(const std::string &s)
{
	std::vector<std::string> out;
	std::istringstream in(s);
	for (std::string l; std::getline(in, l);)
		out.push_back(l);
	return out;
}

} // namespace

TEST(Edigits, Examples)
{
	Result r = run({"edigits", "--precision", "4"});
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "2.7182 ±1e-4\n");
	EXPECT_EQ(run({"edigits", "-d", "1"}).out, "2.7 ±1e-1\n");
	std::string d20 = run({"edigits", "-d", "20"}).out, d21 = run({"edigits", "-d", "21"}).out;
	EXPECT_EQ(d21.substr(0, 22), d20.substr(0, 22));
	EXPECT_EQ(d20.substr(0, 22), "2.71828182845904523536");
}

TEST(Edigits, Range)
{
	EXPECT_EQ(run({"edigits", "--precision", "0"}).code, 2);
	EXPECT_EQ(run({"edigits", "--precision", "10001"}).code, 2);
	EXPECT_EQ(run({"edigits", "--precision", "x"}).code, 2);
}

TEST(Euler, NewtonTable)
{
	Result r = run({"euler", "--k-max", "3", "--mode", "newton", "--tol", "1/100"});
	EXPECT_EQ(r.code, 0);
	auto ls = lines(r.out);
	ASSERT_EQ(ls.size(), 4u);
	for (const auto &l : ls)
		EXPECT_NE(l.find(" ok"), std::string::npos) << l;
	Result zero = run({"euler", "--k-max", "0"});
	EXPECT_EQ(zero.code, 0);
	EXPECT_EQ(lines(zero.out).size(), 1u);
	EXPECT_NE(zero.out.find("k!=1"), std::string::npos);
}

TEST(Euler, BothModesAgree)
{
	Result r = run({"euler", "--k-max", "2", "--mode", "both", "--json"});
	EXPECT_EQ(r.code, 0);
	EXPECT_TRUE(conforms(r.out, "euler_table"));
	EXPECT_EQ(run({"euler", "--k-max", "9"}).code, 2);
	EXPECT_EQ(run({"euler", "--mode", "simpson"}).code, 2);
	EXPECT_EQ(run({"euler", "--tol", "0.01"}).code, 2);
}

TEST(Hilbert, Examples)
{
	Result r = run({"hilbert", "--coeffs", "-3,1"});
	EXPECT_EQ(r.code, 0);
	EXPECT_NE(r.out.find("refuted at m="), std::string::npos);
	EXPECT_EQ(run({"hilbert", "--coeffs", "1,1"}).code, 0);
	EXPECT_EQ(run({"hilbert", "--coeffs", "0,1"}).code, 2);
	EXPECT_EQ(run({"hilbert", "--coeffs", "1,x"}).code, 2);
	EXPECT_EQ(run({"hilbert", "--coeffs", "5,0,0,1", "--m-max", "2"}).code, 3);
	EXPECT_EQ(run({"hilbert", "--coeffs", "1,1", "--m-max", "41"}).code, 4);
}

TEST(Hilbert, JsonRecords)
{
	Result r = run({"hilbert", "--coeffs", "-3,1", "--json"});
	ASSERT_EQ(r.code, 0);
	EXPECT_TRUE(conforms(r.out, "hilbert_report"));
	json j = json::parse(r.out);
	EXPECT_EQ(j["verdict"], "refuted");
	ASSERT_FALSE(j["records"].empty());
	// B(1) for e = 3 is -1
	EXPECT_EQ(j["records"][0]["B"], "-1");
	for (const auto &rec : j["records"]) {
		EXPECT_TRUE(rec["congruence_ok"].get<bool>());
		EXPECT_EQ(rec["B_mod_mfact"], "0");
	}
	Result inc = run({"hilbert", "--coeffs", "5,0,0,1", "--m-max", "2", "--json"});
	EXPECT_TRUE(conforms(inc.out, "hilbert_report"));
	EXPECT_EQ(json::parse(inc.out)["verdict"], "inconclusive");
}

TEST(Liouville, Convergents)
{
	Result r = run({"liouville", "--poly", "1,0,-2", "--samples", "convergents:5"});
	EXPECT_EQ(r.code, 0);
	int passes = 0;
	for (const auto &l : lines(r.out))
		passes += l.size() > 5 && l.substr(l.size() - 5) == " pass";
	EXPECT_EQ(passes, 5);
	Result j = run({"liouville", "--poly", "1,0,-2", "--samples", "3/2,7/5,17/12", "--json"});
	EXPECT_EQ(j.code, 0);
	EXPECT_TRUE(conforms(j.out, "liouville_witness"));
	EXPECT_EQ(run({"liouville", "--poly", "1,0,1"}).code, 3);
	EXPECT_EQ(run({"liouville", "--samples", "convergents:5"}).code, 2);
}

TEST(Lambda, DegreeTwo)
{
	Result r = run({"lambda", "--degree", "2"});
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(lines(r.out)[0], "m=3 k_m=49 l_m=64");
	Result j = run({"lambda", "--degree", "3", "--y", "1/100", "--json"});
	EXPECT_EQ(j.code, 0);
	EXPECT_TRUE(conforms(j.out, "lambda_witness"));
	EXPECT_EQ(run({"lambda", "--degree", "1"}).code, 2);
}

TEST(Fps, ShiftAndJson)
{
	Result r = run({"fps", "--series", "poly:1,2,1", "--shift", "1", "--terms", "4"});
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "0 4 1\n1 4 1\n2 1 1\n3 0 1\n");
	Result e = run({"fps", "--series", "exp", "--terms", "3", "--json"});
	EXPECT_EQ(e.code, 0);
	EXPECT_TRUE(conforms(e.out, "fps_dump"));
	Result s = run({"fps", "--series", "exp", "--shift", "1", "--terms", "3", "--digits", "6", "--json"});
	EXPECT_TRUE(conforms(s.out, "fps_dump"));
	EXPECT_EQ(run({"fps", "--series", "sin"}).code, 2);
}

TEST(NorthEast, StageThree)
{
	Result r = run({"northeast", "--stage", "3"});
	EXPECT_EQ(r.code, 0);
	auto ls = lines(r.out);
	ASSERT_GE(ls.size(), 7u);
	EXPECT_EQ(ls[0].rfind("stage 3: 5 segments", 0), 0u);
	EXPECT_EQ(ls.back(), "invariants ok");
	Result j = run({"northeast", "--stage", "3", "--eval", "3/4", "--json"});
	EXPECT_EQ(j.code, 0);
	EXPECT_TRUE(conforms(j.out, "stage_dump"));
	EXPECT_EQ(json::parse(j.out)["segments"].size(), 5u);
	EXPECT_EQ(run({"northeast", "--stage", "40"}).code, 4);
	EXPECT_EQ(run({"northeast", "--stage", "2", "--eval", "2"}).code, 2);
}

TEST(Common, UsageAndJsonEverywhere)
{
	EXPECT_EQ(run({}).code, 2);
	EXPECT_EQ(run({"--help"}).code, 0);
	EXPECT_EQ(run({"nosuch"}).code, 2);
	EXPECT_EQ(run({"euler", "--bogus"}).code, 2);
	Result e = run({"edigits", "-d", "5", "--json"});
	EXPECT_TRUE(conforms(e.out, "edigits"));
	EXPECT_EQ(json::parse(e.out)["digits"], "2.71828");
}

TEST(Common, Deterministic)
{
	std::vector<std::vector<std::string>> cmds = {
	    {"edigits", "-d", "30"},
	    {"euler", "--k-max", "2", "--mode", "both", "--json"},
	    {"hilbert", "--coeffs", "1,1", "--json"},
	    {"liouville", "--poly", "1,0,-2", "--samples", "convergents:4", "--json"},
	    {"lambda", "--json"},
	    {"fps", "--series", "exp", "--times", "poly:1,-1", "--terms", "6", "--json"},
	    {"northeast", "--stage", "4", "--eval", "5/7", "--json"}};
	for (const auto &c : cmds) {
		Result a = run(c), b = run(c);
		EXPECT_EQ(a.code, b.code) << c[0];
		EXPECT_EQ(a.out, b.out) << c[0];
	}
}
