/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The hmc authors
 */

#include "hmc/creal.hpp"

#include <map>
#include <mutex>

#include "hmc/parallel.hpp"

namespace hmc {
namespace detail {

class Node {
	mutable std::mutex mu_;
	mutable std::map<long, BigRational> cache_;
	mutable std::optional<long> mag_;

protected:
	virtual BigRational compute(long n) const = 0;

public:
	std::optional<BigRational> exact;

	virtual ~Node() = default;

	BigRational approx_bits(long n) const
	{
		if (exact)
			return *exact;
		{
			std::lock_guard lock(mu_);
			auto it = cache_.lower_bound(n);
			if (it != cache_.end()) {
				if (it->first != n)
					cache_.emplace(n, it->second);
				return it->second;
			}
		}
		BigRational q = compute(n);
		std::lock_guard lock(mu_);
		return cache_.emplace(n, std::move(q)).first->second;
	}

	long mag_bits() const
	{
		{
			std::lock_guard lock(mu_);
			if (mag_)
				return *mag_;
		}
		long b;
		if (exact)
			b = exact->is_zero() ? 0 : ceil_log2(exact->abs());
		else
			b = ceil_log2(approx_bits(0).abs() + BigRational(1));
		std::lock_guard lock(mu_);
		mag_ = b;
		return b;
	}
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

struct ExactNode : Node {
	explicit ExactNode(BigRational a) { exact = std::move(a); }
	BigRational compute(long) const override { return *exact; }
};

struct FuncNode : Node {
	CReal::BitsApprox f;
	explicit FuncNode(CReal::BitsApprox g) : f(std::move(g)) {}
	BigRational compute(long n) const override { return f(n); }
};

struct NegNode : Node {
	NodePtr a;
	explicit NegNode(NodePtr x) : a(std::move(x)) {}
	BigRational compute(long n) const override { return -a->approx_bits(n); }
};

struct AddNode : Node {
	NodePtr a, b;
	AddNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}
	BigRational compute(long n) const override
	{
		return round_to_bits(a->approx_bits(n + 2) + b->approx_bits(n + 2), n + 2);
	}
};

struct MulNode : Node {
	NodePtr a, b;
	MulNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}
	BigRational compute(long n) const override
	{
		// |x| <= 2^bx, |y| + 1 <= 2^by', so |x||y - q| + |q||x - p| <= 2^-(n+1)
		long bx = a->mag_bits() + 1, by = b->mag_bits() + 1;
		BigRational p = a->approx_bits(n + by + 2);
		BigRational q = b->approx_bits(n + bx + 2);
		return round_to_bits(p * q, n + 2);
	}
};

struct ScaleNode : Node {
	BigRational r;
	NodePtr a;
	long br;
	ScaleNode(BigRational s, NodePtr x) : r(std::move(s)), a(std::move(x)), br(ceil_log2(r.abs())) {}
	BigRational compute(long n) const override
	{
		return round_to_bits(r * a->approx_bits(n + br + 1), n + 2);
	}
};

struct LinNode : Node {
	std::vector<std::pair<BigRational, NodePtr>> terms;
	long cb = 0;
	BigRational compute(long n) const override
	{
		BigRational s;
		for (auto &[w, x] : terms)
			s += w * x->approx_bits(n + 2 + cb + ceil_log2(w.abs()));
		return round_to_bits(s, n + 2);
	}
};

struct AbsNode : Node {
	NodePtr a;
	explicit AbsNode(NodePtr x) : a(std::move(x)) {}
	BigRational compute(long n) const override { return a->approx_bits(n).abs(); }
};

struct InvNode : Node {
	NodePtr a;
	long s;
	InvNode(NodePtr x, long sb) : a(std::move(x)), s(sb) {}
	BigRational compute(long n) const override
	{
		// |x| >= 2^-s and |p - x| <= 2^-(m+2s+2) give |p| >= 2^-(s+1)
		long m = std::max(n, -s - 1);
		BigRational p = a->approx_bits(m + 2 * s + 2);
		if (p.is_zero())
			throw ContractViolation("inverse: separation witness does not hold");
		return round_to_bits(p.inv(), n + 2);
	}
};

struct LimitNode : Node {
	CReal::RealSequence xs;
	CReal::IndexModulus modulus;
	LimitNode(CReal::RealSequence s, CReal::IndexModulus m) : xs(std::move(s)), modulus(std::move(m)) {}
	BigRational compute(long n) const override
	{
		std::uint64_t idx = modulus(BigInt(1) << static_cast<mp_bitcnt_t>(std::max(n + 1, 0L)));
		return round_to_bits(xs(idx).approx_bits(n + 2), n + 2);
	}
};

struct CauchyNode : Node {
	CReal::Sequence seq;
	CReal::IndexModulus modulus;
	CauchyNode(CReal::Sequence s, CReal::IndexModulus m) : seq(std::move(s)), modulus(std::move(m)) {}
	BigRational compute(long n) const override
	{
		std::uint64_t idx = modulus(BigInt(1) << static_cast<mp_bitcnt_t>(std::max(n + 1, 0L)));
		return round_to_bits(seq(idx), n + 2);
	}
};

struct ExpNode : Node {
	BigInt p, q; // argument p/q
	BigRational absa;
	explicit ExpNode(const BigRational &a) : p(a.num()), q(a.den()), absa(a.abs()) {}

	BigRational compute(long n) const override
	{
		long m = std::max(n, 0L);
		// N >= 2|a| with 2|a|^(N+1)/(N+1)! <= 2^-(m+3)
		BigInt ap = abs(p);
		BigInt pw = ap, fq = q;
		BigInt lim = 2 * (absa.ceil());
		unsigned long N = 0;
		BigInt lhs_scale = BigInt(1) << static_cast<mp_bitcnt_t>(m + 4);
		for (;;) {
			// pw = |p|^(N+1), fq = q^(N+1) (N+1)!
			if (N >= lim && pw * lhs_scale <= fq)
				break;
			++N;
			pw *= ap;
			fq *= q * BigInt(static_cast<unsigned long>(N + 1));
		}
		long guard = 2 * ceil_log2(BigInt(static_cast<unsigned long>(N + 2))) +
		             (3 * absa).ceil().get_si() / 2 + 4;
		long P = m + 3 + guard;
		BigInt one = BigInt(1) << static_cast<mp_bitcnt_t>(P);
		BigInt t = one, s = 0;
		for (unsigned long j = 0; j <= N; ++j) {
			s += t;
			t *= p;
			BigInt d = q * BigInt(j + 1);
			mpz_tdiv_q(t.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
		}
		return round_to_bits(BigRational(s, one), n + 2);
	}
};

struct SqrtNode : Node {
	BigRational a;
	explicit SqrtNode(BigRational x) : a(std::move(x)) {}
	BigRational compute(long n) const override
	{
		long m = std::max(n, 0L) + 1;
		BigInt scaled = (a * pow2(2 * m)).floor();
		BigInt r;
		mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
		return BigRational(r) * pow2(-m);
	}
};

struct TermSumNode : Node {
	std::uint64_t count;
	BigRational weight;
	std::function<BigRational(std::uint64_t, long)> term;
	BigRational compute(long n) const override
	{
		if (count == 0 || weight.is_zero())
			return BigRational(0);
		long g = n + 3 + ceil_log2(BigInt(static_cast<unsigned long>(count))) + ceil_log2(weight.abs());
		const std::uint64_t chunk = 4096;
		std::uint64_t chunks = (count + chunk - 1) / chunk;
		std::vector<BigRational> partial(chunks);
		parallel_for(chunks, [&](std::size_t c) {
			BigRational s;
			std::uint64_t lo = c * chunk, hi = std::min(count, lo + chunk);
			for (std::uint64_t i = lo; i < hi; ++i)
				s += round_to_bits(term(i, g + 1), g + 1);
			partial[c] = s;
		});
		BigRational s;
		for (auto &x : partial)
			s += x;
		return round_to_bits(weight * s, n + 2);
	}
};

} // namespace
} // namespace detail

using detail::Node;

static std::shared_ptr<const Node> exact_node(const BigRational &a)
{
	return std::make_shared<detail::ExactNode>(a);
}

CReal::CReal() : node_(exact_node(BigRational(0))) {}
CReal::CReal(const BigRational &a) : node_(exact_node(a)) {}

CReal CReal::from_cauchy(Sequence seq, IndexModulus modulus)
{
	return CReal(std::make_shared<detail::CauchyNode>(std::move(seq), std::move(modulus)));
}

CReal CReal::limit(RealSequence xs, IndexModulus modulus)
{
	return CReal(std::make_shared<detail::LimitNode>(std::move(xs), std::move(modulus)));
}

CReal CReal::from_bits(BitsApprox f)
{
	return CReal(std::make_shared<detail::FuncNode>(std::move(f)));
}

BigRational CReal::approx(const BigInt &k) const
{
	if (k < 1)
		throw DomainError("precision index must be >= 1");
	if (node_->exact)
		return *node_->exact;
	return node_->approx_bits(ceil_log2(k));
}

BigRational CReal::approx_bits(long n) const { return node_->approx_bits(n); }

const std::optional<BigRational> &CReal::exact() const { return node_->exact; }

BigRational CReal::upper_abs(long bits) const
{
	if (node_->exact)
		return node_->exact->abs();
	return approx_bits(bits).abs() + pow2(-bits);
}

long CReal::mag_bits() const { return node_->mag_bits(); }

CReal CReal::operator-() const
{
	if (exact())
		return CReal(-*exact());
	return CReal(std::make_shared<detail::NegNode>(node_));
}

CReal operator+(const CReal &a, const CReal &b)
{
	if (a.exact() && b.exact())
		return CReal(*a.exact() + *b.exact());
	if (a.exact() && a.exact()->is_zero())
		return b;
	if (b.exact() && b.exact()->is_zero())
		return a;
	return CReal(std::make_shared<detail::AddNode>(a.node_, b.node_));
}

CReal operator-(const CReal &a, const CReal &b) { return a + (-b); }

CReal operator*(const CReal &a, const CReal &b)
{
	if (a.exact() && b.exact())
		return CReal(*a.exact() * *b.exact());
	if (a.exact())
		return *a.exact() * b;
	if (b.exact())
		return *b.exact() * a;
	return CReal(std::make_shared<detail::MulNode>(a.node_, b.node_));
}

CReal operator*(const BigRational &r, const CReal &x)
{
	if (x.exact())
		return CReal(r * *x.exact());
	if (r.is_zero())
		return CReal();
	if (r == BigRational(1))
		return x;
	return CReal(std::make_shared<detail::ScaleNode>(r, x.node_));
}

bool witness_valid(const CReal &x, const SeparationWitness &w)
{
	if (w.k < 1)
		return false;
	BigInt k2 = 2 * w.k;
	return x.approx(k2).abs() >= BigRational(BigInt(1), k2);
}

CReal CReal::inverse(const SeparationWitness &w) const
{
	if (!witness_valid(*this, w))
		throw ContractViolation("inverse: invalid separation witness");
	if (exact())
		return CReal(exact()->inv());
	return CReal(std::make_shared<detail::InvNode>(node_, ceil_log2(w.k)));
}

CReal CReal::abs() const
{
	if (exact())
		return CReal(exact()->abs());
	return CReal(std::make_shared<detail::AbsNode>(node_));
}

Cmp compare(const CReal &x, const CReal &y, const BigInt &k)
{
	if (k < 1)
		throw DomainError("compare: tolerance index must be >= 1");
	if (x.exact() && y.exact()) {
		auto c = *x.exact() <=> *y.exact();
		if (c < 0 && *y.exact() - *x.exact() > BigRational(BigInt(1), k))
			return Cmp::Less;
		if (c > 0 && *x.exact() - *y.exact() > BigRational(BigInt(1), k))
			return Cmp::Greater;
		if (c == 0)
			return Cmp::Within;
	}
	long b = ceil_log2(BigInt(4 * k));
	BigRational d = (x - y).approx_bits(b), e = pow2(-b);
	if (d < -e)
		return Cmp::Less;
	if (d > e)
		return Cmp::Greater;
	return Cmp::Within;
}

const char *to_string(Cmp c)
{
	switch (c) {
	case Cmp::Less: return "Less";
	case Cmp::Greater: return "Greater";
	case Cmp::Within: return "Within";
	}
	return "?";
}

std::optional<SeparationWitness> find_witness(const CReal &x, long max_bits)
{
	if (x.exact()) {
		if (x.exact()->is_zero())
			return std::nullopt;
		return SeparationWitness{x.exact()->abs().inv().ceil()};
	}
	for (long n = 1; n <= max_bits; n = n < 64 ? n + 1 : n * 2) {
		BigRational q = x.approx_bits(n);
		if (q.abs() >= pow2(1 - n))
			return SeparationWitness{BigInt(1) << static_cast<mp_bitcnt_t>(n)};
	}
	return std::nullopt;
}

CReal lincomb(const std::vector<std::pair<BigRational, CReal>> &terms)
{
	auto node = std::make_shared<detail::LinNode>();
	BigRational exact_part;
	for (auto &[w, x] : terms) {
		if (w.is_zero())
			continue;
		if (x.exact())
			exact_part += w * *x.exact();
		else
			node->terms.emplace_back(w, x.node_);
	}
	if (node->terms.empty())
		return CReal(exact_part);
	node->cb = ceil_log2(BigInt(static_cast<unsigned long>(node->terms.size())));
	CReal r(node);
	return exact_part.is_zero() ? r : r + CReal(exact_part);
}

CReal pow(const CReal &x, unsigned long e)
{
	CReal r(BigRational(1)), b = x;
	while (e) {
		if (e & 1)
			r = r * b;
		e >>= 1;
		if (e)
			b = b * b;
	}
	return r;
}

CReal min(const CReal &a, const CReal &b)
{
	return BigRational(BigInt(1), BigInt(2)) * (a + b - (a - b).abs());
}

CReal max(const CReal &a, const CReal &b)
{
	return BigRational(BigInt(1), BigInt(2)) * (a + b + (a - b).abs());
}

CReal exp(const BigRational &a)
{
	if (a.is_zero())
		return CReal(BigRational(1));
	return CReal(std::make_shared<detail::ExpNode>(a));
}

CReal sqrt(const BigRational &a)
{
	if (a.sign() < 0)
		throw DomainError("sqrt of negative rational");
	BigInt n = a.num(), d = a.den();
	if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
		BigInt rn, rd;
		mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
		mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
		return CReal(BigRational(rn, rd));
	}
	return CReal(std::make_shared<detail::SqrtNode>(a));
}

const CReal &euler_e()
{
	static const CReal e = exp(BigRational(1));
	return e;
}

CReal weighted_term_sum(std::uint64_t count, BigRational weight,
                        std::function<BigRational(std::uint64_t, long)> term)
{
	auto node = std::make_shared<detail::TermSumNode>();
	node->count = count;
	node->weight = std::move(weight);
	node->term = std::move(term);
	return CReal(node);
}

std::string render_digits(const CReal &x, unsigned d)
{
	BigInt scale = ipow(BigInt(10), d);
	BigInt k = 4 * scale;
	BigRational q = x.approx(k);
	// refine until both ends of the enclosure truncate to the same digits
	for (int round = 0; round < 32; ++round) {
		BigRational eps(BigInt(1), k);
		if (((q - eps) * BigRational(scale)).floor() == ((q + eps) * BigRational(scale)).floor())
			break;
		k *= 1 << 16;
		q = x.approx(k);
	}
	return q.decimal(d);
}

std::string render(const CReal &x, unsigned d)
{
	return render_digits(x, d) + " ±1e-" + std::to_string(d);
}

} // namespace hmc
