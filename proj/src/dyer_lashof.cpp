#include "polarlab/dyer_lashof.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace polarlab {

namespace {

void add_to(const PrimeField& f, DLExpression& e, const DLWord& w, std::uint32_t c)
{
    if (c == 0)
        return;
    auto [it, inserted] = e.try_emplace(w, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (it->second == 0)
            e.erase(it);
    }
}

void add_to(const PrimeField& f, BoundExpression& e, const BoundTerm& t, std::uint32_t c)
{
    if (c == 0)
        return;
    auto [it, inserted] = e.try_emplace(t, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (it->second == 0)
            e.erase(it);
    }
}

void require_odd(std::uint32_t p)
{
    if (p == 2)
        throw Error("Dyer-Lashof rewriting is implemented for odd primes only");
}

}  // namespace

DLDegree dl_degree(const DLWord& w, std::uint32_t p, long long q, std::optional<int> n)
{
    DLDegree out{q, true};
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (it->r < 0 || it->eps < 0 || it->eps > 1)
            throw Error("malformed Dyer-Lashof operation");
        if (n && 2 * it->r > out.degree + *n)
            out.in_range = false;
        const long long twice = 2 * it->r;
        if (twice < out.degree || (it->eps == 1 && twice == out.degree))
            out.vanishes = true;
        else if (twice == out.degree)
            out.has_power = true;
        out.degree += 2 * it->r * static_cast<long long>(p - 1) - it->eps;
    }
    return out;
}

std::uint32_t adem_binomial(long long n, long long k, std::uint32_t p)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    const PrimeField f(p);
    std::uint32_t result = 1;
    while (n > 0 || k > 0) {
        const auto a = static_cast<std::uint32_t>(n % p), b = static_cast<std::uint32_t>(k % p);
        if (b > a)
            return 0;
        // a choose b with a, b < p
        std::uint32_t num = 1, den = 1;
        for (std::uint32_t i = 0; i < b; ++i) {
            num = f.mul(num, a - i);
            den = f.mul(den, i + 1);
        }
        result = f.mul(result, f.mul(num, f.inv(den)));
        n /= p;
        k /= p;
    }
    return result;
}

bool admissible_pair(const DLOp& outer, const DLOp& inner, std::uint32_t p)
{
    return outer.r <= static_cast<long long>(p) * inner.r - inner.eps;
}

bool is_admissible(const DLWord& w, std::uint32_t p)
{
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (!admissible_pair(w[k], w[k + 1], p))
            return false;
    return true;
}

DLExpression adem_relation(const DLOp& outer, const DLOp& inner, std::uint32_t p, SignConvention sign)
{
    require_odd(p);
    const PrimeField f(p);
    DLExpression out;
    if (admissible_pair(outer, inner, p)) {
        out[{outer, inner}] = 1;
        return out;
    }
    const long long r = outer.r, s = inner.r, P = p;
    auto sgn = [&](long long j) -> std::uint32_t {
        return sign == SignConvention::CohenLadaMay ? f.sign(r + j) : 1;
    };
    for (long long j = 0; j <= r; ++j) {
        const long long first = r + s - j;
        if (first < 0)
            continue;
        if (inner.eps == 0) {
            const auto c = adem_binomial((P - 1) * (j - s) - 1, P * j - r, p);
            add_to(f, out, {{outer.eps, first}, {0, j}}, f.mul(sgn(j), c));
        } else {
            const auto c1 = adem_binomial((P - 1) * (j - s), P * j - r, p);
            if (outer.eps == 0)
                add_to(f, out, {{1, first}, {0, j}}, f.mul(sgn(j), c1));
            const auto c2 = adem_binomial((P - 1) * (j - s) - 1, P * j - r - 1, p);
            const auto c2s = sign == SignConvention::CohenLadaMay ? f.neg(f.mul(sgn(j), c2)) : c2;
            add_to(f, out, {{outer.eps, first}, {1, j}}, c2s);
        }
    }
    return out;
}

DLExpression adem_rewrite(const DLExpression& e, const DLContext& ctx, RewriteStrategy strategy)
{
    require_odd(ctx.p);
    const PrimeField f(ctx.p);
    DLExpression done, pending = e;
    std::size_t rounds = 0;
    while (!pending.empty()) {
        if (++rounds > 100000)
            throw Error("Adem rewriting did not terminate");
        DLExpression next;
        for (const auto& [w, c] : pending) {
            std::optional<std::size_t> at;
            for (std::size_t k = 0; k + 1 < w.size(); ++k)
                if (!admissible_pair(w[k], w[k + 1], ctx.p)) {
                    at = k;
                    if (strategy == RewriteStrategy::Leftmost)
                        break;
                }
            if (!at) {
                add_to(f, done, w, c);
                continue;
            }
            for (const auto& [pair, c2] : adem_relation(w[*at], w[*at + 1], ctx.p, ctx.sign)) {
                DLWord nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*at));
                nw.insert(nw.end(), pair.begin(), pair.end());
                nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(*at) + 2, w.end());
                add_to(f, next, nw, f.mul(c, c2));
            }
        }
        pending = std::move(next);
    }
    return done;
}

DLWord parse_dl_word(const std::string& text)
{
    std::istringstream in(text);
    std::string tok;
    DLWord w;
    int pending_beta = 0;
    auto parse_q = [&](const std::string& t, int eps) {
        if (t.size() < 3 || t.compare(0, 2, "Q^") != 0)
            throw Error("cannot parse Dyer-Lashof token '" + t + "'");
        const auto digits = t.substr(2);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw Error("cannot parse Dyer-Lashof token '" + t + "'");
        w.push_back({eps, std::stoll(digits)});
    };
    while (in >> tok) {
        if (tok == "b" || tok == "b^1") {
            if (pending_beta)
                throw Error("two consecutive betas");
            pending_beta = 1;
        } else if (tok == "b^0") {
        } else if (tok.rfind("bQ^", 0) == 0) {
            if (pending_beta)
                throw Error("two consecutive betas");
            parse_q(tok.substr(1), 1);
        } else if (tok.rfind("\xce\xb2Q^", 0) == 0) {
            if (pending_beta)
                throw Error("two consecutive betas");
            parse_q(tok.substr(2), 1);
        } else {
            parse_q(tok, pending_beta);
            pending_beta = 0;
        }
    }
    if (pending_beta)
        throw Error("beta without a following operation");
    return w;
}

std::string format_dl_word(const DLWord& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (const auto& op : w) {
        if (!s.empty())
            s += " ";
        s += (op.eps ? "bQ^" : "Q^") + std::to_string(op.r);
    }
    return s;
}

std::string format_dl_expression(const DLExpression& e)
{
    if (e.empty())
        return "0";
    std::string s;
    for (const auto& [w, c] : e) {
        if (!s.empty())
            s += " + ";
        if (c != 1)
            s += std::to_string(c) + " ";
        s += format_dl_word(w);
    }
    return s;
}

BoundExpression bind_expression(const DLExpression& e, const GradedAlgebra& a, const FpVector& x)
{
    const auto& f = a.field();
    BoundExpression out;
    std::optional<int> deg;
    for (std::size_t b = 0; b < x.size(); ++b)
        if (x[b] != 0) {
            if (deg && *deg != a.module().degree(b))
                throw Error("Dyer-Lashof words bind only to homogeneous elements");
            deg = a.module().degree(b);
        }
    for (const auto& [w, c] : e) {
        BoundTerm t{0, DLWord(w.rbegin(), w.rend())};
        for (std::size_t b = 0; b < x.size(); ++b)
            if (x[b] != 0) {
                t.base = static_cast<std::uint32_t>(b);
                add_to(f, out, t, f.mul(c, x[b]));
            }
    }
    return out;
}

BoundExpression apply_instability(const BoundExpression& e, const GradedAlgebra& a, const DLContext& ctx)
{
    require_odd(ctx.p);
    const auto& f = a.field();
    const auto p = static_cast<long long>(ctx.p);
    BoundExpression out;
    for (const auto& [t, c] : e) {
        // current class: (ops applied to base)^(p^k); d0 is the degree of the
        // part inside the powers
        std::vector<DLOp> ops;
        unsigned k = 0;
        long long d0 = a.module().degree(t.base);
        bool zero = false;
        auto power_in_a_vanishes = [&] {
            if (!ops.empty())
                return false;
            FpVector y = a.basis_vector(t.base);
            for (unsigned i = 0; i < k; ++i)
                y = a.power(y, ctx.p);
            return std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; });
        };
        for (const auto& layer : t.layers) {
            if (layer.eps == power_layer.eps) {
                ++k;
            } else {
                long long d = d0;
                for (unsigned i = 0; i < k; ++i)
                    d *= p;
                if (2 * layer.r < d || (layer.eps == 1 && 2 * layer.r == d)) {
                    zero = true;
                    break;
                }
                // Cartan: Q^r(y^p) = (Q^{r/p} y)^p, and zero when p does not
                // divide r; beta Q^r(y^p) = 0
                long long r = layer.r;
                for (unsigned i = 0; i < k && !zero; ++i) {
                    if (layer.eps == 1 || r % p != 0)
                        zero = true;
                    r /= p;
                }
                if (zero)
                    break;
                if (layer.eps == 0 && 2 * r == d0) {
                    ++k;
                } else {
                    ops.push_back({layer.eps, r});
                    d0 += 2 * r * (p - 1) - layer.eps;
                }
            }
            if (power_in_a_vanishes()) {
                zero = true;
                break;
            }
        }
        if (zero)
            continue;
        if (ops.empty()) {
            FpVector y = a.basis_vector(t.base);
            for (unsigned i = 0; i < k; ++i)
                y = a.power(y, ctx.p);
            for (std::size_t b = 0; b < y.size(); ++b)
                if (y[b] != 0)
                    add_to(f, out, BoundTerm{static_cast<std::uint32_t>(b), {}}, f.mul(c, y[b]));
            continue;
        }
        ops.insert(ops.end(), k, power_layer);
        add_to(f, out, BoundTerm{t.base, ops}, c);
    }
    return out;
}

BoundExpression adem_rewrite(const BoundExpression& e, const GradedAlgebra& a, const DLContext& ctx,
                             RewriteStrategy strategy)
{
    const auto& f = a.field();
    BoundExpression out;
    for (const auto& [t, c] : e) {
        // partial results: layers built so far (inside out) with coefficients
        std::map<std::vector<DLOp>, std::uint32_t> acc{{{}, c}};
        std::size_t k = 0;
        while (k <= t.layers.size()) {
            std::size_t end = k;
            while (end < t.layers.size() && t.layers[end].eps != power_layer.eps)
                ++end;
            DLWord run(t.layers.rend() - static_cast<std::ptrdiff_t>(end),
                       t.layers.rend() - static_cast<std::ptrdiff_t>(k));
            const auto rewritten = run.empty() ? DLExpression{{{}, 1}} : adem_rewrite(DLExpression{{run, 1}}, ctx, strategy);
            std::map<std::vector<DLOp>, std::uint32_t> next;
            for (const auto& [prefix, pc] : acc)
                for (const auto& [w, wc] : rewritten) {
                    auto layers = prefix;
                    layers.insert(layers.end(), w.rbegin(), w.rend());
                    if (end < t.layers.size())
                        layers.push_back(power_layer);
                    auto& slot = next[layers];
                    slot = f.add(slot, f.mul(pc, wc));
                }
            acc = std::move(next);
            k = end + 1;
        }
        for (const auto& [layers, lc] : acc)
            add_to(f, out, BoundTerm{t.base, layers}, lc);
    }
    return out;
}

BoundExpression bound_normal_form(const BoundExpression& e, const GradedAlgebra& a, const DLContext& ctx)
{
    auto cur = e;
    for (int round = 0; round < 1000; ++round) {
        auto next = adem_rewrite(apply_instability(cur, a, ctx), a, ctx);
        if (next == cur)
            return cur;
        cur = std::move(next);
    }
    throw Error("bound normal form did not stabilize");
}

std::string format_bound(const BoundTerm& t, const GradedAlgebra& a)
{
    std::string s = a.module().name(t.base);
    for (const auto& layer : t.layers) {
        if (layer.eps == power_layer.eps)
            s = "(" + s + ")^" + std::to_string(a.p());
        else
            s = (layer.eps ? "bQ^" : "Q^") + std::to_string(layer.r) + " " + s;
    }
    return s;
}

CartanExpansion cartan_expand(const CartanFactor& x, const CartanFactor& y, const DLOp& op, const DLContext& ctx)
{
    require_odd(ctx.p);
    if (op.eps < 0 || op.eps > 1 || op.r < 0)
        throw Error("malformed Dyer-Lashof operation");
    const PrimeField f(ctx.p);
    const long long deg = x.degree + y.degree;
    if (ctx.n) {
        if (2 * op.r == deg + *ctx.n)
            throw Error("top operation: the Gamma correction is out of scope");
        if (2 * op.r > deg + *ctx.n)
            throw Error("operation outside the range 2r <= q + n");
    }
    // word for beta^eps Q^i on a factor, or nullopt when it vanishes
    auto on = [](const CartanFactor& z, int eps, long long i) -> std::optional<DLWord> {
        if (z.unit)
            return (i == 0 && eps == 0) ? std::optional<DLWord>(DLWord{}) : std::nullopt;
        if (2 * i < z.degree || (eps == 1 && 2 * i == z.degree))
            return std::nullopt;
        return DLWord{{eps, i}};
    };
    CartanExpansion out;
    auto add = [&](const std::optional<DLWord>& a, const std::optional<DLWord>& b, std::uint32_t c) {
        if (!a || !b)
            return;
        auto& slot = out[{*a, *b}];
        slot = f.add(slot, c);
        if (slot == 0)
            out.erase({*a, *b});
    };
    for (long long i = 0; i <= op.r; ++i) {
        const long long j = op.r - i;
        if (op.eps == 0) {
            add(on(x, 0, i), on(y, 0, j), 1);
        } else {
            add(on(x, 1, i), on(y, 0, j), 1);
            add(on(x, 0, i), on(y, 1, j), f.sign(x.degree));
        }
    }
    return out;
}

AdmissibleBasis admissible_basis(int q, std::optional<int> n, std::uint32_t p, long long max_degree)
{
    require_odd(p);
    AdmissibleBasis out;
    if (q > max_degree)
        return out;
    const long long P = p;
    std::vector<std::pair<long long, DLWord>> found;
    // word is outermost first; extend on the outside
    std::function<void(DLWord&, long long)> rec = [&](DLWord& w, long long d) {
        found.emplace_back(d, w);
        for (int eps = 0; eps <= 1; ++eps)
            for (long long r = d / 2 + 1;; ++r) {
                if (n && 2 * r > d + *n)
                    break;
                const long long nd = d + 2 * r * (P - 1) - eps;
                if (nd > max_degree)
                    break;
                const DLOp op{eps, r};
                if (!w.empty() && !admissible_pair(op, w.front(), p))
                    break;
                w.insert(w.begin(), op);
                rec(w, nd);
                w.erase(w.begin());
            }
    };
    DLWord w;
    rec(w, q);
    std::sort(found.begin(), found.end());
    for (auto& [d, word] : found) {
        out.poincare[d] += 1;
        out.words.push_back(std::move(word));
    }
    return out;
}

}  // namespace polarlab
