#include "polarlab/dieudonne.hpp"

#include "polarlab/field.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace polarlab {

namespace {

IntMatrix zeros(std::size_t r, std::size_t c) { return IntMatrix(r, std::vector<long long>(c, 0)); }

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner, std::size_t cols)
{
    IntMatrix out = zeros(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

void reduce_rows(IntMatrix& m, const std::vector<unsigned>& exps, std::uint32_t p)
{
    for (std::size_t r = 0; r < m.size(); ++r) {
        const long long q = ipow(p, exps[r]);
        for (auto& x : m[r])
            x = mod_floor(x, q);
    }
}

std::string word_name(const std::string& w) { return w; }

}  // namespace

std::size_t DieudonneModule::rank(int n) const
{
    auto it = exponents.find(n);
    return it == exponents.end() ? 0 : it->second.size();
}

unsigned DieudonneModule::length(int n) const
{
    auto it = exponents.find(n);
    if (it == exponents.end())
        return 0;
    return std::accumulate(it->second.begin(), it->second.end(), 0u);
}

unsigned DieudonneModule::total_length() const
{
    unsigned s = 0;
    for (const auto& [n, e] : exponents)
        s += length(n);
    return s;
}

std::vector<int> DieudonneModule::degrees() const
{
    std::vector<int> d;
    for (const auto& [n, e] : exponents)
        if (!e.empty())
            d.push_back(n);
    return d;
}

IntMatrix DieudonneModule::f_matrix(int n) const
{
    const int t = n * static_cast<int>(p);
    auto it = F.find(n);
    if (it != F.end())
        return it->second;
    return zeros(rank(t), rank(n));
}

IntMatrix DieudonneModule::v_matrix(int n) const
{
    const int s = n * static_cast<int>(p);
    auto it = V.find(n);
    if (it != V.end())
        return it->second;
    return zeros(rank(n), rank(s));
}

void DieudonneModule::normalize()
{
    for (auto it = exponents.begin(); it != exponents.end();) {
        for (auto e : it->second)
            if (e == 0)
                throw Error("Dieudonne module: cyclic factor of order 1 in degree " + std::to_string(it->first));
        it = it->second.empty() ? exponents.erase(it) : std::next(it);
    }
    auto clean = [&](std::map<int, IntMatrix>& maps, bool is_f) {
        for (auto it = maps.begin(); it != maps.end();) {
            const int n = it->first;
            const int src = is_f ? n : n * static_cast<int>(p);
            const int tgt = is_f ? n * static_cast<int>(p) : n;
            auto& m = it->second;
            if (m.size() != rank(tgt))
                throw Error(std::string(is_f ? "F" : "V") + " matrix at degree " + std::to_string(n) +
                            " has the wrong number of rows");
            for (const auto& row : m)
                if (row.size() != rank(src))
                    throw Error(std::string(is_f ? "F" : "V") + " matrix at degree " + std::to_string(n) +
                                " has the wrong number of columns");
            if (rank(tgt) > 0)
                reduce_rows(m, exponents.at(tgt), p);
            bool zero = true;
            for (const auto& row : m)
                for (auto x : row)
                    zero = zero && x == 0;
            it = zero ? maps.erase(it) : std::next(it);
        }
    };
    clean(F, true);
    clean(V, false);
}

unsigned image_length(const IntMatrix& t, const std::vector<unsigned>& source, const std::vector<unsigned>& target,
                      std::uint32_t p)
{
    if (target.empty() || source.empty())
        return 0;
    const unsigned top = *std::max_element(target.begin(), target.end());
    IntMatrix rel;
    for (std::size_t c = 0; c < source.size(); ++c) {
        std::vector<long long> row(target.size());
        for (std::size_t r = 0; r < target.size(); ++r)
            row[r] = t[r][c];
        rel.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < target.size(); ++r) {
        std::vector<long long> row(target.size(), 0);
        row[r] = ipow(p, target[r]);
        rel.push_back(std::move(row));
    }
    const auto coker = smith_p_group(rel, target.size(), p, top + 1);
    const unsigned tl = std::accumulate(target.begin(), target.end(), 0u);
    const unsigned cl = std::accumulate(coker.exponents.begin(), coker.exponents.end(), 0u);
    return tl - cl;
}

DieudonneReport check_dieudonne(const DieudonneModule& m)
{
    DieudonneReport r;
    const auto p = m.p;
    auto report = [&](std::string s) {
        if (r.violations.size() < 50)
            r.violations.push_back(std::move(s));
    };
    auto exps = [&](int n) {
        auto it = m.exponents.find(n);
        return it == m.exponents.end() ? std::vector<unsigned>{} : it->second;
    };
    // well-definedness: p^{e_c} * column c vanishes in the target
    auto well_defined = [&](const char* name, int key, const IntMatrix& t, int src, int tgt) {
        const auto es = exps(src), et = exps(tgt);
        if (t.size() != et.size())
            return report(std::string(name) + " at degree " + std::to_string(key) + ": wrong shape");
        for (std::size_t row = 0; row < et.size(); ++row) {
            if (t[row].size() != es.size())
                return report(std::string(name) + " at degree " + std::to_string(key) + ": wrong shape");
            for (std::size_t c = 0; c < es.size(); ++c) {
                const long long q = ipow(p, et[row]);
                if (mod_floor(mod_floor(t[row][c], q) * ipow(p, es[c]), q) != 0)
                    report(std::string(name) + " at degree " + std::to_string(key) + " is not well defined on generator " +
                           std::to_string(c));
            }
        }
    };
    for (const auto& [n, t] : m.F)
        well_defined("F", n, t, n, n * static_cast<int>(p));
    for (const auto& [n, t] : m.V)
        well_defined("V", n, t, n * static_cast<int>(p), n);
    if (!r.ok())
        return r;

    auto is_p_times_identity = [&](const IntMatrix& t, const std::vector<unsigned>& e) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            const long long q = ipow(p, e[i]);
            for (std::size_t j = 0; j < e.size(); ++j)
                if (mod_floor(t[i][j] - (i == j ? static_cast<long long>(p) : 0), q) != 0)
                    return false;
        }
        return true;
    };
    for (int n = 0; static_cast<long long>(n) * p <= m.max_degree; ++n) {
        const int pn = n * static_cast<int>(p);
        const auto f = m.f_matrix(n), v = m.v_matrix(n);
        if (!is_p_times_identity(multiply(v, f, m.rank(pn), m.rank(n)), exps(n)))
            report("VF != p on degree " + std::to_string(n));
        if (!is_p_times_identity(multiply(f, v, m.rank(n), m.rank(pn)), exps(pn)))
            report("FV != p on degree " + std::to_string(pn));
    }
    const auto r0 = m.rank(0);
    if (r0 > 0) {
        const auto v = m.v_matrix(0);
        IntMatrix power = v;
        const auto e0 = exps(0);
        for (unsigned k = 1; k <= m.length(0); ++k) {
            reduce_rows(power, e0, p);
            power = multiply(power, v, r0, r0);
        }
        reduce_rows(power, e0, p);
        for (const auto& row : power)
            for (auto x : row)
                if (x != 0) {
                    report("V is not nilpotent on degree 0");
                    return r;
                }
    }
    return r;
}

Fingerprint fingerprint(const DieudonneModule& m, unsigned max_word_length)
{
    Fingerprint fp;
    fp.exponents = m.exponents;
    for (auto it = fp.exponents.begin(); it != fp.exponents.end();)
        it = it->second.empty() ? fp.exponents.erase(it) : std::next(it);
    for (auto& [n, e] : fp.exponents)
        std::sort(e.begin(), e.end());
    const auto p = static_cast<int>(m.p);
    auto exps = [&](int n) {
        auto it = m.exponents.find(n);
        return it == m.exponents.end() ? std::vector<unsigned>{} : it->second;
    };
    std::vector<std::string> words{""};
    for (unsigned len = 1; len <= max_word_length; ++len) {
        std::vector<std::string> next;
        for (const auto& w : words)
            if (w.size() == len - 1)
                for (char c : {'F', 'V'})
                    next.push_back(std::string(1, c) + w);
        words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& w : words) {
        if (w.empty())
            continue;
        for (int n : m.degrees()) {
            int d = n;
            IntMatrix t = zeros(m.rank(n), m.rank(n));
            for (std::size_t i = 0; i < m.rank(n); ++i)
                t[i][i] = 1;
            bool defined = true;
            for (auto it = w.rbegin(); it != w.rend() && defined; ++it) {
                if (*it == 'F') {
                    if (static_cast<long long>(d) * p > m.max_degree) {
                        defined = false;
                        break;
                    }
                    t = multiply(m.f_matrix(d), t, m.rank(d), m.rank(n));
                    d *= p;
                } else {
                    if (d % p != 0) {
                        defined = false;
                        break;
                    }
                    t = multiply(m.v_matrix(d / p), t, m.rank(d), m.rank(n));
                    d /= p;
                }
                reduce_rows(t, exps(d), m.p);
            }
            if (!defined)
                continue;
            const auto im = image_length(t, exps(n), exps(d), m.p);
            fp.rows[{word_name(w), n}] = {im, m.length(n) - im};
        }
    }
    return fp;
}

std::string Fingerprint::first_difference(const Fingerprint& o) const
{
    auto show = [](const std::vector<unsigned>& e) {
        std::string s = "[";
        for (std::size_t i = 0; i < e.size(); ++i)
            s += (i ? "," : "") + std::to_string(e[i]);
        return s + "]";
    };
    std::set<int> degs;
    for (const auto& [n, e] : exponents)
        degs.insert(n);
    for (const auto& [n, e] : o.exponents)
        degs.insert(n);
    for (int n : degs) {
        auto a = exponents.count(n) ? exponents.at(n) : std::vector<unsigned>{};
        auto b = o.exponents.count(n) ? o.exponents.at(n) : std::vector<unsigned>{};
        if (a != b)
            return "degree " + std::to_string(n) + ": cyclic exponents " + show(a) + " vs " + show(b);
    }
    std::set<std::pair<std::string, int>> keys;
    for (const auto& [k, v] : rows)
        keys.insert(k);
    for (const auto& [k, v] : o.rows)
        keys.insert(k);
    for (const auto& k : keys) {
        auto a = rows.count(k) ? rows.at(k) : std::pair<unsigned, unsigned>{0, 0};
        auto b = o.rows.count(k) ? o.rows.at(k) : std::pair<unsigned, unsigned>{0, 0};
        if (a != b)
            return "word " + k.first + " on degree " + std::to_string(k.second) + ": |im| = p^" +
                   std::to_string(a.first) + ", |ker| = p^" + std::to_string(a.second) + " vs |im| = p^" +
                   std::to_string(b.first) + ", |ker| = p^" + std::to_string(b.second);
    }
    return {};
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Yes:
        return "yes";
    case Verdict::No:
        return "no";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

bool verify_isomorphism(const DieudonneModule& m, const DieudonneModule& n, const std::map<int, IntMatrix>& iso)
{
    if (m.p != n.p)
        return false;
    const auto p = m.p;
    std::set<int> degs;
    for (int d : m.degrees())
        degs.insert(d);
    for (int d : n.degrees())
        degs.insert(d);
    auto phi = [&](int d) {
        auto it = iso.find(d);
        return it != iso.end() ? it->second : zeros(n.rank(d), m.rank(d));
    };
    auto exps = [](const DieudonneModule& x, int d) {
        auto it = x.exponents.find(d);
        return it == x.exponents.end() ? std::vector<unsigned>{} : it->second;
    };
    for (int d : degs) {
        if (m.length(d) != n.length(d))
            return false;
        auto t = phi(d);
        if (t.size() != n.rank(d))
            return false;
        const auto em = exps(m, d), en = exps(n, d);
        for (std::size_t r = 0; r < en.size(); ++r) {
            if (t[r].size() != em.size())
                return false;
            for (std::size_t c = 0; c < em.size(); ++c) {
                const long long q = ipow(p, en[r]);
                if (mod_floor(mod_floor(t[r][c], q) * ipow(p, em[c]), q) != 0)
                    return false;
            }
        }
        if (image_length(t, em, en, p) != m.length(d))
            return false;
    }
    auto same = [&](IntMatrix a, IntMatrix b, const std::vector<unsigned>& e) {
        reduce_rows(a, e, p);
        reduce_rows(b, e, p);
        return a == b;
    };
    for (int d = 0; static_cast<long long>(d) * p <= std::max(m.max_degree, n.max_degree); ++d) {
        const int pd = d * static_cast<int>(p);
        // phi_{pd} F^M = F^N phi_d
        if (!same(multiply(phi(pd), m.f_matrix(d), m.rank(pd), m.rank(d)),
                  multiply(n.f_matrix(d), phi(d), n.rank(d), m.rank(d)), exps(n, pd)))
            return false;
        // phi_d V^M = V^N phi_{pd}
        if (!same(multiply(phi(d), m.v_matrix(d), m.rank(d), m.rank(pd)),
                  multiply(n.v_matrix(d), phi(pd), n.rank(pd), m.rank(pd)), exps(n, d)))
            return false;
    }
    return true;
}

namespace {

struct Slot {
    int degree;
    std::size_t gen;
};

struct Constraint {
    // phi_tgt(X g_c) = Y phi_src(g_c) with X, Y the M- and N-maps src -> tgt
    int src;
    int tgt;
    std::size_t gen;
    bool is_f;
};

}  // namespace

IsomorphismResult is_isomorphic(const DieudonneModule& m, const DieudonneModule& n, const IsomorphismOptions& options)
{
    IsomorphismResult res;
    if (m.p != n.p) {
        res.verdict = Verdict::No;
        res.reason = "different primes";
        return res;
    }
    const auto p = m.p;
    const auto fm = fingerprint(m, options.fingerprint_word_length);
    const auto fn = fingerprint(n, options.fingerprint_word_length);
    if (!(fm == fn)) {
        res.verdict = Verdict::No;
        res.reason = "fingerprints differ: " + fm.first_difference(fn);
        return res;
    }
    if (m.total_length() > options.max_total_length) {
        res.reason = "module order p^" + std::to_string(m.total_length()) + " exceeds the search bound p^" +
                     std::to_string(options.max_total_length);
        return res;
    }
    auto exps = [](const DieudonneModule& x, int d) {
        auto it = x.exponents.find(d);
        return it == x.exponents.end() ? std::vector<unsigned>{} : it->second;
    };

    // assignment order: degrees ascending, generators within a degree
    std::vector<Slot> slots;
    std::map<std::pair<int, std::size_t>, std::size_t> position;
    for (int d : m.degrees())
        for (std::size_t c = 0; c < m.rank(d); ++c) {
            position[{d, c}] = slots.size();
            slots.push_back({d, c});
        }
    // candidate images by (degree, exponent): elements of N_d of that exact order
    std::map<std::pair<int, unsigned>, std::vector<std::vector<long long>>> candidates;
    for (int d : m.degrees()) {
        const auto en = exps(n, d);
        const auto em = exps(m, d);
        std::set<unsigned> wanted(em.begin(), em.end());
        std::vector<long long> y(en.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == en.size()) {
                unsigned ord = 0;
                for (std::size_t i = 0; i < en.size(); ++i) {
                    if (y[i] == 0)
                        continue;
                    unsigned v = 0;
                    long long t = y[i];
                    while (t % p == 0) {
                        t /= p;
                        ++v;
                    }
                    ord = std::max(ord, en[i] - v);
                }
                if (wanted.count(ord))
                    candidates[{d, ord}].push_back(y);
                return;
            }
            for (long long v = 0; v < ipow(p, en[k]); ++v) {
                y[k] = v;
                rec(k + 1);
            }
        };
        if (n.length(d) > 20) {
            res.reason = "degree " + std::to_string(d) + " is too large to enumerate";
            return res;
        }
        rec(0);
    }
    // constraints become checkable once their last involved slot is assigned
    std::vector<std::vector<Constraint>> ready(slots.size());
    for (int d : m.degrees()) {
        const int pd = d * static_cast<int>(p);
        for (std::size_t c = 0; c < m.rank(d); ++c) {
            std::size_t last = position.at({d, c});
            if (static_cast<long long>(pd) <= m.max_degree) {
                const auto f = m.f_matrix(d);
                for (std::size_t r = 0; r < f.size(); ++r)
                    if (f[r][c] != 0)
                        last = std::max(last, position.at({pd, r}));
                ready[last].push_back({d, pd, c, true});
            }
        }
        if (d % static_cast<int>(p) == 0) {
            const int q = d / static_cast<int>(p);
            const auto v = m.v_matrix(q);
            for (std::size_t c = 0; c < m.rank(d); ++c) {
                std::size_t last = position.at({d, c});
                for (std::size_t r = 0; r < v.size(); ++r)
                    if (v[r][c] != 0)
                        last = std::max(last, position.at({q, r}));
                ready[last].push_back({d, q, c, false});
            }
        }
    }
    std::map<int, IntMatrix> phi;
    for (int d : m.degrees())
        phi[d] = zeros(n.rank(d), m.rank(d));
    auto image_of = [&](int d, const std::vector<long long>& x) {
        // phi_d applied to the M-coordinates x
        const auto en = exps(n, d);
        std::vector<long long> y(en.size(), 0);
        const auto& t = phi.at(d);
        for (std::size_t r = 0; r < en.size(); ++r) {
            long long s = 0;
            const long long q = ipow(p, en[r]);
            for (std::size_t c = 0; c < x.size(); ++c)
                s = mod_floor(s + mod_floor(t[r][c], q) * mod_floor(x[c], q), q);
            y[r] = s;
        }
        return y;
    };
    auto check = [&](const Constraint& k) {
        const auto em_src = m.rank(k.src);
        std::vector<long long> g(em_src, 0);
        g[k.gen] = 1;
        const auto mx = k.is_f ? m.f_matrix(k.src) : m.v_matrix(k.tgt);
        const auto nx = k.is_f ? n.f_matrix(k.src) : n.v_matrix(k.tgt);
        std::vector<long long> xg(m.rank(k.tgt), 0);
        for (std::size_t r = 0; r < xg.size(); ++r)
            xg[r] = mx[r][k.gen];
        std::vector<long long> lhs = m.rank(k.tgt) ? image_of(k.tgt, xg) : std::vector<long long>{};
        const auto pg = image_of(k.src, g);
        const auto en = exps(n, k.tgt);
        for (std::size_t r = 0; r < en.size(); ++r) {
            long long s = 0;
            const long long q = ipow(p, en[r]);
            for (std::size_t c = 0; c < pg.size(); ++c)
                s = mod_floor(s + mod_floor(nx[r][c], q) * pg[c], q);
            if (s != (lhs.empty() ? 0 : lhs[r]))
                return false;
        }
        return true;
    };
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::function<bool(std::size_t)> search = [&](std::size_t k) {
        if (k == slots.size())
            return true;
        const auto [d, c] = slots[k];
        const unsigned e = exps(m, d)[c];
        const auto& cands = candidates[{d, e}];
        for (const auto& y : cands) {
            if (++nodes > options.node_budget) {
                exhausted = true;
                return false;
            }
            for (std::size_t r = 0; r < y.size(); ++r)
                phi[d][r][c] = y[r];
            bool ok = true;
            for (const auto& con : ready[k])
                if (!check(con)) {
                    ok = false;
                    break;
                }
            if (ok && c + 1 == m.rank(d))
                ok = image_length(phi[d], exps(m, d), exps(n, d), p) == m.length(d);
            if (ok && search(k + 1))
                return true;
            if (exhausted)
                return false;
        }
        for (std::size_t r = 0; r < n.rank(d); ++r)
            phi[d][r][c] = 0;
        return false;
    };
    if (search(0)) {
        res.verdict = Verdict::Yes;
        res.reason = "explicit F,V-equivariant isomorphism found";
        res.witness = phi;
        return res;
    }
    if (exhausted) {
        res.reason = "search budget of " + std::to_string(options.node_budget) + " nodes exhausted";
        return res;
    }
    res.verdict = Verdict::No;
    res.reason = "fingerprints agree but exhaustive search found no isomorphism";
    return res;
}

}  // namespace polarlab
