#include "polarlab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace polarlab {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key)
{
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(std::string("field '") + key + "' has the wrong type");
    }
}

std::uint32_t reduce_coef(long long c, std::uint32_t p)
{
    const long long r = c % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::vector<BasisElement> basis_from_json(const Json& j)
{
    std::vector<BasisElement> basis;
    for (const auto& b : field(j, "basis"))
        basis.push_back({get<std::string>(b, "name"), get<int>(b, "degree")});
    return basis;
}

Json basis_to_json(const GradedModule& m)
{
    Json arr = Json::array();
    for (const auto& b : m.basis())
        arr.push_back({{"name", b.name}, {"degree", b.degree}});
    return arr;
}

std::uint32_t prime_of(const Json& j)
{
    const auto p = get<long long>(j, "p");
    if (p < 2 || p > 1'000'000)
        throw Error("p must be a prime below 10^6");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw Error("p = " + std::to_string(p) + " is not prime");
    return static_cast<std::uint32_t>(p);
}

GradedModule module_from_json(const Json& j)
{
    return GradedModule(prime_of(j), get<int>(j, "max_degree"), basis_from_json(j));
}

std::vector<Generator> generators_from_json(const Json& j)
{
    std::vector<Generator> gens;
    for (const auto& g : field(j, "generators")) {
        Generator gen{get<std::string>(g, "name"), get<int>(g, "degree"), 0};
        if (g.contains("height"))
            gen.height = get<unsigned>(g, "height");
        gens.push_back(gen);
    }
    return gens;
}

Json matrix_to_json(const FpMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m.at(r, c));
        rows.push_back(row);
    }
    return rows;
}

FpMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, std::uint32_t p)
{
    if (!j.is_array() || j.size() != rows)
        throw Error("matrix has " + std::to_string(j.is_array() ? j.size() : 0) + " rows, expected " +
                    std::to_string(rows));
    FpMatrix m(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw Error("matrix row " + std::to_string(r) + " has the wrong length, expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = reduce_coef(j[r][c].get<long long>(), p);
    }
    return m;
}

Json int_matrix_to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (const auto& row : m)
        rows.push_back(row);
    return rows;
}

}  // namespace

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json(ss.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

SparseVec combination_from_json(const Json& j, const GradedModule& m)
{
    if (!j.is_array())
        throw Error("a linear combination must be an array of {coef, basis}");
    FpVector v = m.zero();
    const PrimeField f(m.p());
    for (const auto& t : j) {
        const auto i = m.index_of(get<std::string>(t, "basis"));
        v[i] = f.add(v[i], reduce_coef(get<long long>(t, "coef"), m.p()));
    }
    return to_sparse(v);
}

Json combination_to_json(const SparseVec& v, const GradedModule& m)
{
    Json arr = Json::array();
    for (const auto& [i, c] : v)
        arr.push_back({{"coef", c}, {"basis", m.name(i)}});
    return arr;
}

GradedAlgebra algebra_from_json(const Json& j)
{
    if (j.is_object() && j.contains("preset")) {
        const auto kind = get<std::string>(j, "preset");
        if (kind == "tensor_product") {
            const auto& factors = field(j, "factors");
            if (!factors.is_array() || factors.size() < 2)
                throw Error("tensor_product needs at least two factors");
            auto a = algebra_from_json(factors[0]);
            for (std::size_t i = 1; i < factors.size(); ++i)
                a = tensor_product(a, algebra_from_json(factors[i]));
            return a;
        }
        const auto p = prime_of(j);
        const auto d = get<int>(j, "max_degree");
        const auto gens = generators_from_json(j);
        if (kind == "truncated_polynomial")
            return truncated_polynomial(gens, p, d);
        if (kind == "exterior")
            return exterior(gens, p, d);
        if (kind == "dual_of")
            return dual_of(gens, p, d);
        if (kind == "quotient_monomial_ideal") {
            std::vector<std::vector<unsigned>> monomials;
            for (const auto& m : field(j, "monomials"))
                monomials.push_back(m.get<std::vector<unsigned>>());
            return quotient_monomial_ideal(gens, monomials, p, d);
        }
        throw Error("unknown algebra preset '" + kind + "'");
    }
    auto module = module_from_json(j);
    const auto unit = module.index_of(get<std::string>(j, "unit"));
    GradedAlgebra a(module, unit);
    if (j.contains("products"))
        for (const auto& pr : j.at("products"))
            a.set_product(module.index_of(get<std::string>(pr, "left")), module.index_of(get<std::string>(pr, "right")),
                          combination_from_json(field(pr, "value"), module));
    return a;
}

Json to_json(const GradedAlgebra& a)
{
    const auto& m = a.module();
    Json products = Json::array();
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t y = 0; y < a.dim(); ++y) {
            const auto& v = a.product(x, y);
            if (!v.empty())
                products.push_back({{"left", m.name(x)}, {"right", m.name(y)}, {"value", combination_to_json(v, m)}});
        }
    return Json{{"p", a.p()},
                {"max_degree", a.max_degree()},
                {"basis", basis_to_json(m)},
                {"unit", m.name(a.unit_index())},
                {"products", products}};
}

PolarAlgebra polar_from_json(const Json& j)
{
    if (j.is_object() && j.contains("polarize"))
        return polarize(algebra_from_json(j.at("polarize")));
    if (j.is_object() && j.contains("preset")) {
        const auto kind = get<std::string>(j, "preset");
        if (kind != "free_polar")
            throw Error("unknown polar preset '" + kind + "' (use {\"polarize\": ...} for algebra presets)");
        const auto p = prime_of(j);
        const auto d = get<int>(j, "max_degree");
        std::vector<BasisElement> basis;
        for (const auto& g : generators_from_json(j))
            basis.push_back({g.name, g.degree});
        return free_polar(GradedModule(p, d, basis), d);
    }
    PolarAlgebra a(module_from_json(j));
    if (j.contains("mu"))
        for (const auto& entry : j.at("mu")) {
            std::vector<std::uint32_t> args;
            for (const auto& name : field(entry, "args"))
                args.push_back(static_cast<std::uint32_t>(a.module().index_of(name.get<std::string>())));
            if (args.size() != a.p())
                throw Error("mu entries need exactly p arguments");
            a.set_mu(args, combination_from_json(field(entry, "value"), a.module()));
        }
    return a;
}

Json to_json(const PolarAlgebra& a)
{
    const auto& m = a.module();
    Json mu = Json::array();
    for (const auto& [args, value] : a.mu_table()) {
        if (value.empty())
            continue;
        Json names = Json::array();
        for (auto i : args)
            names.push_back(m.name(i));
        mu.push_back({{"args", names}, {"value", combination_to_json(value, m)}});
    }
    return Json{{"p", a.p()}, {"max_degree", a.max_degree()}, {"basis", basis_to_json(m)}, {"mu", mu}};
}

WittVector witt_vector_from_json(const Json& j, const GradedModule& m)
{
    WittVector v;
    v.degree = get<int>(j, "degree");
    const auto& entries = field(j, "entries");
    if (!entries.is_array() || entries.empty())
        throw Error("a Witt vector needs at least one entry");
    for (const auto& e : entries) {
        FpVector x = m.zero();
        if (e.is_object()) {
            for (const auto& [name, c] : e.items())
                x[m.index_of(name)] = reduce_coef(c.get<long long>(), m.p());
        } else {
            x = to_dense(combination_from_json(e, m), m.dim());
        }
        v.entries.push_back(std::move(x));
    }
    return v;
}

Json to_json(const WittVector& v, const GradedModule& m)
{
    Json entries = Json::array();
    for (const auto& e : v.entries) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                obj[m.name(i)] = e[i];
        entries.push_back(obj);
    }
    return Json{{"degree", v.degree}, {"entries", entries}};
}

FModule fmodule_from_json(const Json& j)
{
    FModule m{module_from_json(j), {}};
    const auto p = static_cast<int>(m.p());
    if (j.contains("F"))
        for (const auto& entry : j.at("F")) {
            const auto q = get<int>(entry, "degree");
            if (q <= 0 || static_cast<long long>(q) * p > m.module.max_degree())
                throw Error("F entry at degree " + std::to_string(q) + " leaves the truncation range");
            m.F[q] = matrix_from_json(field(entry, "matrix"), m.module.dim_in_degree(q * p), m.module.dim_in_degree(q),
                                      m.p());
        }
    validate(m);
    return m;
}

Json to_json(const FModule& m)
{
    Json fs = Json::array();
    for (const auto& [q, f] : m.F)
        fs.push_back({{"degree", q}, {"matrix", matrix_to_json(f)}});
    return Json{{"p", m.p()}, {"max_degree", m.module.max_degree()}, {"basis", basis_to_json(m.module)}, {"F", fs}};
}

Json to_json(const VModule& m)
{
    Json vs = Json::array();
    for (const auto& [q, v] : m.V)
        vs.push_back({{"degree", q}, {"matrix", matrix_to_json(v)}});
    return Json{{"p", m.p()}, {"max_degree", m.module.max_degree()}, {"basis", basis_to_json(m.module)}, {"V", vs}};
}

Json to_json(const Barcode& b)
{
    Json bars = Json::array();
    for (const auto& bar : b.bars)
        bars.push_back({{"start", bar.start}, {"length", bar.length}, {"ambiguous", bar.ambiguous}});
    return Json{{"p", b.p}, {"max_degree", b.max_degree}, {"dimension", b.dimension()}, {"bars", bars}};
}

DieudonneModule dieudonne_from_json(const Json& j)
{
    DieudonneModule m;
    m.p = prime_of(j);
    m.max_degree = get<int>(j, "max_degree");
    const auto& degrees = field(j, "degrees");
    if (!degrees.is_object())
        throw Error("'degrees' must be an object keyed by degree");
    std::map<int, const Json*> entries;
    for (const auto& [key, value] : degrees.items()) {
        int d = 0;
        try {
            std::size_t used = 0;
            d = std::stoi(key, &used);
            if (used != key.size())
                throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw Error("degree key '" + key + "' is not an integer");
        }
        if (d < 0 || d > m.max_degree)
            throw Error("degree " + key + " is outside [0, max_degree]");
        std::vector<unsigned> exps;
        for (const auto& o : field(value, "orders")) {
            auto order = o.get<long long>();
            unsigned e = 0;
            while (order > 1 && order % m.p == 0) {
                order /= m.p;
                ++e;
            }
            if (order != 1 || e == 0)
                throw Error("orders in degree " + key + " must be powers of p greater than 1");
            exps.push_back(e);
        }
        if (!exps.empty())
            m.exponents[d] = exps;
        entries[d] = &value;
    }
    auto read = [&](const Json& mat, std::size_t rows, std::size_t cols, const std::string& what) {
        if (!mat.is_array() || mat.size() != rows)
            throw Error(what + " has the wrong number of rows");
        IntMatrix t;
        for (const auto& row : mat) {
            auto r = row.get<std::vector<long long>>();
            if (r.size() != cols)
                throw Error(what + " has a row of the wrong length");
            t.push_back(std::move(r));
        }
        return t;
    };
    const int p = static_cast<int>(m.p);
    for (const auto& [d, value] : entries) {
        if (value->contains("F")) {
            const int t = d * p;
            if (t > m.max_degree)
                throw Error("F out of degree " + std::to_string(d) + " leaves the truncation range");
            m.F[d] = read(value->at("F"), m.rank(t), m.rank(d), "F in degree " + std::to_string(d));
        }
        if (value->contains("V")) {
            if (d % p != 0)
                throw Error("V out of degree " + std::to_string(d) + " needs a degree divisible by p");
            m.V[d / p] = read(value->at("V"), m.rank(d / p), m.rank(d), "V in degree " + std::to_string(d));
        }
    }
    m.normalize();
    return m;
}

Json to_json(const DieudonneModule& m)
{
    Json degrees = Json::object();
    const int p = static_cast<int>(m.p);
    for (int d : m.degrees()) {
        Json orders = Json::array();
        for (auto e : m.exponents.at(d)) {
            mpz_class o;
            mpz_ui_pow_ui(o.get_mpz_t(), m.p, e);
            orders.push_back(o.get_ui());
        }
        Json entry{{"orders", orders}};
        if (m.F.count(d))
            entry["F"] = int_matrix_to_json(m.F.at(d));
        if (d % p == 0 && m.V.count(d / p))
            entry["V"] = int_matrix_to_json(m.V.at(d / p));
        degrees[std::to_string(d)] = entry;
    }
    return Json{{"p", m.p}, {"max_degree", m.max_degree}, {"degrees", degrees}};
}

HopfAlgebra hopf_from_json(const Json& j)
{
    if (j.is_object() && j.contains("preset")) {
        const auto kind = get<std::string>(j, "preset");
        if (kind == "lambda_p") {
            const auto jj = get<int>(j, "j");
            const auto p = prime_of(j);
            const auto d = get<int>(j, "max_degree");
            return lambda_p(jj, p, j.contains("n") ? get<unsigned>(j, "n") : lambda_top_index(jj, p, d), d);
        }
        if (kind == "cof_u")
            return cof_u(algebra_from_json(field(j, "algebra")), get<int>(j, "max_degree"));
        if (kind == "exterior_hopf")
            return exterior_hopf(module_from_json(j));
        if (kind == "symmetric_tensor_coalgebra")
            return symmetric_tensor_coalgebra(module_from_json(j), get<int>(j, "max_degree"));
        if (kind == "counterexample") {
            auto pair = counterexample_pair(prime_of(j), get<int>(j, "j"), get<int>(j, "max_degree"));
            const auto which = j.contains("which") ? get<std::string>(j, "which") : std::string("h");
            if (which == "h")
                return pair.h;
            if (which == "h_prime")
                return pair.h_prime;
            throw Error("counterexample 'which' must be h or h_prime");
        }
        throw Error("unknown Hopf preset '" + kind + "'");
    }
    auto a = algebra_from_json(j);
    const auto& m = a.module();
    std::vector<Tensor> delta(a.dim());
    const PrimeField f(a.p());
    for (const auto& entry : field(j, "coproducts")) {
        const auto z = m.index_of(get<std::string>(entry, "element"));
        for (const auto& t : field(entry, "value")) {
            const auto l = static_cast<std::uint32_t>(m.index_of(get<std::string>(t, "left")));
            const auto r = static_cast<std::uint32_t>(m.index_of(get<std::string>(t, "right")));
            auto& slot = delta[z][{l, r}];
            slot = f.add(slot, reduce_coef(get<long long>(t, "coef"), a.p()));
            if (slot == 0)
                delta[z].erase({l, r});
        }
    }
    const bool has_product = !j.contains("has_product") || get<bool>(j, "has_product");
    return HopfAlgebra(std::move(a), std::move(delta), has_product);
}

Json to_json(const HopfAlgebra& h)
{
    auto j = to_json(h.algebra());
    const auto& m = h.module();
    Json cos = Json::array();
    for (std::size_t z = 0; z < h.dim(); ++z) {
        Json value = Json::array();
        for (const auto& [lr, c] : h.coproduct(z))
            value.push_back({{"coef", c}, {"left", m.name(lr.first)}, {"right", m.name(lr.second)}});
        cos.push_back({{"element", m.name(z)}, {"value", value}});
    }
    j["has_product"] = h.has_product();
    j["coproducts"] = cos;
    return j;
}

namespace {

Json dims_to_json(const std::map<int, std::size_t>& d)
{
    Json obj = Json::object();
    for (const auto& [k, v] : d)
        obj[std::to_string(k)] = v;
    return obj;
}

}  // namespace

Json to_json(const CofreeReport& r)
{
    return Json{{"criterion", r.criterion},
                {"passed", r.passed()},
                {"conilpotent", r.conilpotent},
                {"bicommutative", r.bicommutative},
                {"polar_closed", r.polar_closed},
                {"dimensions_match", r.dimensions_match},
                {"indecomposables_match", r.indecomposables_match},
                {"primitive_dims", dims_to_json(r.primitive_dims)},
                {"hopf_dims", dims_to_json(r.hopf_dims)},
                {"symmetric_dims", dims_to_json(r.symmetric_dims)},
                {"indecomposable_dims", dims_to_json(r.indecomposable_dims)},
                {"expected_indecomposable_dims", dims_to_json(r.expected_indecomposable_dims)},
                {"messages", r.messages}};
}

Json to_json(const HopfReport& r)
{
    return Json{{"ok", r.ok()},
                {"counit", r.counit},
                {"coassociative", r.coassociative},
                {"cocommutative", r.cocommutative},
                {"commutative", r.commutative},
                {"bialgebra", r.bialgebra},
                {"conilpotent", r.conilpotent},
                {"violations", r.violations}};
}

}  // namespace polarlab
