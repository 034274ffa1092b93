#include "polarlab/cowitt.hpp"
#include "polarlab/dieudonne.hpp"
#include "polarlab/dyer_lashof.hpp"
#include "polarlab/fmodule.hpp"
#include "polarlab/hopf.hpp"
#include "polarlab/json_io.hpp"
#include "polarlab/polar.hpp"
#include "polarlab/witt.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>

using namespace polarlab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_inconclusive = 3;

struct Options {
    std::string input;
    std::string output;
    std::string a;
    std::string b;
    std::vector<std::string> files;
    std::optional<std::uint32_t> p;
    std::optional<int> max_degree;
    std::optional<unsigned> length;
    std::optional<unsigned> n_max;
    std::uint64_t seed = 1;
    bool table = false;
};

Options opts;

void flatten(const Json& j, const std::string& prefix, std::ostream& out)
{
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << "\t" << j.dump() << "\n";
    }
}

void emit(const Json& j)
{
    std::ostringstream ss;
    if (opts.table)
        flatten(j, "", ss);
    else
        ss << j.dump(2) << "\n";
    if (opts.output.empty()) {
        std::cout << ss.str();
    } else {
        std::ofstream out(opts.output);
        if (!out)
            throw Error("cannot write " + opts.output);
        out << ss.str();
    }
}

Json load(const std::string& path)
{
    if (path.empty())
        throw Error("an input file is required (-i)");
    return read_json_file(path);
}

void check_p(std::uint32_t actual, const std::string& what)
{
    if (opts.p && *opts.p != actual)
        throw Error("inconsistent p: --p " + std::to_string(*opts.p) + " but " + what + " has p = " +
                    std::to_string(actual));
}

void check_max_degree(int actual, const std::string& what)
{
    if (opts.max_degree && *opts.max_degree != actual)
        throw Error("inconsistent max degree: --max-degree " + std::to_string(*opts.max_degree) + " but " + what +
                    " has " + std::to_string(actual));
}

bool looks_polar(const Json& j)
{
    if (!j.is_object())
        return false;
    if (j.contains("mu") || j.contains("polarize"))
        return true;
    return j.contains("preset") && j.at("preset") == "free_polar";
}

PolarAlgebra load_polar(const std::string& path)
{
    const auto j = load(path);
    auto a = looks_polar(j) ? polar_from_json(j) : polarize(algebra_from_json(j));
    check_p(a.p(), path);
    check_max_degree(a.max_degree(), path);
    return a;
}

WittCarrier load_carrier(const std::string& path)
{
    const auto j = load(path);
    if (looks_polar(j)) {
        auto a = polar_from_json(j);
        check_p(a.p(), path);
        check_max_degree(a.max_degree(), path);
        return WittCarrier::from_polar(std::move(a));
    }
    auto a = algebra_from_json(j);
    check_p(a.p(), path);
    check_max_degree(a.max_degree(), path);
    return WittCarrier::from_algebra(std::move(a));
}

Json report_json(const std::vector<std::string>& violations)
{
    return Json{{"ok", violations.empty()}, {"violations", violations}};
}

int cmd_polarize()
{
    auto a = algebra_from_json(load(opts.input));
    check_p(a.p(), opts.input);
    check_max_degree(a.max_degree(), opts.input);
    emit(to_json(polarize(a)));
    return exit_ok;
}

int cmd_split()
{
    const auto a = load_polar(opts.input);
    const auto s = p_typical_split(a);
    Json blocks = Json::array();
    for (const auto& [j, b] : s.blocks)
        blocks.push_back({{"block", j}, {"algebra", to_json(b)}});
    emit(Json{{"degree_zero", to_json(s.degree_zero)}, {"blocks", blocks}});
    return exit_ok;
}

int cmd_hull()
{
    const auto a = load_polar(opts.input);
    const auto h = hull(a, a.max_degree());
    Json unit = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        unit.push_back({{"element", a.module().name(i)},
                        {"image", combination_to_json(to_sparse(h.unit_map[i]), h.algebra.module())}});
    Json ranks = Json::object();
    for (const auto& [deg, r] : unit_map_ranks(a, h))
        ranks[std::to_string(deg)] = r;
    emit(Json{{"algebra", to_json(h.algebra)}, {"unit_map", unit}, {"unit_map_ranks", ranks}});
    return exit_ok;
}

int cmd_check()
{
    const auto j = load(opts.input);
    if (looks_polar(j)) {
        const auto a = polar_from_json(j);
        check_p(a.p(), opts.input);
        const auto rep = check_assoc(a);
        auto out = report_json(rep.violations);
        out["kind"] = "polar";
        out["p_polar"] = rep.ok() && is_p_polar(a);
        emit(out);
    } else {
        const auto a = algebra_from_json(j);
        check_p(a.p(), opts.input);
        auto out = report_json(check_algebra(a).violations);
        out["kind"] = "algebra";
        emit(out);
    }
    return exit_ok;
}

WittVector load_witt(const WittCarrier& c, const std::string& path)
{
    auto v = witt_vector_from_json(load(path), c.module());
    check_witt_vector(c, v);
    if (opts.length && *opts.length != v.length())
        throw Error("inconsistent length: --length " + std::to_string(*opts.length) + " but " + path + " has length " +
                    std::to_string(v.length()));
    return v;
}

int cmd_witt_add()
{
    const auto c = load_carrier(opts.input);
    const auto u = load_witt(c, opts.a), v = load_witt(c, opts.b);
    emit(to_json(witt_add(c, u, v), c.module()));
    return exit_ok;
}

int cmd_witt_frobenius()
{
    const auto c = load_carrier(opts.input);
    emit(to_json(frobenius(c, load_witt(c, opts.a)), c.module()));
    return exit_ok;
}

int cmd_witt_verschiebung()
{
    const auto c = load_carrier(opts.input);
    emit(to_json(verschiebung(c, load_witt(c, opts.a)), c.module()));
    return exit_ok;
}

std::string teich_element;
int teich_degree = 0;

int cmd_witt_teichmuller()
{
    const auto c = load_carrier(opts.input);
    if (!opts.length)
        throw Error("teichmuller needs --length");
    const auto& m = c.module();
    FpVector x = m.zero();
    x[m.index_of(teich_element)] = 1;
    emit(to_json(teichmuller(c, x, teich_degree, *opts.length), m));
    return exit_ok;
}

Json pieces_json(const CoWitt& cw)
{
    Json pieces = Json::array();
    for (const auto& [d, pc] : cw.pieces()) {
        Json exps = Json::array();
        for (auto e : pc.group.exponents)
            exps.push_back(e);
        pieces.push_back({{"degree", d},
                          {"witt_degree", pc.witt_degree},
                          {"witt_length", pc.witt_length},
                          {"digits", pc.digits.size()},
                          {"exponents", exps}});
    }
    return pieces;
}

int cmd_cowitt()
{
    const auto c = load_carrier(opts.input);
    const CoWitt cw(c, opts.n_max);
    emit(Json{{"pieces", pieces_json(cw)}, {"dieudonne", to_json(cowitt_dieudonne(c, opts.n_max))}});
    return exit_ok;
}

FModule load_fmodule()
{
    auto m = fmodule_from_json(load(opts.input));
    check_p(m.p(), opts.input);
    check_max_degree(m.module.max_degree(), opts.input);
    return m;
}

int cmd_fmod_decompose()
{
    emit(to_json(decompose(load_fmodule())));
    return exit_ok;
}

int cmd_fmod_lift()
{
    const auto r = lift_to_polar(load_fmodule());
    emit(Json{{"algebra", to_json(r.algebra)}, {"warnings", r.warnings}});
    return exit_ok;
}

int cmd_fmod_dualize()
{
    emit(to_json(dualize(load_fmodule())));
    return exit_ok;
}

std::size_t fmod_max_dim = 20;

int cmd_fmod_random()
{
    if (!opts.p || !opts.max_degree)
        throw Error("fmod random needs --p and --max-degree");
    std::mt19937_64 rng(opts.seed);
    emit(to_json(random_fmodule(*opts.p, *opts.max_degree, fmod_max_dim, rng)));
    return exit_ok;
}

int cmd_dieudonne_compute()
{
    const auto c = load_carrier(opts.input);
    emit(to_json(cowitt_dieudonne(c, opts.n_max)));
    return exit_ok;
}

unsigned compare_word_length = 4;

int cmd_dieudonne_compare()
{
    if (opts.files.size() != 2)
        throw Error("dieudonne compare needs exactly two module files");
    const auto m = dieudonne_from_json(load(opts.files[0]));
    const auto n = dieudonne_from_json(load(opts.files[1]));
    if (m.p != n.p)
        throw Error("inconsistent p across inputs: " + std::to_string(m.p) + " and " + std::to_string(n.p));
    if (m.max_degree != n.max_degree)
        throw Error("inconsistent max degree across inputs: " + std::to_string(m.max_degree) + " and " +
                    std::to_string(n.max_degree));
    check_p(m.p, opts.files[0]);
    for (const auto* x : {&m, &n}) {
        const auto rep = check_dieudonne(*x);
        if (!rep.ok())
            throw Error("not a Dieudonne module: " + rep.violations.front());
    }
    IsomorphismOptions io;
    io.fingerprint_word_length = compare_word_length;
    const auto r = is_isomorphic(m, n, io);
    Json out{{"verdict", to_string(r.verdict)}, {"reason", r.reason}};
    if (r.verdict == Verdict::Yes) {
        Json w = Json::object();
        for (const auto& [d, t] : r.witness) {
            Json rows = Json::array();
            for (const auto& row : t)
                rows.push_back(row);
            w[std::to_string(d)] = rows;
        }
        out["witness"] = w;
    }
    emit(out);
    return r.verdict == Verdict::Inconclusive ? exit_inconclusive : exit_ok;
}

struct HopfArgs {
    std::string source;
    int j = 2;
    std::optional<unsigned> n;
    std::string which = "h";
} hopf_args;

HopfAlgebra hopf_source()
{
    const auto& s = hopf_args.source;
    if (s == "lambda" || s == "counterexample") {
        if (!opts.p || !opts.max_degree)
            throw Error(s + " needs --p and --max-degree");
        if (s == "lambda")
            return lambda_p(hopf_args.j, *opts.p, hopf_args.n ? *hopf_args.n : lambda_top_index(hopf_args.j, *opts.p, *opts.max_degree),
                            *opts.max_degree);
        auto pair = counterexample_pair(*opts.p, hopf_args.j, *opts.max_degree);
        if (hopf_args.which == "h")
            return pair.h;
        if (hopf_args.which == "h_prime")
            return pair.h_prime;
        throw Error("--which must be h or h_prime");
    }
    const auto path = s == "file" || s.empty() ? opts.input : s;
    auto h = hopf_from_json(load(path));
    check_p(h.p(), path);
    check_max_degree(h.max_degree(), path);
    return h;
}

Json dims_json(const std::map<int, std::size_t>& m)
{
    Json j = Json::object();
    for (const auto& [d, n] : m)
        j[std::to_string(d)] = n;
    return j;
}

int cmd_hopf_check()
{
    emit(to_json(check_hopf(hopf_source())));
    return exit_ok;
}

int cmd_hopf_primitives()
{
    const auto h = hopf_source();
    const auto prim = primitives(h);
    Json basis = Json::array();
    for (const auto& e : prim.basis())
        basis.push_back({{"name", e.name}, {"degree", e.degree}});
    std::map<int, std::size_t> dims;
    for (int d : prim.degrees())
        dims[d] = prim.dim_in_degree(d);
    emit(Json{{"primitives", basis},
              {"primitive_dims", dims_json(dims)},
              {"indecomposable_dims", dims_json(indecomposable_dimensions(h))}});
    return exit_ok;
}

int cmd_hopf_verify_cofree()
{
    const auto h = hopf_source();
    emit(to_json(verify_cofree(h, opts.max_degree.value_or(h.max_degree()))));
    return exit_ok;
}

int cmd_hopf_dual()
{
    emit(to_json(dual_hopf(hopf_source())));
    return exit_ok;
}

int cmd_hopf_lambda()
{
    hopf_args.source = "lambda";
    emit(to_json(hopf_source()));
    return exit_ok;
}

int cmd_hopf_counterexample()
{
    if (!opts.p || !opts.max_degree)
        throw Error("counterexample needs --p and --max-degree");
    const auto pair = counterexample_pair(*opts.p, hopf_args.j, *opts.max_degree);
    const auto dims = [](const HopfAlgebra& x) {
        std::map<int, std::size_t> m;
        const auto prim = primitives(x);
        for (int d : prim.degrees())
            m[d] = prim.dim_in_degree(d);
        return m;
    };
    emit(Json{{"h", to_json(verify_cofree(pair.h, *opts.max_degree))},
              {"h_prime", to_json(verify_cofree(pair.h_prime, *opts.max_degree))},
              {"h_dual_primitive_dims", dims_json(dims(pair.h_dual))},
              {"h_prime_dual_primitive_dims", dims_json(dims(pair.h_prime_dual))}});
    return exit_ok;
}

struct DLArgs {
    std::string text;
    std::string n = "inf";
    int gen_degree = 0;
    std::string strategy = "leftmost";
    std::string sign = "cohen-lada-may";
    std::string element;
    int q = 0;
    long long max_degree = 0;
} dl_args;

DLContext dl_context()
{
    DLContext ctx;
    ctx.p = opts.p.value_or(3);
    if (ctx.p == 2 || !is_prime(ctx.p))
        throw Error("dl needs an odd prime p");
    ctx.q = dl_args.gen_degree;
    if (dl_args.n != "inf") {
        try {
            ctx.n = std::stoi(dl_args.n);
        } catch (const std::exception&) {
            throw Error("--n must be an integer or inf");
        }
    }
    if (dl_args.sign == "unsigned")
        ctx.sign = SignConvention::Unsigned;
    else if (dl_args.sign != "cohen-lada-may")
        throw Error("--sign must be cohen-lada-may or unsigned");
    return ctx;
}

RewriteStrategy dl_strategy()
{
    if (dl_args.strategy == "leftmost")
        return RewriteStrategy::Leftmost;
    if (dl_args.strategy == "rightmost")
        return RewriteStrategy::Rightmost;
    throw Error("--strategy must be leftmost or rightmost");
}

int cmd_dl_rewrite()
{
    const auto ctx = dl_context();
    const auto w = parse_dl_word(dl_args.text);
    if (!opts.input.empty()) {
        const auto a = algebra_from_json(load(opts.input));
        if (a.p() != ctx.p)
            throw Error("inconsistent p: --p " + std::to_string(ctx.p) + " but " + opts.input + " has p = " +
                        std::to_string(a.p()));
        if (dl_args.element.empty())
            throw Error("an algebra input needs --element");
        const auto x = a.basis_vector(a.module().index_of(dl_args.element));
        auto bctx = ctx;
        bctx.q = a.module().degree(a.module().index_of(dl_args.element));
        const auto nf = bound_normal_form(bind_expression(DLExpression{{w, 1}}, a, x), a, bctx);
        Json terms = Json::array();
        for (const auto& [t, c] : nf)
            terms.push_back({{"coef", c}, {"term", format_bound(t, a)}});
        emit(Json{{"input", format_dl_word(w)}, {"normal_form", terms}});
        return exit_ok;
    }
    const auto deg = dl_degree(w, ctx.p, ctx.q, ctx.n);
    const auto nf = adem_rewrite(DLExpression{{w, 1}}, ctx, dl_strategy());
    Json terms = Json::array();
    for (const auto& [word, c] : nf) {
        const auto wd = dl_degree(word, ctx.p, ctx.q, ctx.n);
        terms.push_back({{"coef", c},
                         {"word", format_dl_word(word)},
                         {"unstable_zero", wd.vanishes},
                         {"p_th_power", wd.has_power}});
    }
    emit(Json{{"input", format_dl_word(w)},
              {"degree", deg.degree},
              {"in_range", deg.in_range},
              {"admissible", is_admissible(w, ctx.p)},
              {"normal_form", terms},
              {"text", format_dl_expression(nf)}});
    return exit_ok;
}

int cmd_dl_basis()
{
    auto ctx = dl_context();
    const auto b = admissible_basis(dl_args.q, ctx.n, ctx.p, dl_args.max_degree);
    Json words = Json::array();
    for (const auto& w : b.words)
        words.push_back({{"word", format_dl_word(w)}, {"degree", dl_degree(w, ctx.p, dl_args.q, ctx.n).degree}});
    Json poincare = Json::object();
    for (const auto& [d, n] : b.poincare)
        poincare[std::to_string(d)] = n;
    emit(Json{{"words", words}, {"poincare", poincare}});
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"polarlab: exact computations with p-polar algebras, Witt vectors and Dieudonne modules"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-o,--output", opts.output, "write the result to a file");
    app.add_flag("--table", opts.table, "print a flattened key/value table instead of JSON");

    std::function<int()> run;
    auto common = [&](CLI::App* c, std::function<int()> f, bool input = true) {
        if (input)
            c->add_option("-i,--input", opts.input, "input JSON file");
        c->add_option("--p", opts.p, "prime (checked against the inputs)");
        c->add_option("--max-degree", opts.max_degree, "truncation degree D (checked against the inputs)");
        c->callback([&run, f] { run = f; });
    };

    common(app.add_subcommand("polarize", "polarization of a graded commutative algebra"), cmd_polarize);
    common(app.add_subcommand("split", "p-typical splitting of a p-polar algebra"), cmd_split);
    common(app.add_subcommand("hull", "p-polar hull and unit map"), cmd_hull);
    common(app.add_subcommand("check", "axiom check for an algebra or p-polar algebra"), cmd_check);

    auto* witt = app.add_subcommand("witt", "Witt vector arithmetic");
    witt->require_subcommand(1);
    witt->fallthrough();
    auto witt_cmd = [&](const char* name, const char* desc, std::function<int()> f, bool two) {
        auto* c = witt->add_subcommand(name, desc);
        common(c, f);
        c->add_option("--length", opts.length, "Witt length n");
        c->add_option("-a", opts.a, "Witt vector JSON")->required(std::string(name) != "teichmuller");
        if (two)
            c->add_option("-b", opts.b, "Witt vector JSON")->required();
        return c;
    };
    witt_cmd("add", "sum of two Witt vectors", cmd_witt_add, true);
    witt_cmd("frobenius", "Frobenius W_{n+1} -> W_n", cmd_witt_frobenius, false);
    witt_cmd("verschiebung", "Verschiebung W_n -> W_{n+1}", cmd_witt_verschiebung, false);
    auto* teich = witt_cmd("teichmuller", "Teichmuller representative of a basis element", cmd_witt_teichmuller, false);
    teich->add_option("--element", teich_element, "basis element name")->required();
    teich->add_option("--degree", teich_degree, "degree of the element")->required();

    auto* cw = app.add_subcommand("cowitt", "co-Witt vectors of a p-polar algebra");
    common(cw, cmd_cowitt);
    cw->add_option("--n-max", opts.n_max, "stage used for the degree-0 colimit");

    auto* fmod = app.add_subcommand("fmod", "F-modules");
    fmod->require_subcommand(1);
    fmod->fallthrough();
    common(fmod->add_subcommand("decompose", "interval decomposition"), cmd_fmod_decompose);
    common(fmod->add_subcommand("lift", "p-polar algebra realizing an F-module"), cmd_fmod_lift);
    common(fmod->add_subcommand("dualize", "dual V-module"), cmd_fmod_dualize);
    auto* frand = fmod->add_subcommand("random", "random F-module");
    common(frand, cmd_fmod_random, false);
    frand->add_option("--seed", opts.seed, "random seed");
    frand->add_option("--max-dim", fmod_max_dim, "maximal total dimension");

    auto* dieu = app.add_subcommand("dieudonne", "Dieudonne modules");
    dieu->require_subcommand(1);
    dieu->fallthrough();
    auto* dcomp = dieu->add_subcommand("compute", "Dieudonne module of a p-polar algebra");
    common(dcomp, cmd_dieudonne_compute);
    dcomp->add_option("--n-max", opts.n_max, "stage used for the degree-0 colimit");
    auto* dcmp = dieu->add_subcommand("compare", "isomorphism test");
    common(dcmp, cmd_dieudonne_compare, false);
    dcmp->add_option("files", opts.files, "two Dieudonne module files")->required()->expected(2);
    dcmp->add_option("--word-length", compare_word_length, "maximal F/V word length for invariants");

    auto* hopf = app.add_subcommand("hopf", "Hopf algebras");
    hopf->require_subcommand(1);
    hopf->fallthrough();
    auto hopf_cmd = [&](const char* name, const char* desc, std::function<int()> f, bool source) {
        auto* c = hopf->add_subcommand(name, desc);
        common(c, f);
        c->add_option("--j", hopf_args.j, "block degree j");
        if (source) {
            c->add_option("source", hopf_args.source, "lambda, counterexample, file, or a JSON path");
            c->add_option("--n", hopf_args.n, "last generator index for lambda (default: all generators below D)");
            c->add_option("--which", hopf_args.which, "h or h_prime for counterexample");
        }
        return c;
    };
    hopf_cmd("check", "Hopf algebra axioms", cmd_hopf_check, true);
    hopf_cmd("primitives", "primitives and indecomposables", cmd_hopf_primitives, true);
    hopf_cmd("verify-cofree", "cofreeness report", cmd_hopf_verify_cofree, true);
    hopf_cmd("dual", "graded dual", cmd_hopf_dual, true);
    hopf_cmd("lambda", "the Hopf algebra Lambda_p", cmd_hopf_lambda, false)
        ->add_option("--n", hopf_args.n, "last generator index (default: all generators below D)");
    hopf_cmd("counterexample", "the pair H, H'", cmd_hopf_counterexample, false);

    auto* dl = app.add_subcommand("dl", "Dyer-Lashof operations");
    dl->require_subcommand(1);
    dl->fallthrough();
    auto* rw = dl->add_subcommand("rewrite", "Adem normal form of a word");
    common(rw, cmd_dl_rewrite);
    rw->add_option("word", dl_args.text, "whitespace-separated operations, outermost first")->required();
    rw->add_option("--n", dl_args.n, "loop parameter n or inf");
    rw->add_option("--gen-degree", dl_args.gen_degree, "degree of the generator");
    rw->add_option("--strategy", dl_args.strategy, "leftmost or rightmost");
    rw->add_option("--sign", dl_args.sign, "cohen-lada-may or unsigned");
    rw->add_option("--element", dl_args.element, "basis element of the input algebra");
    auto* basis = dl->add_subcommand("basis", "admissible basis of the free algebra on one class");
    common(basis, cmd_dl_basis, false);
    basis->add_option("--q", dl_args.q, "generator degree")->required();
    basis->add_option("--n", dl_args.n, "loop parameter n or inf");
    // --max-degree is shared with the other commands; copied below
    basis->callback([&run] {
        run = [] {
            if (!opts.max_degree)
                throw Error("dl basis needs --max-degree");
            dl_args.max_degree = *opts.max_degree;
            return cmd_dl_basis();
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }
    try {
        return run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
}
