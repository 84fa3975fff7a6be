// Command-line front end: parse objects and morphisms, run the computations,
// print canonical forms and graded tables. See docs/formats.md for the JSON
// schemas and README.md for the built-in names.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "so2alg/json_io.hpp"

using namespace so2alg;
using nlohmann::json;

namespace {

struct Window {
    int lo = -10, hi = 10;
};

Window parse_window(const std::string& s) {
    auto colon = s.find(':', 1);  // allow a leading minus sign
    if (colon == std::string::npos) throw ParseError("window must look like a:b");
    Window w;
    try {
        w.lo = std::stoi(s.substr(0, colon));
        w.hi = std::stoi(s.substr(colon + 1));
    } catch (...) {
        throw ParseError("window must look like a:b with integers");
    }
    if (w.lo > w.hi) throw ParseError("window is empty");
    return w;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

std::map<int, int> parse_nu(const std::string& spec) {
    // "1=1,3=-2"
    std::map<int, int> nu;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("sphere spec must look like n=v,...");
        nu[std::stoi(item.substr(0, eq))] = std::stoi(item.substr(eq + 1));
    }
    return nu;
}

/// Built-in object names: S0, sphere:<nu-spec>, sigma:n, orbit:n.
std::optional<EffObj> builtin_object(const std::string& name) {
    if (name == "S0") return unit_obj();
    if (name.rfind("sphere:", 0) == 0) return sphere(parse_nu(name.substr(7)));
    if (name.rfind("sigma:", 0) == 0) return sigma(std::stoi(name.substr(6)));
    if (name.rfind("orbit:", 0) == 0)
        return pi_a(SpectrumExpr::orbit(std::stoi(name.substr(6))));
    return std::nullopt;
}

EffObj load_object(const std::string& arg) {
    if (auto b = builtin_object(arg)) return *b;
    json j = read_json_file(arg);
    return validate(io::effobjhat_from_json(j));
}

DGObj load_dg(const std::string& arg) {
    if (auto b = builtin_object(arg)) return DGObj::from_obj(*b);
    json j = read_json_file(arg);
    return io::dgobj_from_json(j);
}

SpectrumExpr parse_expr_inner(const std::string& s, size_t& pos) {
    auto match = [&](const std::string& tok) {
        if (s.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    };
    auto read_int = [&]() {
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("expected an integer in spectrum expression");
        return std::stoi(s.substr(start, pos - start));
    };
    if (match("S0")) return SpectrumExpr::s0();
    if (match("sigma:")) return SpectrumExpr::sigma(read_int());
    if (match("orbit:")) return SpectrumExpr::orbit(read_int());
    if (match("susp(")) {
        int k = read_int();
        if (!match(",")) throw ParseError("susp(k,expr)");
        SpectrumExpr inner = parse_expr_inner(s, pos);
        if (!match(")")) throw ParseError("susp(k,expr)");
        return SpectrumExpr::susp(k, std::move(inner));
    }
    if (match("wedge(")) {
        SpectrumExpr a = parse_expr_inner(s, pos);
        if (!match(",")) throw ParseError("wedge(expr,expr)");
        SpectrumExpr b = parse_expr_inner(s, pos);
        if (!match(")")) throw ParseError("wedge(expr,expr)");
        return SpectrumExpr::wedge(std::move(a), std::move(b));
    }
    throw ParseError("unknown spectrum expression at \"" + s.substr(pos) + "\"");
}

SpectrumExpr parse_expr(const std::string& s) {
    size_t pos = 0;
    SpectrumExpr e = parse_expr_inner(s, pos);
    if (pos != s.size()) throw ParseError("trailing input in spectrum expression");
    return e;
}

// ---------------------------------------------------------------------------
// rendering

std::string render_vs(const GradedVS& v) {
    if (v.is_zero()) return "0";
    std::map<int, size_t> dims;
    for (int d : v.degs()) dims[d]++;
    std::string out;
    for (auto& [d, m] : dims) {
        if (!out.empty()) out += " + ";
        out += "Q^" + std::to_string(m) + "<" + std::to_string(d) + ">";
    }
    return out;
}

std::string render_mod(const CompMod& m) {
    if (m.is_zero()) return "0";
    std::string out;
    for (int d : m.free_shifts) {
        if (!out.empty()) out += " + ";
        out += "Q[c]<" + std::to_string(d) + ">";
    }
    for (auto [d, k] : m.torsion) {
        if (!out.empty()) out += " + ";
        out += "Q[c]/(c^" + std::to_string(k) + ")<" + std::to_string(d) + ">";
    }
    return out;
}

std::string render_matrix(const GradedMat& m) {
    std::string out = "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        out += i ? "; " : "";
        for (size_t j = 0; j < m.cols(); ++j) {
            out += j ? ", " : "";
            out += m.entry(i, j).to_string();
        }
    }
    return out + "]";
}

void print_object(std::ostream& os, const EffObjHat& x) {
    os << "vertex:  " << render_vs(x.vertex) << "\n";
    os << "tail:    " << render_vs(x.tail.lattice);
    if (!x.tail.lattice.is_zero()) os << "  beta " << render_matrix(x.tail.beta);
    os << "\n";
    for (auto& [n, c] : x.exc) {
        os << "comp " << n << ":  " << render_mod(c.module);
        if (c.module.free_count()) os << "  beta " << render_matrix(c.beta);
        os << "\n";
    }
    if (x.exc.empty()) os << "(no exceptional components)\n";
}

std::string cgvs_cell(const CGVS& c, int d) {
    std::string out;
    if (size_t g = c.global_at(d)) out += "Q^" + std::to_string(g);
    if (size_t t = c.tail_at(d)) {
        if (!out.empty()) out += " + ";
        out += "Q^" + std::to_string(t) + "<all n>";
    }
    for (auto& [n, m] : c.exceptional)
        if (size_t e = c.exc_at(n, d)) {
            if (!out.empty()) out += " + ";
            out += "Q^" + std::to_string(e) + "@n=" + std::to_string(n);
        }
    return out.empty() ? "0" : out;
}

void print_cgvs(std::ostream& os, const CGVS& c) {
    os << "deg | dim\n";
    for (int d = c.hi; d >= c.lo; --d) os << std::setw(3) << d << " | " << cgvs_cell(c, d) << "\n";
}

void print_adams(std::ostream& os, const AdamsTable& t) {
    os << "deg | Hom | Ext | Total\n";
    for (int d = t.hi; d >= t.lo; --d) {
        std::string hom = cgvs_cell(t.hom_part, d);
        std::string ext = cgvs_cell(t.ext_part, d);
        std::string total;
        if (hom == "0" && ext == "0") total = "0";
        else if (hom == "0")
            total = ext;
        else if (ext == "0")
            total = hom;
        else
            total = hom + " + " + ext;
        os << std::setw(3) << d << " | " << hom << " | " << ext << " | " << total << "\n";
    }
}

// ---------------------------------------------------------------------------
// demo bundles

int demo_cofibre(std::ostream& os) {
    int failures = 0;
    auto line = [&](const std::string& name, bool ok) {
        os << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    EffObj s0 = unit_obj(), snu = sphere({{1, 1}}), sneg = sphere({{1, -1}});
    Mor f1 = hom_group(s0, snu, 0, 0).basis[0][0];
    f1 = f1.scaled(Rat(1) / f1.phi.q(0, 0));
    ConeResult c1 = cone(DGObj::from_obj(s0), DGObj::from_obj(snu), f1);
    line("cone(S0 -> S^{nu_1}) has homology Q_1<2>", homology(c1.obj) == sigma(1, 1));
    Mor f2 = hom_group(sneg, s0, 0, 0).basis[0][0];
    f2 = f2.scaled(Rat(1) / f2.phi.q(0, 0));
    ConeResult c2 = cone(DGObj::from_obj(sneg), DGObj::from_obj(s0), f2);
    line("cone(S^{-nu_1} -> S0) has homology Q_1<0>", homology(c2.obj) == sigma(1, -1));
    DiagVerdict v1 = verify_cofibre(l_star(DGObj::from_obj(s0)), l_star(DGObj::from_obj(snu)),
                                    l_star_mor(f1), cells_ka(1, 1), -8, 8);
    line("same cofibre as diagram modules", v1.ok);
    DiagVerdict v2 = verify_cofibre(l_star(DGObj::from_obj(sneg)), l_star(DGObj::from_obj(s0)),
                                    l_star_mor(f2), cells_ka(1, -1), -8, 8);
    line("negative sphere cofibre as diagram modules", v2.ok);
    return failures;
}

int demo_duals(std::ostream& os, unsigned seed) {
    int failures = 0;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> idx(1, 5), val(-2, 2), cnt(0, 2);
    for (int i = 0; i < 8; ++i) {
        std::map<int, int> nu;
        for (int k = cnt(rng); k-- > 0;) nu[idx(rng)] = val(rng);
        std::map<int, int> neg;
        for (auto [n, v] : nu)
            if (v != 0) neg[n] = -v;
        EffObj s = sphere(nu);
        bool ok = dual(s) == sphere(neg) && dual(dual(s)) == s;
        os << (ok ? "[pass] " : "[FAIL] ") << "dual(S^nu) = S^{-nu} for nu = ";
        bool first = true;
        for (auto [n, v] : nu) {
            os << (first ? "" : ",") << n << "=" << v;
            first = false;
        }
        if (nu.empty()) os << "0";
        os << "\n";
        if (!ok) ++failures;
    }
    DualityDecision d = is_dualizable(sigma(2));
    bool refused = !d.dualizable() && d.refusal && d.refusal->component == 2;
    os << (refused ? "[pass] " : "[FAIL] ")
       << "sigma:2 refused, obstruction located at its own component\n";
    if (!refused) ++failures;
    return failures;
}

int demo_kunneth(std::ostream& os, unsigned seed) {
    int failures = 0;
    std::mt19937 rng(seed);
    for (int n = 1; n <= 4; ++n) {
        DerivedTensorResult r =
            derived_tensor(DGObj::from_obj(sigma(n)), DGObj::from_obj(sigma(n)), -10, 10);
        os << (r.report.exact ? "[pass] " : "[FAIL] ") << "Kunneth exact on sigma:" << n
           << " (x) sigma:" << n << "\n";
        if (!r.report.exact) ++failures;
    }
    std::uniform_int_distribution<int> idx(1, 4), val(-1, 1), pick(0, 1);
    for (int i = 0; i < 6; ++i) {
        EffObj x = pick(rng) ? sigma(idx(rng)) : sphere({{idx(rng), val(rng)}});
        EffObj y = pick(rng) ? sigma(idx(rng)) : sphere({{idx(rng), val(rng)}});
        DerivedTensorResult r = derived_tensor(DGObj::from_obj(x), DGObj::from_obj(y), -10, 10);
        os << (r.report.exact ? "[pass] " : "[FAIL] ") << "Kunneth exact on random pair " << i
           << "\n";
        if (!r.report.exact) ++failures;
    }
    return failures;
}

int demo_adams(std::ostream& os) {
    int failures = 0;
    auto line = [&](const std::string& name, bool ok) {
        os << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    AdamsTable t = maps_table(SpectrumExpr::s0(), SpectrumExpr::s0(), -4, 4);
    line("[S0,S0] degree 0 is one copy of Q",
         t.hom_part.global_at(0) == 1 && t.ext_part.finite_dim_at(0) == 0 &&
             t.ext_part.tail_at(0) == 0);
    line("[S0,S0] degree 1 is one class per finite subgroup",
         t.hom_part.finite_dim_at(1) == 0 && t.ext_part.tail_at(1) == 1 &&
             t.ext_part.finite_dim_at(1) == 0);
    AdamsTable t2 = maps_table(SpectrumExpr::sigma(3), SpectrumExpr::s0(), -4, 4);
    size_t total = 0;
    for (int d = -4; d <= 4; ++d)
        total += t2.ext_part.finite_dim_at(d) + t2.ext_part.tail_at(d) +
                 t2.hom_part.finite_dim_at(d);
    line("[sigma:3,S0] is a single class, in degree 0 at component 3",
         total == 1 && t2.ext_part.exc_at(3, 0) == 1);
    return failures;
}

}  // namespace

int main(int argc, char** argv) {
    // fold "--window -2:2" style pairs into one token so values with a
    // leading minus parse cleanly
    std::vector<std::string> argvec;
    for (int i = 1; i < argc; ++i) {
        std::string cur = argv[i];
        if ((cur == "--window" || cur == "--output" || cur == "--seed") && i + 1 < argc) {
            argvec.push_back(cur + "=" + argv[i + 1]);
            ++i;
        } else {
            argvec.push_back(cur);
        }
    }

    CLI::App app{"exact computer algebra for the abelian model of rational "
                 "circle-equivariant spectra"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string window_str = "-10:10";
    std::string output = "table";
    unsigned seed = 2026;
    app.add_option("--window", window_str, "degree window a:b (inclusive)")->capture_default_str();
    app.add_option("--output", output, "table|json")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized demo suites")->capture_default_str();

    std::vector<std::string> args;
    auto add_args = [&](CLI::App* cmd, int n) {
        cmd->add_option("args", args)->expected(n);
    };

    auto* c_norm = app.add_subcommand("normalize", "canonical form of an object or ring element");
    add_args(c_norm, 1);
    auto* c_tensor = app.add_subcommand("tensor", "tensor product of two objects");
    add_args(c_tensor, 2);
    auto* c_hom = app.add_subcommand("hom", "hom group over the window");
    add_args(c_hom, 2);
    auto* c_ext = app.add_subcommand("ext", "Ext^1 over the window");
    add_args(c_ext, 2);
    auto* c_dual = app.add_subcommand("dual", "functional dual");
    add_args(c_dual, 1);
    auto* c_isd = app.add_subcommand("is-dualizable", "search for a duality witness");
    add_args(c_isd, 1);
    auto* c_hlgy = app.add_subcommand("homology", "homology of a differential graded object");
    add_args(c_hlgy, 1);
    auto* c_cone = app.add_subcommand("cone", "mapping cone of a morphism file");
    add_args(c_cone, 1);
    auto* c_maps = app.add_subcommand("maps", "the [X,Y] table via the Adams sequence");
    add_args(c_maps, 2);
    auto* c_pia = app.add_subcommand("pia", "algebraic homotopy of a spectrum expression");
    add_args(c_pia, 1);
    auto* c_gamma = app.add_subcommand("gamma", "coreflection of a diagram module");
    add_args(c_gamma, 1);
    auto* c_vc = app.add_subcommand("verify-cofibre", "cone of a morphism vs expected diagram");
    add_args(c_vc, 2);
    auto* c_demo = app.add_subcommand("demo", "run a named acceptance bundle");
    add_args(c_demo, 1);

    try {
        std::reverse(argvec.begin(), argvec.end());
        app.parse(argvec);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Window w = parse_window(window_str);
        bool as_json = output == "json";
        std::ostream& os = std::cout;

        if (c_norm->parsed()) {
            if (auto b = builtin_object(args[0])) {
                if (as_json) os << io::to_json(b->canonical()).dump(2) << "\n";
                else
                    print_object(os, b->canonical());
                return 0;
            }
            json j = read_json_file(args[0]);
            if (j.contains("slices")) {
                OFElem x = io::ofelem_from_json(j);
                os << io::to_json(x).dump(2) << "\n";
                return 0;
            }
            if (j.contains("a") && j.contains("b") && j.contains("c")) {
                DiagObj d = io::diagobj_from_json(j);
                os << io::to_json(d).dump(2) << "\n";
                return 0;
            }
            if (j.contains("d")) {
                DGObj x = io::dgobj_from_json(j);
                EffObjHat c = canonical_hat(x.carrier);
                if (as_json) os << io::to_json(c).dump(2) << "\n";
                else
                    print_object(os, c);
                return 0;
            }
            EffObj x = validate(io::effobjhat_from_json(j));
            if (as_json) os << io::to_json(x.canonical()).dump(2) << "\n";
            else
                print_object(os, x.canonical());
            return 0;
        }
        if (c_tensor->parsed()) {
            EffObj r = tensor(load_object(args[0]), load_object(args[1]));
            if (as_json) os << io::to_json(r.canonical()).dump(2) << "\n";
            else
                print_object(os, r.canonical());
            return 0;
        }
        if (c_hom->parsed()) {
            HomGroup h = hom_group(load_object(args[0]), load_object(args[1]), w.lo, w.hi);
            if (as_json) os << io::to_json(h.report).dump(2) << "\n";
            else {
                os << "Hom over window " << w.lo << ":" << w.hi << "\n";
                print_cgvs(os, h.report);
            }
            return 0;
        }
        if (c_ext->parsed()) {
            CGVS e = ext1(load_object(args[0]), load_object(args[1]), w.lo, w.hi);
            if (as_json) os << io::to_json(e).dump(2) << "\n";
            else {
                os << "Ext^1 over window " << w.lo << ":" << w.hi << "\n";
                print_cgvs(os, e);
            }
            return 0;
        }
        if (c_dual->parsed()) {
            EffObj r = dual(load_object(args[0]));
            if (as_json) os << io::to_json(r.canonical()).dump(2) << "\n";
            else
                print_object(os, r.canonical());
            return 0;
        }
        if (c_isd->parsed()) {
            DualityDecision d = is_dualizable(load_object(args[0]));
            if (d.dualizable()) {
                os << "dualizable: coevaluation and evaluation found, triangle "
                      "identities hold exactly\n";
                return 0;
            }
            os << "refused: " << d.refusal->reason << "\n";
            os << "probe " << d.refusal->probe << " fails at component " << d.refusal->component
               << ", degree " << d.refusal->degree << "\n";
            return 1;
        }
        if (c_hlgy->parsed()) {
            EffObj h = homology(load_dg(args[0]));
            if (as_json) os << io::to_json(h.canonical()).dump(2) << "\n";
            else
                print_object(os, h.canonical());
            return 0;
        }
        if (c_cone->parsed()) {
            Mor f = io::mor_from_json(read_json_file(args[0]));
            ConeResult c = cone(DGObj::make(f.src, Mor::zero(f.src, f.src, -1)),
                                DGObj::make(f.dst, Mor::zero(f.dst, f.dst, -1)), f);
            os << "cone carrier:\n";
            print_object(os, canonical_hat(c.obj.carrier));
            os << "homology:\n";
            print_object(os, homology(c.obj).canonical());
            return 0;
        }
        if (c_maps->parsed()) {
            AdamsTable t = maps_table(parse_expr(args[0]), parse_expr(args[1]), w.lo, w.hi);
            if (as_json) os << io::to_json(t).dump(2) << "\n";
            else {
                os << "[" << args[0] << ", " << args[1] << "] over window " << w.lo << ":" << w.hi
                   << "  (Total = Hom + Ext, split)\n";
                print_adams(os, t);
            }
            return 0;
        }
        if (c_pia->parsed()) {
            SpectrumExpr e = parse_expr(args[0]);
            EffObj x = pi_a(e);
            size_t summands = x.hat().exc_indices().size();
            if (e.kind == SpectrumExpr::Kind::Orbit)
                os << summands << " summands: one cell per divisor of " << e.n << "\n";
            if (as_json) os << io::to_json(x.canonical()).dump(2) << "\n";
            else
                print_object(os, x.canonical());
            return 0;
        }
        if (c_gamma->parsed()) {
            DiagObj d = io::diagobj_from_json(read_json_file(args[0]));
            DGObj g = gamma_diag(d);
            if (as_json) os << io::to_json(g).dump(2) << "\n";
            else
                print_object(os, canonical_hat(g.carrier));
            return 0;
        }
        if (c_vc->parsed()) {
            Mor f = io::mor_from_json(read_json_file(args[0]));
            DiagObj expected = [&] {
                if (args[1].rfind("cell:", 0) == 0) {
                    auto comma = args[1].find(',');
                    int n = std::stoi(args[1].substr(5, comma - 5));
                    int k = std::stoi(args[1].substr(comma + 1));
                    return cells_ka(n, k);
                }
                if (args[1] == "S0") return cells_ka(0, 0);
                return io::diagobj_from_json(read_json_file(args[1]));
            }();
            DiagObj src = l_star(DGObj::make(f.src, Mor::zero(f.src, f.src, -1)));
            DiagObj dst = l_star(DGObj::make(f.dst, Mor::zero(f.dst, f.dst, -1)));
            DiagVerdict v = verify_cofibre(src, dst, l_star_mor(f), expected, w.lo, w.hi);
            if (v.ok) {
                os << "pass: cone is quasi-isomorphic to the expected diagram over " << w.lo
                   << ":" << w.hi << "\n";
                return 0;
            }
            os << "fail: first mismatch on leg " << v.leg << " at component " << v.component
               << ", degree " << v.degree << "\n";
            return 1;
        }
        if (c_demo->parsed()) {
            int failures = 0;
            if (args[0] == "cofibre") failures = demo_cofibre(os);
            else if (args[0] == "duals")
                failures = demo_duals(os, seed);
            else if (args[0] == "kunneth")
                failures = demo_kunneth(os, seed);
            else if (args[0] == "adams")
                failures = demo_adams(os);
            else
                throw ParseError("unknown demo suite: " + args[0] +
                                 " (expected cofibre|duals|kunneth|adams)");
            return failures == 0 ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const NotInAError& e) {
        std::cerr << "not an object of the abelian model: " << e.what() << "\n";
        return 1;
    } catch (const NotEffectiveError& e) {
        std::cerr << "not finitely describable: " << e.what() << "\n";
        return 1;
    } catch (const WindowTooSmallError& e) {
        std::cerr << "window too small: " << e.what() << "; widen to at least " << e.needed_lo()
                  << ":" << e.needed_hi() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
