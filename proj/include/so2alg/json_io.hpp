#pragma once

#include <json.hpp>

#include "so2alg/base_ring.hpp"
#include "so2alg/diagram_sa.hpp"

namespace so2alg::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// ring elements: {"slices": [{"k": int, "tail": "p/q", "exc": {"n": "p/q"}}]}

inline json to_json(const TailSeq& s) {
    json exc = json::object();
    for (auto& [n, v] : s.exceptions()) exc[std::to_string(n)] = v.to_string();
    return json{{"tail", s.tail().to_string()}, {"exc", exc}};
}

inline TailSeq tailseq_from_json(const json& j) {
    std::map<int, Rat> exc;
    if (j.contains("exc"))
        for (auto& [k, v] : j.at("exc").items()) exc[std::stoi(k)] = Rat::parse(v.get<std::string>());
    Rat tail = j.contains("tail") ? Rat::parse(j.at("tail").get<std::string>()) : Rat(0);
    return TailSeq(std::move(exc), tail);
}

inline json to_json(const OFElem& x) {
    json slices = json::array();
    for (auto& [k, s] : x.slices()) {
        json e = to_json(s);
        e["k"] = k;
        slices.push_back(e);
    }
    return json{{"slices", slices}};
}

inline OFElem ofelem_from_json(const json& j) {
    std::map<int, TailSeq> slices;
    for (auto& e : j.at("slices")) slices[e.at("k").get<int>()] = tailseq_from_json(e);
    return OFElem(std::move(slices));
}

inline json to_json(const LocElem& x) {
    json slices = json::array();
    for (auto& [k, s] : x.slices()) {
        json e = to_json(s);
        e["k"] = k;
        slices.push_back(e);
    }
    return json{{"slices", slices}};
}

inline LocElem locelem_from_json(const json& j) {
    std::map<int, TailSeq> slices;
    for (auto& e : j.at("slices")) slices[e.at("k").get<int>()] = tailseq_from_json(e);
    return LocElem(std::move(slices));
}

// ---------------------------------------------------------------------------
// graded vector spaces: [[degree, dim], ...]

inline json to_json(const GradedVS& v) {
    json out = json::array();
    std::map<int, size_t> dims;
    for (int d : v.degs()) dims[d]++;
    for (auto& [d, m] : dims) out.push_back(json::array({d, m}));
    return out;
}

inline GradedVS gradedvs_from_json(const json& j) {
    std::vector<int> degs;
    for (auto& e : j) {
        int d = e.at(0).get<int>();
        size_t m = e.at(1).get<size_t>();
        for (size_t i = 0; i < m; ++i) degs.push_back(d);
    }
    return GradedVS(std::move(degs));
}

// ---------------------------------------------------------------------------
// modules and maps

inline json to_json(const CompMod& m) {
    json tors = json::array();
    for (auto [d, k] : m.torsion) tors.push_back(json::array({d, k}));
    return json{{"free", m.free_shifts}, {"torsion", tors}};
}

inline CompMod compmod_from_json(const json& j) {
    std::vector<int> fs = j.value("free", std::vector<int>{});
    std::vector<std::pair<int, int>> ts;
    if (j.contains("torsion"))
        for (auto& e : j.at("torsion")) ts.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return CompMod(std::move(fs), std::move(ts));
}

/// Dense matrix of Laurent polynomial strings ("3c^2-1/2c").
inline json matrix_to_json(const GradedMat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.entry(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

/// Reads rational coefficients into a matrix whose powers are implied by the
/// grading; rejects entries off the legal monomial.
inline void matrix_fill_from_json(GradedMat& m, const json& j, const std::string& where) {
    if (j.size() != m.rows()) throw ParseError(where + ": row count mismatch");
    for (size_t i = 0; i < m.rows(); ++i) {
        if (j.at(i).size() != m.cols()) throw ParseError(where + ": column count mismatch");
        for (size_t jj = 0; jj < m.cols(); ++jj) {
            CPoly p = CPoly::parse(j.at(i).at(jj).get<std::string>());
            if (p.is_zero()) continue;
            auto pw = m.power(i, jj);
            if (!p.is_monomial() || !pw || p.min_power() != *pw)
                throw ParseError(where + ": entry (" + std::to_string(i) + "," +
                                 std::to_string(jj) + ") violates the grading");
            m.q(i, jj) = p.coeff(*pw);
        }
    }
}

inline json to_json(const CompMap& f) {
    json rows = json::array();
    for (size_t i = 0; i < f.q.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < f.q.cols(); ++j) {
            if (f.q(i, j).is_zero()) {
                row.push_back("0");
                continue;
            }
            auto p = f.power(i, j);
            row.push_back(CPoly::monomial(f.q(i, j), p ? *p : 0).to_string());
        }
        rows.push_back(row);
    }
    return json{{"src", to_json(f.src)}, {"dst", to_json(f.dst)}, {"deg", f.deg}, {"mat", rows}};
}

inline CompMap compmap_from_json(const json& j) {
    CompMap f(compmod_from_json(j.at("src")), compmod_from_json(j.at("dst")),
              j.at("deg").get<int>());
    const json& rows = j.at("mat");
    if (rows.size() != f.q.rows()) throw ParseError("map: row count mismatch");
    for (size_t i = 0; i < f.q.rows(); ++i)
        for (size_t jj = 0; jj < f.q.cols(); ++jj) {
            CPoly p = CPoly::parse(rows.at(i).at(jj).get<std::string>());
            if (p.is_zero()) continue;
            auto pw = f.power(i, jj);
            if (!p.is_monomial() || !pw || p.min_power() != *pw)
                throw ParseError("map: entry violates the grading");
            f.q(i, jj) = p.coeff(*pw);
        }
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// objects

inline json to_json(const EffObjHat& x) {
    json exc = json::object();
    for (auto& [n, c] : x.exc)
        exc[std::to_string(n)] = json{{"module", to_json(c.module)},
                                      {"beta", matrix_to_json(c.beta)}};
    return json{{"vertex", to_json(x.vertex)},
                {"tail", json{{"lattice", to_json(x.tail.lattice)},
                              {"beta", matrix_to_json(x.tail.beta)}}},
                {"exc", exc}};
}

inline EffObjHat effobjhat_from_json(const json& j) {
    EffObjHat x;
    x.vertex = gradedvs_from_json(j.at("vertex"));
    if (j.contains("tail")) {
        x.tail.lattice = gradedvs_from_json(j.at("tail").at("lattice"));
        x.tail.beta = GradedMat(x.vertex.degs(), x.tail.lattice.degs(), 0);
        matrix_fill_from_json(x.tail.beta, j.at("tail").at("beta"), "tail beta");
    } else {
        x.tail.beta = GradedMat(x.vertex.degs(), {}, 0);
    }
    if (j.contains("exc"))
        for (auto& [k, v] : j.at("exc").items()) {
            ExcComp c;
            c.module = compmod_from_json(v.at("module"));
            c.beta = GradedMat(x.vertex.degs(), c.module.gen_degrees(), 0);
            matrix_fill_from_json(c.beta, v.at("beta"), "component " + k + " beta");
            x.exc[std::stoi(k)] = c;
        }
    x.shape_check();
    return x;
}

inline json to_json(const Mor& m) {
    json theta = json::object();
    for (int n : m.keys()) theta[std::to_string(n)] = to_json(m.theta_at(n)).at("mat");
    return json{{"source", to_json(m.src)},
                {"target", to_json(m.dst)},
                {"degree", m.deg},
                {"phi", matrix_to_json(m.phi)},
                {"theta", theta},
                {"theta_tail", to_json(m.theta_tail).at("mat")}};
}

inline Mor mor_from_json(const json& j) {
    Mor m;
    m.src = effobjhat_from_json(j.at("source"));
    m.dst = effobjhat_from_json(j.at("target"));
    m.deg = j.at("degree").get<int>();
    m.phi = GradedMat(m.dst.vertex.degs(), m.src.vertex.degs(), m.deg);
    matrix_fill_from_json(m.phi, j.at("phi"), "phi");
    std::set<int> ks = m.src.exc_indices();
    for (int n : m.dst.exc_indices()) ks.insert(n);
    if (j.contains("theta"))
        for (auto& [k, v] : j.at("theta").items()) ks.insert(std::stoi(k));
    for (int n : ks) {
        CompMap t(m.src.component(n).module, m.dst.component(n).module, m.deg);
        std::string key = std::to_string(n);
        if (j.contains("theta") && j.at("theta").contains(key)) {
            const json& rows = j.at("theta").at(key);
            for (size_t i = 0; i < t.q.rows(); ++i)
                for (size_t jj = 0; jj < t.q.cols(); ++jj) {
                    CPoly p = CPoly::parse(rows.at(i).at(jj).get<std::string>());
                    if (p.is_zero()) continue;
                    auto pw = t.power(i, jj);
                    if (!p.is_monomial() || !pw || p.min_power() != *pw)
                        throw ParseError("theta " + key + ": entry violates the grading");
                    t.q(i, jj) = p.coeff(*pw);
                }
        }
        m.theta[n] = t;
    }
    m.theta_tail = CompMap(CompMod::free_module(m.src.tail.lattice.degs()),
                           CompMod::free_module(m.dst.tail.lattice.degs()), m.deg);
    if (j.contains("theta_tail")) {
        const json& rows = j.at("theta_tail");
        for (size_t i = 0; i < m.theta_tail.q.rows(); ++i)
            for (size_t jj = 0; jj < m.theta_tail.q.cols(); ++jj) {
                CPoly p = CPoly::parse(rows.at(i).at(jj).get<std::string>());
                if (p.is_zero()) continue;
                auto pw = m.theta_tail.power(i, jj);
                if (!p.is_monomial() || !pw || p.min_power() != *pw)
                    throw ParseError("theta_tail: entry violates the grading");
                m.theta_tail.q(i, jj) = p.coeff(*pw);
            }
    }
    m.check();
    return m;
}

// ---------------------------------------------------------------------------
// differential graded objects: the carrier plus {"d": ...}

inline json to_json(const DGObj& x) {
    json j = to_json(x.carrier);
    json dexc = json::object();
    for (int n : x.d.keys()) dexc[std::to_string(n)] = to_json(x.d.theta_at(n)).at("mat");
    j["d"] = json{{"vertex", matrix_to_json(x.d.phi)},
                  {"exc", dexc},
                  {"tail", to_json(x.d.theta_tail).at("mat")}};
    return j;
}

inline DGObj dgobj_from_json(const json& j) {
    EffObjHat carrier = effobjhat_from_json(j);
    Mor d = Mor::zero(carrier, carrier, -1);
    if (j.contains("d")) {
        const json& dj = j.at("d");
        if (dj.contains("vertex")) matrix_fill_from_json(d.phi, dj.at("vertex"), "d vertex");
        if (dj.contains("exc"))
            for (auto& [k, v] : dj.at("exc").items()) {
                int n = std::stoi(k);
                CompMap t(carrier.component(n).module, carrier.component(n).module, -1);
                for (size_t i = 0; i < t.q.rows(); ++i)
                    for (size_t jj = 0; jj < t.q.cols(); ++jj) {
                        CPoly p = CPoly::parse(v.at(i).at(jj).get<std::string>());
                        if (p.is_zero()) continue;
                        auto pw = t.power(i, jj);
                        if (!p.is_monomial() || !pw || p.min_power() != *pw)
                            throw ParseError("d exc " + k + ": entry violates the grading");
                        t.q(i, jj) = p.coeff(*pw);
                    }
                d.theta[n] = t;
            }
        if (dj.contains("tail")) {
            const json& rows = dj.at("tail");
            for (size_t i = 0; i < d.theta_tail.q.rows(); ++i)
                for (size_t jj = 0; jj < d.theta_tail.q.cols(); ++jj) {
                    CPoly p = CPoly::parse(rows.at(i).at(jj).get<std::string>());
                    if (p.is_zero()) continue;
                    auto pw = d.theta_tail.power(i, jj);
                    if (!p.is_monomial() || !pw || p.min_power() != *pw)
                        throw ParseError("d tail: entry violates the grading");
                    d.theta_tail.q(i, jj) = p.coeff(*pw);
                }
        }
    }
    return DGObj::make(std::move(carrier), std::move(d));
}

// ---------------------------------------------------------------------------
// diagram modules

inline json to_json(const DiagObj& d) {
    json aexc = json::object();
    for (auto& [n, m] : d.a.exc)
        aexc[std::to_string(n)] = json{{"module", to_json(m)},
                                       {"d", to_json(d.a.d_at(n)).at("mat")}};
    json bexc = json::object();
    for (auto& [n, s] : d.b.exc_shifts)
        bexc[std::to_string(n)] = json{{"shifts", s}, {"d", matrix_to_json(d.b.d_at(n))}};
    json alexc = json::object();
    for (auto& [n, m] : d.alpha_exc) alexc[std::to_string(n)] = matrix_to_json(m);
    json gaexc = json::object();
    for (auto& [n, m] : d.gamma_exc) gaexc[std::to_string(n)] = matrix_to_json(m);
    return json{
        {"a", json{{"exc", aexc},
                   {"tail", json{{"lattice", to_json(d.a.tail_lattice)},
                                 {"d", to_json(d.a.tail_d).at("mat")}}}}},
        {"b", json{{"exc", bexc},
                   {"tail", json{{"shifts", d.b.tail_shifts}, {"d", matrix_to_json(d.b.tail_d)}}}}},
        {"c", json{{"vs", to_json(d.c.vs)}, {"d", matrix_to_json(d.c.d)}}},
        {"alpha", json{{"exc", alexc}, {"tail", matrix_to_json(d.alpha_tail)}}},
        {"gamma", json{{"exc", gaexc}, {"tail", matrix_to_json(d.gamma_tail)}}}};
}

inline DiagObj diagobj_from_json(const json& j) {
    DiagObj d;
    auto fill_compmap = [&](CompMap& t, const json& rows, const std::string& where) {
        for (size_t i = 0; i < t.q.rows(); ++i)
            for (size_t jj = 0; jj < t.q.cols(); ++jj) {
                CPoly p = CPoly::parse(rows.at(i).at(jj).get<std::string>());
                if (p.is_zero()) continue;
                auto pw = t.power(i, jj);
                if (!p.is_monomial() || !pw || p.min_power() != *pw)
                    throw ParseError(where + ": entry violates the grading");
                t.q(i, jj) = p.coeff(*pw);
            }
    };
    const json& ja = j.at("a");
    d.a.tail_lattice = gradedvs_from_json(ja.at("tail").at("lattice"));
    CompMod tl = CompMod::free_module(d.a.tail_lattice.degs());
    d.a.tail_d = CompMap(tl, tl, -1);
    fill_compmap(d.a.tail_d, ja.at("tail").at("d"), "a tail d");
    if (ja.contains("exc"))
        for (auto& [k, v] : ja.at("exc").items()) {
            int n = std::stoi(k);
            CompMod m = compmod_from_json(v.at("module"));
            CompMap dm(m, m, -1);
            fill_compmap(dm, v.at("d"), "a exc d");
            d.a.exc[n] = m;
            d.a.exc_d[n] = dm;
        }
    const json& jb = j.at("b");
    d.b.tail_shifts = jb.at("tail").at("shifts").get<std::vector<int>>();
    d.b.tail_d = GradedMat(d.b.tail_shifts, d.b.tail_shifts, -1);
    matrix_fill_from_json(d.b.tail_d, jb.at("tail").at("d"), "b tail d");
    if (jb.contains("exc"))
        for (auto& [k, v] : jb.at("exc").items()) {
            int n = std::stoi(k);
            std::vector<int> s = v.at("shifts").get<std::vector<int>>();
            GradedMat dm(s, s, -1);
            matrix_fill_from_json(dm, v.at("d"), "b exc d");
            d.b.exc_shifts[n] = s;
            d.b.exc_d[n] = dm;
        }
    const json& jc = j.at("c");
    d.c.vs = gradedvs_from_json(jc.at("vs"));
    d.c.d = GradedMat(d.c.vs.degs(), d.c.vs.degs(), -1);
    matrix_fill_from_json(d.c.d, jc.at("d"), "c d");
    const json& jal = j.at("alpha");
    d.alpha_tail = GradedMat(d.b.tail_shifts, tl.gen_degrees(), 0);
    matrix_fill_from_json(d.alpha_tail, jal.at("tail"), "alpha tail");
    if (jal.contains("exc"))
        for (auto& [k, v] : jal.at("exc").items()) {
            int n = std::stoi(k);
            GradedMat m(d.b.shifts_at(n), d.a.component(n).gen_degrees(), 0);
            matrix_fill_from_json(m, v, "alpha exc");
            d.alpha_exc[n] = m;
        }
    const json& jga = j.at("gamma");
    d.gamma_tail = GradedMat(d.b.tail_shifts, d.c.vs.degs(), 0);
    matrix_fill_from_json(d.gamma_tail, jga.at("tail"), "gamma tail");
    if (jga.contains("exc"))
        for (auto& [k, v] : jga.at("exc").items()) {
            int n = std::stoi(k);
            GradedMat m(d.b.shifts_at(n), d.c.vs.degs(), 0);
            matrix_fill_from_json(m, v, "gamma exc");
            d.gamma_exc[n] = m;
        }
    d.check();
    return d;
}

// ---------------------------------------------------------------------------
// reports

inline json to_json(const CGVS& c) {
    auto dimmap = [](const std::map<int, size_t>& m) {
        json o = json::object();
        for (auto& [d, v] : m) o[std::to_string(d)] = v;
        return o;
    };
    json exc = json::object();
    for (auto& [n, m] : c.exceptional) exc[std::to_string(n)] = dimmap(m);
    return json{{"window", json::array({c.lo, c.hi})},
                {"global", dimmap(c.global)},
                {"tail", dimmap(c.tail_pattern)},
                {"exc", exc}};
}

inline json to_json(const AdamsTable& t) {
    return json{{"window", json::array({t.lo, t.hi})},
                {"hom", to_json(t.hom_part)},
                {"ext", to_json(t.ext_part)}};
}

}  // namespace so2alg::io
