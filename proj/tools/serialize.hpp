#pragma once

// JSON encoding of the library's exact objects.  Scalar rationals are strings
// "p/q"; an element is {"n", "coeffs": [[num, den], ...]} on the power basis
// 1, zeta, zeta^2, ... with decimal-string integers.

#include <string>

#include "json.hpp"

#include "cliffcyc/cliffcyc.hpp"

namespace cliffcyc::io {

using json = nlohmann::json;

inline json to_json(const Rat& r) { return to_string(r); }

inline json to_json(const CycElem& a) {
    json c = json::array();
    for (const auto& q : a.coeffs()) c.push_back({q.get_num().get_str(), q.get_den().get_str()});
    return {{"n", a.level()}, {"coeffs", c}};
}

template <std::size_t Dim>
json to_json(const SquareMatrix<Dim>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < Dim; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < Dim; ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.level()}, {"rows", rows}};
}

inline json to_json(const SquareClass& c) { return {{"rep", to_json(c.rep)}, {"trivial", c.is_trivial()}}; }

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.dump());
    if (j.is_string()) return parse_int(j.get<std::string>());
    throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(int_from_json(j));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_array() && j.size() == 2) {
        const Int den = int_from_json(j[1]);
        if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in " + j.dump());
        return make_rat(int_from_json(j[0]), den);
    }
    throw Error(ErrorCode::ParseError, "expected a rational (integer, \"p/q\" or [p, q]), got " + j.dump());
}

/// Accepts {"n": .., "coeffs": [..]}, a bare coefficient list, or a rational;
/// each coefficient may be [num, den], "p/q" or an integer.
inline CycElem elem_from_json(const json& j, long n) {
    if (j.is_object()) {
        if (j.contains("n") && j.at("n").get<long>() != n)
            throw Error(ErrorCode::LevelMismatch, "payload level differs from --n");
        if (!j.contains("coeffs")) throw Error(ErrorCode::ParseError, "element object needs \"coeffs\"");
        return elem_from_json(j.at("coeffs"), n);
    }
    if (j.is_array()) {
        std::vector<Rat> c;
        for (const auto& x : j) c.push_back(rat_from_json(x));
        return CycElem::from_poly(n, c);
    }
    return CycElem(n, rat_from_json(j));
}

template <std::size_t Dim>
SquareMatrix<Dim> matrix_from_json(const json& j, long n) {
    const json& rows = j.is_object() ? j.at("rows") : j;
    if (j.is_object() && j.contains("n") && j.at("n").get<long>() != n)
        throw Error(ErrorCode::LevelMismatch, "payload level differs from --n");
    if (!rows.is_array() || rows.size() != Dim)
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(Dim) + " rows");
    SquareMatrix<Dim> m(n);
    for (std::size_t i = 0; i < Dim; ++i) {
        if (!rows[i].is_array() || rows[i].size() != Dim)
            throw Error(ErrorCode::ParseError, "expected " + std::to_string(Dim) + " entries per row");
        for (std::size_t k = 0; k < Dim; ++k) m(i, k) = elem_from_json(rows[i][k], n);
    }
    return m;
}

inline json to_json(const Membership& m) {
    json j = {{"inU2", m.inU2}, {"inU2zeta", m.inU2zeta}, {"inSU2", m.inSU2}};
    j["detPower"] = m.detPower ? json(*m.detPower) : json(nullptr);
    return j;
}

inline json to_json(const PhiProfile& p) {
    json phi = json::array(), theta = json::object();
    for (const auto& x : p.phi) phi.push_back(to_json(x));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            theta[std::to_string(i + 1) + std::to_string(j + 1)] = to_json(p.theta[i][j]);
    return {{"phi", phi}, {"theta", theta}};
}

inline json to_json(const ChiTable& t) {
    json j = {{"n", t.n},
              {"zetaMinus1", to_json(t.zetaMinus1)},
              {"M", to_json(t.M)},
              {"chiSU2", to_json(t.chiSU2)},
              {"chiPSU2", to_json(t.chiPSU2)},
              {"chiPU2zeta", to_json(t.chiPU2zeta)},
              {"chiPU2", to_json(t.chiPU2)},
              {"chiSGn", to_json(t.chiSGn)},
              {"chiG4n", to_json(t.chiG4n)},
              {"r", t.r},
              {"rPlus", t.rPlus}};
    if (t.chiSO3) {
        j["chiSO3"] = to_json(*t.chiSO3);
        j["c"] = *t.c;
        j["cbar"] = *t.cbar;
    } else {
        j["chiSO3"] = "-M/c (c unknown)";
        j["c"] = nullptr;
        j["cbar"] = nullptr;
    }
    return j;
}

inline json to_json(const SelmerTable& t) { return {{"n", t.n}, {"rank", t.rank}, {"c", t.c}, {"cbar", t.cbar}}; }

inline json to_json(const ScanRecord& r) {
    return {{"n", r.n},
            {"zetaMinus1", to_json(r.zetaMinus1)},
            {"M", to_json(r.M)},
            {"chiSU2", to_json(r.chiSU2)},
            {"bound", to_json(r.bound)},
            {"relation", to_string(r.relation)}};
}

inline json to_json(const AmalgamWord& w) {
    json letters = json::array();
    for (const auto& l : w.letters)
        letters.push_back({{"side", to_string(l.side)}, {"coset", l.coset}, {"matrix", to_json(l.matrix)}});
    return {{"n", w.n}, {"head", to_json(w.head)}, {"letters", letters}, {"length", w.letters.size()}};
}

} // namespace cliffcyc::io
