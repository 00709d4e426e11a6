#pragma once

// Batch command-line front end.  run_cli returns the exit status:
// 0 success, 1 domain or usage error, 2 internal invariant violation.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "serialize.hpp"

namespace cliffcyc::cli {

using io::json;

struct Options {
    long n = 0;
    long max = 0;
    std::string input;
    std::string payload;
    std::string word;
    std::string format = "json";
    std::string target = "su2";
    int trials = 0;
    unsigned long seed = 1;
};

namespace detail {

inline json load_payload(const Options& o) {
    std::string text = o.payload;
    if (text.empty()) {
        if (o.input.empty()) throw Error(ErrorCode::ParseError, "no input: pass --json or --input FILE");
        std::ifstream f(o.input);
        if (!f) throw Error(ErrorCode::ParseError, "cannot read " + o.input);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline void require_level(long n, bool four) {
    if (n < 1) throw Error(ErrorCode::UnsupportedLevel, "--n must be a positive level");
    if (four && n % 4 != 0) throw Error(ErrorCode::UnsupportedLevel, "this subcommand needs 4 | n (got n = " + std::to_string(n) + ")");
}

inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

inline void emit(std::ostream& out, const Options& o, const json& j) {
    if (o.format == "table") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(j, "", rows);
        std::size_t w = 0;
        for (const auto& r : rows) w = std::max(w, r.first.size());
        for (const auto& [k, v] : rows) out << k << std::string(w - k.size() + 2, ' ') << v << '\n';
    } else {
        out << j.dump() << '\n';
    }
}

inline GateWord random_word(std::mt19937_64& rng, long n, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<long> k(0, n - 1);
    GateWord w{n, {}};
    for (int i = len(rng); i > 0; --i) w.T(k(rng)).H();
    return w.normalize();
}

inline json trials_report(int trials, int passed) { return {{"trials", trials}, {"passed", passed}}; }

} // namespace detail

inline int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
    using namespace detail;
    std::mt19937_64 rng(o.seed);

    if (cmd == "ring-check") {
        require_level(o.n, false);
        const CycElem a = io::elem_from_json(load_payload(o), o.n);
        json j = {{"element", io::to_json(a)}, {"inRn", a.is_in_Rn()}, {"inRnPlus", a.is_in_Rn_plus()},
                  {"real", a.is_real()}, {"denomExp", a.denom_exp()}};
        j["totallyPositive"] = a.is_real() ? json(is_totally_positive(a)) : json(nullptr);
        j["squareClass"] = a.is_real() && !a.is_zero() ? io::to_json(SquareClass{a}) : json(nullptr);
        emit(out, o, j);
    } else if (cmd == "mat-check") {
        require_level(o.n, true);
        emit(out, o, io::to_json(membership(io::matrix_from_json<2>(load_payload(o), o.n))));
    } else if (cmd == "ad") {
        require_level(o.n, true);
        emit(out, o, io::to_json(adjoint(io::matrix_from_json<2>(load_payload(o), o.n))));
    } else if (cmd == "pi") {
        require_level(o.n, true);
        emit(out, o, io::to_json(pi_map(io::matrix_from_json<2>(load_payload(o), o.n))));
    } else if (cmd == "phi") {
        require_level(o.n, true);
        if (o.trials > 0) {
            int ok = 0;
            for (int t = 0; t < o.trials; ++t)
                ok += homomorphism_check(pi_map(eval_word(random_word(rng, o.n, 6))),
                                         pi_map(eval_word(random_word(rng, o.n, 6))));
            emit(out, o, trials_report(o.trials, ok));
            return ok == o.trials ? 0 : 2;
        }
        const PhiProfile p = phi_profile(io::matrix_from_json<3>(load_payload(o), o.n));
        json j = io::to_json(p);
        j["class"] = io::to_json(phi_class(p));
        emit(out, o, j);
    } else if (cmd == "lift") {
        require_level(o.n, true);
        if (o.target != "su2" && o.target != "u2") throw Error(ErrorCode::ParseError, "--target must be su2 or u2");
        auto lift = [&](const OMat& m) { return o.target == "u2" ? try_lift_to_U2_supported(m) : try_lift_to_SU2(m); };
        if (o.trials > 0) {
            int ok = 0;
            for (int t = 0; t < o.trials; ++t) {
                const OMat m = pi_map(eval_word(random_word(rng, o.n, 8)));
                LiftResult r = lift(m);
                if (r.lifted())
                    ok += (o.target == "u2" ? pi_map(*r.lift) : adjoint(*r.lift)) == m;
                else
                    ok += !phi_class(m).is_trivial();
            }
            emit(out, o, trials_report(o.trials, ok));
            return ok == o.trials ? 0 : 2;
        }
        LiftResult r = lift(io::matrix_from_json<3>(load_payload(o), o.n));
        json j = {{"lifted", r.lifted()}, {"target", o.target}};
        j["lift"] = r.lifted() ? io::to_json(*r.lift) : json(nullptr);
        j["obstruction"] = r.obstruction ? io::to_json(*r.obstruction) : json(nullptr);
        emit(out, o, j);
    } else if (cmd == "sel") {
        require_level(o.n, true);
        emit(out, o, io::to_json(selmer_table(o.n)));
    } else if (cmd == "chi") {
        require_level(o.n, true);
        emit(out, o, io::to_json(chi_table(o.n)));
    } else if (cmd == "scan") {
        if (o.max < 8) throw Error(ErrorCode::UnsupportedLevel, "--max must be at least 8");
        const auto rows = scan(o.max);
        if (o.format == "table") {
            out << "n\tzetaMinus1\tM\tchiSU2\tbound\trelation\n";
            for (const auto& r : rows)
                out << r.n << '\t' << to_string(r.zetaMinus1) << '\t' << to_string(r.M) << '\t' << to_string(r.chiSU2)
                    << '\t' << to_string(r.bound) << '\t' << to_string(r.relation) << '\n';
        } else {
            for (const auto& r : rows) out << io::to_json(r).dump() << '\n';
        }
    } else if (cmd == "decide") {
        require_level(o.n, true);
        const GateDecision d = decide_gate_equality(o.n);
        emit(out, o,
             {{"n", o.n},
              {"verdict", d.equal ? "Equal" : "InfiniteIndex"},
              {"relation", to_string(d.relation)},
              {"chiSU2", io::to_json(d.evidence.chiSU2)},
              {"bound", io::to_json(d.bound)},
              {"M", io::to_json(d.evidence.M)},
              {"zetaMinus1", io::to_json(d.evidence.zetaMinus1)}});
    } else if (cmd == "synth") {
        require_level(o.n, true);
        auto synth = [&](const UMat& u) { return o.n == 8 ? synthesize_n8(u) : synthesize_bounded(u); };
        if (o.trials > 0) {
            int ok = 0;
            for (int t = 0; t < o.trials; ++t) {
                const UMat u = eval_word(random_word(rng, o.n, 30));
                ok += eval_word(synth(u)) == u;
            }
            emit(out, o, trials_report(o.trials, ok));
            return ok == o.trials ? 0 : 2;
        }
        const GateWord w = synth(io::matrix_from_json<2>(load_payload(o), o.n));
        emit(out, o, {{"n", o.n}, {"word", format_gate_word(w)}, {"hCount", w.h_count()}});
    } else if (cmd == "eval-word") {
        require_level(o.n, true);
        const UMat u = eval_word(parse_gate_word(o.n, o.word));
        json j = io::to_json(u);
        j["det"] = io::to_json(det(u));
        emit(out, o, j);
    } else if (cmd == "amalgam-nf") {
        require_level(o.n, true);
        if (o.trials > 0) {
            int ok = 0;
            for (int t = 0; t < o.trials; ++t) {
                GateWord a = random_word(rng, o.n, 10), b = t % 2 ? random_word(rng, o.n, 10) : a;
                if (t % 2 == 0) b.H().H().H().H();
                const bool same = amalgam_equal(o.n, gate_word_letters(a), gate_word_letters(b));
                ok += same == (pi_map(eval_word(a)) == pi_map(eval_word(b)));
            }
            emit(out, o, trials_report(o.trials, ok));
            return ok == o.trials ? 0 : 2;
        }
        std::vector<OMat> letters;
        if (!o.word.empty() || (o.payload.empty() && o.input.empty())) {
            letters = gate_word_letters(parse_gate_word(o.n, o.word));
        } else {
            const json j = load_payload(o);
            if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of 3x3 matrices");
            for (const auto& m : j) letters.push_back(io::matrix_from_json<3>(m, o.n));
        }
        emit(out, o, io::to_json(normal_form(o.n, letters)));
    } else if (cmd == "dreary") {
        const DrearyWitness w = example_dreary_witness();
        emit(out, o,
             {{"u", io::to_json(w.u)},
              {"sqrt21", io::to_json(w.sqrt21)},
              {"Tq", io::to_json(w.Tq)},
              {"Mq", io::to_json(w.Mq)},
              {"verdicts",
               {{"TqInSO3", w.tqInSO3},
                {"TqOverZsqrt21Half", w.tqOverZsqrt21},
                {"MqMqDaggerIsU", w.mqNormIsU},
                {"MqInducesTq", w.mqInducesTq},
                {"phiTqIsClassOfU", w.classIsU},
                {"uTotallyPositive", w.uTotallyPositive},
                {"uNonsquare", w.uNonsquare}}}});
    }
    return 0;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact arithmetic for Clifford-cyclotomic gate groups"};
    app.require_subcommand(1, 1);
    Options o;

    struct SubDef {
        const char* name;
        const char* help;
        bool n, input, word, max, trials, target;
    };
    const SubDef subs[] = {
        {"ring-check", "R_n / R_n+ membership, positivity and square class of an element", true, true, false, false, false, false},
        {"mat-check", "membership record of a 2x2 matrix", true, true, false, false, false, false},
        {"ad", "adjoint image of an SU2 matrix", true, true, false, false, false, false},
        {"pi", "SO3 image of a U2 matrix", true, true, false, false, false, false},
        {"phi", "phi_i, theta_ij and the square class of an SO3 matrix", true, true, false, false, true, false},
        {"lift", "lift an SO3 matrix to SU2 (or U2 at supported levels)", true, true, false, false, true, true},
        {"sel", "Selmer rank and indices c, cbar", true, false, false, false, false, false},
        {"chi", "zeta value and Euler characteristics", true, false, false, false, false, false},
        {"scan", "decision table for 8 <= n <= max", false, false, false, true, false, false},
        {"decide", "is the gate group all of U2^zeta(R_n)?", true, false, false, false, false, false},
        {"synth", "exact synthesis of a U2 matrix as a word in H and T", true, true, false, false, true, false},
        {"eval-word", "evaluate a gate word", true, false, true, false, false, false},
        {"amalgam-nf", "amalgam normal form of a gate word or list of SO3 letters", true, true, true, false, true, false},
        {"dreary", "the non-surjectivity witness over Z[sqrt21, i, 1/2]", false, false, false, false, false, false},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        if (s.n) sub->add_option("--n", o.n, "cyclotomic level")->required();
        if (s.input) {
            sub->add_option("--input", o.input, "JSON payload file")->check(CLI::ExistingFile);
            sub->add_option("--json", o.payload, "inline JSON payload");
        }
        if (s.word) sub->add_option("--word", o.word, "gate word, e.g. \"T^3 H T^1 H\"");
        if (s.max) sub->add_option("--max", o.max, "largest level")->required();
        if (s.trials) {
            sub->add_option("--trials", o.trials, "run K random round trips instead of reading input");
            sub->add_option("--seed", o.seed, "seed for the random words");
        }
        if (s.target) sub->add_option("--target", o.target, "su2 or u2");
        sub->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return 2;
    }
}

} // namespace cliffcyc::cli
