#include "scl/clock.hpp"
#include "scl/eval.hpp"
#include "scl/reductions.hpp"
#include "scl/solvers.hpp"
#include "scl/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace scl;

namespace {

enum Status { kOk = 0, kNegative = 1, kBound = 2, kError = 3 };

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Failure("cannot write " + path);
    out << text;
}

// Search budgets are capped by SCL_MAX_CANDIDATES when set.
uint64_t cap(uint64_t requested) {
    if (const char* env = std::getenv("SCL_MAX_CANDIDATES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end) throw Failure("SCL_MAX_CANDIDATES must be a non-negative integer");
        return std::min<uint64_t>(requested, v);
    }
    return requested;
}

std::optional<SemiringId> semiring_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_semiring_name(s);
}

// Formula file: optional `semiring <id>` header line, then the formula text.
struct FormulaFile {
    SemiringId id;
    Formula phi;
};

FormulaFile read_formula(const std::string& path, std::optional<SemiringId> id) {
    std::string text = slurp(path);
    std::istringstream in(text);
    std::string line, body;
    std::optional<SemiringId> header;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string w, name;
        if (first && (words >> w) && w == "semiring" && (words >> name)) {
            header = parse_semiring_name(name);
            body += "\n";
        } else {
            body += line + "\n";
        }
        if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t\r")] != '%')
            first = false;
    }
    if (header && id && *header != *id) throw Failure("--semiring disagrees with the header of " + path);
    if (!header && !id) throw Failure(path + " has no semiring header; pass --semiring");
    SemiringId sid = header ? *header : *id;
    return {sid, parse_formula(body, sid)};
}

std::string formula_file(SemiringId id, const Formula& phi) {
    return "semiring " + std::string(semiring_name(id)) + "\n" + print_formula(phi) + "\n";
}

std::vector<Value> universe_or_default(const std::string& text, SemiringId id) {
    return text.empty() ? default_universe(id) : parse_values(text, id);
}

std::string tuple_text(const std::vector<Value>& xs) { return "(" + print_values(xs) + ")"; }

void print_assignment_line(const Formula& phi, const PLAssignment& s, SemiringId id) {
    std::string line;
    for (auto& [name, neg] : pl_literals(phi)) {
        const Value* v = s.find(name, neg);
        line += "s(" + std::string(neg ? "~" : "") + name + ")=" + (v ? to_literal(*v) : "?") + " ";
    }
    std::cout << line << "value=" << to_literal(eval_pl(phi, s, id)) << "\n";
}

Status report(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::found: return kOk;
        case SearchOutcome::none_within_bounds: return kNegative;
        default: return kBound;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semiring logics and machines over K"};
    app.require_subcommand(1);
    std::string semiring;

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a formula under an assignment or interpretation");
    std::string ev_formula, ev_vals, ev_witness, ev_universe;
    bool ev_md = false, ev_serial = false;
    uint64_t ev_max = uint64_t(1) << 22;
    eval->add_option("formula", ev_formula)->required();
    eval->add_option("valuation", ev_vals)->required();
    eval->add_option("--witness", ev_witness, "interpretation file with the quantified relations");
    eval->add_option("--universe", ev_universe, "values for exhaustive second-order search");
    eval->add_flag("--model-defining", ev_md, "restrict second-order search to model-defining 0/1 extensions");
    eval->add_option("--max-candidates", ev_max);
    eval->add_flag("--serial", ev_serial);
    eval->add_option("--semiring", semiring);

    // sat
    auto* sat = app.add_subcommand("sat", "Search for a satisfying assignment");
    std::string sat_formula, sat_universe, sat_out;
    uint64_t sat_max = uint64_t(1) << 26;
    bool sat_serial = false, sat_plain = false;
    sat->add_option("formula", sat_formula)->required();
    sat->add_option("--universe", sat_universe);
    sat->add_option("--max-candidates", sat_max);
    sat->add_flag("--serial", sat_serial);
    sat->add_flag("--enumerate", sat_plain, "plain enumeration without pruning");
    sat->add_option("-o,--out", sat_out, "write the assignment file");
    sat->add_option("--semiring", semiring);

    // run
    auto* run_cmd = app.add_subcommand("run", "Run a deterministic machine");
    std::string run_machine, run_input, run_guess, run_closure;
    uint64_t run_budget = 1000;
    bool run_trace = false, run_nonarith = false;
    run_cmd->add_option("machine", run_machine)->required();
    run_cmd->add_option("--input", run_input);
    run_cmd->add_option("--guess", run_guess);
    run_cmd->add_option("--budget", run_budget);
    run_cmd->add_flag("--trace", run_trace);
    run_cmd->add_flag("--non-arithmetic", run_nonarith, "report arithmetic steps without a neutral operand");
    run_cmd->add_option("--closure", run_closure, "report values leaving this set");

    // decide-nondet
    auto* nd = app.add_subcommand("decide-nondet", "Search guesses for a nondeterministic machine");
    std::string nd_machine, nd_input, nd_universe;
    int nd_len = 2;
    uint64_t nd_budget = 100;
    bool nd_serial = false;
    nd->add_option("machine", nd_machine)->required();
    nd->add_option("--input", nd_input);
    nd->add_option("--universe", nd_universe);
    nd->add_option("--max-len", nd_len);
    nd->add_option("--budget", nd_budget);
    nd->add_flag("--serial", nd_serial);

    // reduce
    auto* red = app.add_subcommand("reduce", "Compile to another problem");
    red->require_subcommand(1);
    auto* cook = red->add_subcommand("cook", "Machine, input and step bound to a propositional formula");
    std::string ck_machine, ck_input, ck_out, ck_map;
    int ck_steps = 0;
    cook->add_option("machine", ck_machine)->required();
    cook->add_option("--input", ck_input);
    cook->add_option("--steps", ck_steps)->required();
    cook->add_option("-o,--out", ck_out)->required();
    cook->add_option("--map", ck_map)->required();

    auto* fag = red->add_subcommand("fagin", "Machine to an existential second-order sentence");
    std::string fg_machine, fg_out, fg_input, fg_input_out, fg_guess, fg_witness_out;
    int fg_z = 1;
    fag->add_option("machine", fg_machine)->required();
    fag->add_option("--z", fg_z);
    fag->add_option("-o,--out", fg_out)->required();
    fag->add_option("--input", fg_input);
    fag->add_option("--interp-out", fg_input_out, "write the ordered interpretation of --input");
    fag->add_option("--guess", fg_guess);
    fag->add_option("--witness-out", fg_witness_out, "write the extension built from the bounded run");

    auto* flat = red->add_subcommand("flatten", "Remove nested comparisons");
    std::string fl_formula, fl_out;
    flat->add_option("formula", fl_formula)->required();
    flat->add_option("-o,--out", fl_out);
    flat->add_option("--semiring", semiring);

    auto* etk = red->add_subcommand("etk", "Flat formula to an existential sentence over K");
    std::string et_formula, et_universe;
    bool et_solve = false, et_serial = false;
    uint64_t et_max = uint64_t(1) << 26;
    etk->add_option("formula", et_formula)->required();
    etk->add_option("--universe", et_universe);
    etk->add_flag("--solve", et_solve, "search the universe for a valuation");
    etk->add_option("--max-candidates", et_max);
    etk->add_flag("--serial", et_serial);
    etk->add_option("--semiring", semiring);

    // decode-guess
    auto* dg = app.add_subcommand("decode-guess", "Read the guess from a satisfying assignment of a cook formula");
    std::string dg_map, dg_formula, dg_assign;
    dg->add_option("--map", dg_map)->required();
    dg->add_option("--formula", dg_formula)->required();
    dg->add_option("--assignment", dg_assign)->required();

    // wrap-clock
    auto* wc = app.add_subcommand("wrap-clock", "Add a step counter so the machine always halts");
    std::string wc_machine, wc_poly, wc_out;
    int wc_in = 8, wc_outlen = 16;
    wc->add_option("machine", wc_machine)->required();
    wc->add_option("--poly", wc_poly, "coefficients c0,c1,... of t(n) = c0 + c1 n + ...")->required();
    wc->add_option("--max-input", wc_in);
    wc->add_option("--max-output", wc_outlen);
    wc->add_option("-o,--out", wc_out);

    // encode / decode
    auto* enc = app.add_subcommand("encode", "Encode as a string over K");
    auto* dec = app.add_subcommand("decode", "Decode a string over K");
    std::string en_kind, en_file, de_kind, de_file;
    enc->add_option("kind", en_kind)->required()->check(CLI::IsMember({"formula", "assignment", "interpretation"}));
    enc->add_option("file", en_file)->required();
    enc->add_option("--semiring", semiring);
    dec->add_option("kind", de_kind)->required()->check(CLI::IsMember({"formula", "assignment", "interpretation"}));
    dec->add_option("file", de_file)->required();

    // check
    auto* chk = app.add_subcommand("check", "Algebraic and logical checks");
    chk->require_subcommand(1);
    auto* ax = chk->add_subcommand("axioms", "Semiring laws on a sample");
    std::string ax_sample;
    ax->add_option("--semiring", semiring);
    ax->add_option("--sample", ax_sample);
    auto* eqv = chk->add_subcommand("equivalence", "Compare two formulas on sample interpretations");
    std::string eq_a, eq_b;
    std::vector<std::string> eq_samples;
    eqv->add_option("left", eq_a)->required();
    eqv->add_option("right", eq_b)->required();
    eqv->add_option("--sample", eq_samples)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }

    try {
        std::optional<SemiringId> sid = semiring_opt(semiring);

        if (*eval) {
            ValuationFile vf = parse_valuation(slurp(ev_vals));
            for (auto& w : vf.warnings) std::cerr << "warning: " << w << "\n";
            if (sid && *sid != vf.id) throw Failure("--semiring disagrees with the valuation file");
            FormulaFile ff = read_formula(ev_formula, vf.id);
            if (!vf.interp) {
                std::cout << "value=" << to_literal(eval_pl(ff.phi, vf.pl, vf.id)) << "\n";
                return kOk;
            }
            ESOSentence eso = to_eso(ff.phi);
            if (eso.prefix.empty()) {
                std::cout << "value=" << to_literal(eval_fo(ff.phi, *vf.interp)) << "\n";
                return kOk;
            }
            EsoResult r;
            if (!ev_witness.empty()) {
                ValuationFile wf = parse_valuation(slurp(ev_witness));
                if (!wf.interp) throw Failure(ev_witness + " is not an interpretation file");
                r = eval_eso(eso, *vf.interp, EsoWitness{*wf.interp});
            } else {
                EsoExhaustive mode;
                mode.universe = universe_or_default(ev_universe, vf.id);
                mode.model_defining01 = ev_md;
                mode.max_candidates = cap(ev_max);
                mode.parallel = !ev_serial;
                r = eval_eso(eso, *vf.interp, mode);
            }
            if (r.outcome == EsoResult::Outcome::bound_exceeded) {
                std::cout << "bound-exceeded candidates=" << r.candidates << "\n";
                return kBound;
            }
            std::cout << "value=" << to_literal(r.value) << "\n";
            if (r.certificate) std::cout << print_interpretation(*r.certificate);
            return r.value.is_zero() ? kNegative : kOk;
        }

        if (*sat) {
            FormulaFile ff = read_formula(sat_formula, sid);
            SearchBudget b{universe_or_default(sat_universe, ff.id), cap(sat_max), !sat_serial};
            SatResult r = sat_plain ? sat_enumerate(ff.phi, ff.id, b) : sat_bruteforce(ff.phi, ff.id, b);
            if (r.assignment) {
                print_assignment_line(ff.phi, *r.assignment, ff.id);
                if (!sat_out.empty()) spit(sat_out, print_assignment(*r.assignment));
            } else {
                std::cout << outcome_name(r.outcome) << " candidates=" << r.candidates << "\n";
            }
            return report(r.outcome);
        }

        if (*run_cmd) {
            Machine m = parse_machine(slurp(run_machine));
            auto x = parse_values(run_input, m.id);
            auto g = parse_values(run_guess, m.id);
            uint64_t budget = cap(run_budget);
            Monitors mon;
            mon.non_arithmetic = run_nonarith;
            if (!run_closure.empty()) mon.closure = parse_values(run_closure, m.id);
            MonitoredRun mr;
            if (mon.non_arithmetic || mon.closure) {
                if (!g.empty()) throw Failure("monitors do not take a guess");
                mr = run_monitored(m, x, budget, mon);
            } else {
                mr.run = run(m, x, budget, run_trace, g.empty() ? nullptr : &g);
            }
            if (run_trace)
                for (auto& s : mr.run.trace) std::cout << format_trace(s) << "\n";
            for (auto& v : mr.violations) std::cout << "violation t=" << v.t << " node=" << v.node << " " << v.what << "\n";
            if (!mr.run.halted) {
                std::cout << "budget-exhausted steps=" << mr.run.steps << "\n";
                return kBound;
            }
            std::cout << "output=" << tuple_text(mr.run.output) << " " << (mr.run.accepted ? "accepted" : "rejected")
                      << " steps=" << mr.run.steps << "\n";
            if (!mr.violations.empty()) return kNegative;
            return mr.run.accepted ? kOk : kNegative;
        }

        if (*nd) {
            Machine m = parse_machine(slurp(nd_machine));
            auto x = parse_values(nd_input, m.id);
            auto u = universe_or_default(nd_universe, m.id);
            uint64_t budget = cap(nd_budget);
            NondetResult r = nd_serial ? decide_nondet_serial(m, x, u, nd_len, budget)
                                       : decide_nondet(m, x, u, nd_len, budget);
            if (r.accepted) {
                std::cout << "accepted guess=" << tuple_text(r.guess) << " candidates=" << r.candidates << "\n";
                return kOk;
            }
            std::cout << "rejected candidates=" << r.candidates << "\n";
            return kNegative;
        }

        if (*cook) {
            Machine m = parse_machine(slurp(ck_machine));
            auto x = parse_values(ck_input, m.id);
            CookArtifact art = cook_compile(m, x, ck_steps);
            spit(ck_out, formula_file(m.id, art.formula));
            std::ostringstream map;
            map << "cook semiring=" << semiring_name(m.id) << " T=" << art.T << " n=" << art.n << " W=" << art.W
                << " N=" << art.N << "\n";
            for (auto& [tp, name] : art.v) map << name << " tape t=" << tp.first << " p=" << tp.second << "\n";
            for (auto& [ts, name] : art.q) map << name << " node t=" << ts.first << " s=" << ts.second << "\n";
            spit(ck_map, map.str());
            std::cout << "propositions=" << art.v.size() + art.q.size() << " size=" << size(art.formula) << "\n";
            return kOk;
        }

        if (*dg) {
            std::istringstream map(slurp(dg_map));
            std::string line, word;
            CookArtifact art;
            std::getline(map, line);
            {
                std::istringstream h(line);
                h >> word;
                if (word != "cook") throw Failure(dg_map + " is not a cook map");
                while (h >> word) {
                    auto eq = word.find('=');
                    std::string k = word.substr(0, eq), v = word.substr(eq + 1);
                    if (k == "semiring") art.id = parse_semiring_name(v);
                    if (k == "T") art.T = std::stoi(v);
                    if (k == "n") art.n = std::stoi(v);
                    if (k == "W") art.W = std::stoi(v);
                    if (k == "N") art.N = std::stoi(v);
                }
            }
            while (std::getline(map, line)) {
                std::istringstream l(line);
                std::string name, kind, a, b;
                l >> name >> kind >> a >> b;
                int x = std::stoi(a.substr(2)), y = std::stoi(b.substr(2));
                (kind == "tape" ? art.v : art.q)[{x, y}] = name;
            }
            art.formula = read_formula(dg_formula, art.id).phi;
            ValuationFile vf = parse_valuation(slurp(dg_assign));
            if (vf.id != art.id) throw Failure("assignment semiring differs from the map");
            std::cout << tuple_text(cook_decode_guess(art, vf.pl)) << "\n";
            return kOk;
        }

        if (*fag) {
            Machine m = parse_machine(slurp(fg_machine));
            FaginArtifact art = fagin_compile(m, fg_z);
            std::string text = "% vocabulary";
            for (auto& [r, k] : art.vocabulary.rels) text += " " + r + "/" + std::to_string(k);
            text += "\n% needs a domain of n >= 2 elements with n^z > " + std::to_string(art.K) + "\n";
            spit(fg_out, text + formula_file(m.id, from_eso(art.sentence)));
            if (!fg_input_out.empty() || !fg_witness_out.empty()) {
                auto x = parse_values(fg_input, m.id);
                KInterpretation pi = fagin_input(m.id, x);
                if (!fg_input_out.empty()) spit(fg_input_out, print_interpretation(pi));
                if (!fg_witness_out.empty()) {
                    auto g = parse_values(fg_guess, m.id);
                    spit(fg_witness_out, print_interpretation(fagin_witness(m, fg_z, pi, g)));
                }
            }
            std::cout << "size=" << size(art.sentence.matrix) << "\n";
            return kOk;
        }

        if (*flat) {
            FormulaFile ff = read_formula(fl_formula, sid);
            Formula out = flatten(ff.phi, ff.id);
            std::string text = formula_file(ff.id, out);
            if (fl_out.empty())
                std::cout << text;
            else
                spit(fl_out, text);
            return kOk;
        }

        if (*etk) {
            FormulaFile ff = read_formula(et_formula, sid);
            auto u = universe_or_default(et_universe, ff.id);
            EtkArtifact art = sat_to_etk(ff.phi, ff.id, u);
            std::cout << to_string(art.sentence) << "\n";
            for (auto& [lit, var] : art.g) std::cout << "% " << var << " = s(" << (lit.negated ? "~" : "") << lit.name << ")\n";
            if (!et_solve) return kOk;
            EtkResult r = etk_bounded(art.sentence, SearchBudget{u, cap(et_max), !et_serial});
            if (r.outcome != SearchOutcome::found) {
                std::cout << outcome_name(r.outcome) << " candidates=" << r.candidates << "\n";
                return report(r.outcome);
            }
            std::string line;
            for (size_t i = 0; i < r.valuation.size(); ++i)
                line += art.sentence.vars[i] + "=" + to_literal(r.valuation[i]) + " ";
            std::cout << line << "\n";
            return kOk;
        }

        if (*wc) {
            Machine m = parse_machine(slurp(wc_machine));
            std::vector<uint64_t> poly;
            std::istringstream in(wc_poly);
            std::string part;
            while (std::getline(in, part, ',')) poly.push_back(std::stoull(part));
            Machine w = wrap_with_clock(m, poly, ClockOptions{wc_in, wc_outlen});
            if (wc_out.empty())
                std::cout << print_machine(w);
            else
                spit(wc_out, print_machine(w));
            return kOk;
        }

        if (*enc) {
            Encoded e;
            SemiringId id;
            if (en_kind == "formula") {
                FormulaFile ff = read_formula(en_file, sid);
                id = ff.id;
                e = encode(ff.phi, id);
            } else {
                ValuationFile vf = parse_valuation(slurp(en_file));
                id = vf.id;
                if (en_kind == "assignment") {
                    if (vf.interp) throw Failure(en_file + " is an interpretation file");
                    e = encode(vf.pl);
                } else {
                    if (!vf.interp) throw Failure(en_file + " is not an interpretation file");
                    e = encode(*vf.interp);
                }
            }
            std::cout << "semiring " << semiring_name(id) << "\n" << print_values(e) << "\n";
            return kOk;
        }

        if (*dec) {
            std::istringstream in(slurp(de_file));
            std::string header, body, line;
            std::getline(in, header);
            while (std::getline(in, line)) body += line;
            std::istringstream h(header);
            std::string w, name;
            if (!(h >> w >> name) || w != "semiring") throw Failure(de_file + ": expected 'semiring <id>' header");
            SemiringId id = parse_semiring_name(name);
            Encoded e = parse_values(body, id);
            if (de_kind == "formula")
                std::cout << formula_file(id, decode_formula(e, id));
            else if (de_kind == "assignment")
                std::cout << print_assignment(decode_assignment(e, id));
            else
                std::cout << print_interpretation(decode_interpretation(e, id));
            return kOk;
        }

        if (*ax) {
            bool ok = true;
            std::vector<SemiringId> ids = sid ? std::vector<SemiringId>{*sid} : all_semirings();
            for (SemiringId id : ids) {
                auto sample = ax_sample.empty() ? default_universe(id) : parse_values(ax_sample, id);
                AxiomReport rep = axiom_check(id, sample);
                std::cout << semiring_name(id) << ": " << (rep.ok() ? "ok" : "violations") << " positive=" << (rep.positive ? "yes" : "no")
                          << "\n";
                for (auto& v : rep.violations) std::cout << "  " << v.law << " " << tuple_text(v.witnesses) << "\n";
                ok = ok && rep.ok();
            }
            return ok ? kOk : kNegative;
        }

        if (*eqv) {
            std::vector<KInterpretation> samples;
            std::optional<SemiringId> id = sid;
            for (auto& p : eq_samples) {
                ValuationFile vf = parse_valuation(slurp(p));
                if (!vf.interp) throw Failure(p + " is not an interpretation file");
                if (id && *id != vf.id) throw Failure(p + ": semiring differs from the other inputs");
                id = vf.id;
                samples.push_back(*vf.interp);
            }
            Formula a = read_formula(eq_a, id).phi, b = read_formula(eq_b, id).phi;
            EquivalenceResult r = k_equivalence_sample(a, b, samples);
            if (r.equivalent) {
                std::cout << "equivalent on " << samples.size() << " samples\n";
                return kOk;
            }
            std::cout << "differ on " << eq_samples[*r.counterexample] << ": left=" << to_literal(r.left)
                      << " right=" << to_literal(r.right) << "\n";
            return kNegative;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
