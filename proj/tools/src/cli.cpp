#include "tracemon/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tracemon/dot.hpp"
#include "tracemon/errors.hpp"
#include "tracemon/monitor.hpp"
#include "tracemon/oracle.hpp"
#include "tracemon/translate.hpp"

namespace tracemon::cli {

namespace {

struct FormulaSource {
    std::string text;
    std::string file;

    void add_to(CLI::App* cmd)
    {
        auto* t = cmd->add_option("-f,--formula", text, "Formula text");
        auto* p = cmd->add_option("--formula-file", file, "File holding the formula on one line");
        t->excludes(p);
        p->excludes(t);
    }

    [[nodiscard]] Formula load() const
    {
        if (text.empty() == file.empty())
            throw InputError("give exactly one of --formula and --formula-file");
        if (!text.empty())
            return parse_formula(text);
        std::ifstream in(file);
        if (!in)
            throw InputError("cannot read formula file " + file);
        std::string line, all;
        while (std::getline(in, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                if (!all.empty())
                    throw InputError("formula file " + file + " must hold a single line");
                all = line;
            }
        return parse_formula(all);
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw InputError("cannot write " + path);
    f << text;
}

Backend parse_backend(const std::string& s)
{
    if (auto b = backend_from_string(s))
        return *b;
    throw InputError("unknown backend " + s + " (expected trace or word)");
}

TranslationOptions options()
{
    TranslationOptions o;
    o.state_budget = state_budget_from_env();
    return o;
}

void print_stats(std::ostream& err, const StageStats& s, Backend b)
{
    err << "backend=" << to_string(b) << '\n'
        << "formula_size=" << s.formula_size << '\n'
        << "until_depth=" << s.until_depth << '\n'
        << "nba_pos=" << s.nba_pos << '\n'
        << "nba_neg=" << s.nba_neg << '\n'
        << "nfa_pos=" << s.nfa_pos << '\n'
        << "nfa_neg=" << s.nfa_neg << '\n'
        << "dfa_pos=" << s.dfa_pos << '\n'
        << "dfa_neg=" << s.dfa_neg << '\n'
        << "product=" << s.product << '\n'
        << "fsm=" << s.fsm << '\n';
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Every word over the alphabet of length at most `max_len`, shortest first.
std::vector<Word> words_up_to(std::size_t k, std::size_t max_len)
{
    std::vector<Word> out{Word{}};
    std::size_t from = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t to = out.size();
        for (std::size_t i = from; i < to; ++i)
            for (Letter a = 0; a < k; ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        from = to;
    }
    return out;
}

struct CheckRow {
    std::string name;
    std::size_t run = 0, confirmed = 0, inconclusive = 0, failed = 0;
};

int cmd_compile(const std::string& alphabet_file, const FormulaSource& fs, const std::string& backend,
                const std::string& out_path, std::ostream& out, std::ostream& err)
{
    const TraceAlphabet alpha = load_alphabet(alphabet_file);
    const Formula f = fs.load();
    require_letters(f, alpha);
    const Backend b = parse_backend(backend);
    const Monitor m = build_monitor(f, alpha, b, options());
    print_stats(err, m.stats, b);
    emit(out_path, serialize(m), out);
    return ok;
}

int cmd_run(const std::string& monitor_file, const std::string& events_file, bool stop_on_final, std::istream& in,
            std::ostream& out, std::ostream& err)
{
    const Monitor m = deserialize(read_file(monitor_file));
    std::ifstream events;
    if (!events_file.empty() && events_file != "-") {
        events.open(events_file);
        if (!events)
            throw InputError("cannot read " + events_file);
    }
    std::istream& src = events.is_open() ? events : in;
    MonitorSession session(m);
    auto report = [&](Verdict v) {
        out << to_token(v) << '\n';
        out.flush();
        return stop_on_final && v != Verdict::Unknown;
    };
    if (report(session.verdict()))
        return final_verdict;
    std::string line;
    for (std::size_t line_no = 1; std::getline(src, line); ++line_no) {
        const std::string event = trim(line);
        if (event.empty())
            continue;
        if (event.find_first_of(" \t") != std::string::npos) {
            err << "line " << line_no << ": expected a single letter, got '" << event << "'\n";
            return input_error;
        }
        Verdict v;
        try {
            v = session.step(event);
        } catch (const InputError&) {
            err << "line " << line_no << ": unknown letter " << event << '\n';
            return input_error;
        }
        if (report(v))
            return final_verdict;
    }
    return ok;
}

int cmd_equiv(const std::string& alphabet_file, const std::string& u_text, const std::string& v_text,
              std::ostream& out)
{
    const TraceAlphabet alpha = load_alphabet(alphabet_file);
    const Word u = alpha.parse_word(u_text);
    const Word v = alpha.parse_word(v_text);
    if (equivalent(alpha, u, v)) {
        out << "equivalent\n";
        return ok;
    }
    out << "inequivalent\n";
    if (u.size() != v.size())
        out << "lengths differ: " << u.size() << " vs " << v.size() << '\n';
    for (LetterMask p : maximal_d_cliques(alpha)) {
        const Word pu = projection(u, p), pv = projection(v, p);
        if (pu == pv)
            continue;
        std::string names;
        for (Letter a = 0; a < alpha.size(); ++a)
            if (p & letter_bit(a))
                names += (names.empty() ? "" : ",") + alpha.name(a);
        auto show = [&](const Word& w) { return w.empty() ? std::string("ε") : alpha.format_word(w); };
        out << "witness clique {" << names << "}: " << show(pu) << " vs " << show(pv) << '\n';
        break;
    }
    return inequivalent;
}

int cmd_check(const std::string& alphabet_file, const FormulaSource& fs, const std::string& backend,
              std::size_t max_len, std::size_t period_bound, std::size_t horizon, std::ostream& out)
{
    const TraceAlphabet alpha = load_alphabet(alphabet_file);
    const Formula f = fs.load();
    require_letters(f, alpha);
    const Backend b = parse_backend(backend);
    const Pipeline p = build_pipeline(f, alpha, b, options());
    const Monitor m = make_monitor(p, f, b);
    const std::size_t effective_horizon = std::max(horizon, max_len + period_bound);

    CheckRow inv{"verdict-invariance"}, fal{"oracle-falsification"}, clo{"trace-closure"};
    std::vector<std::string> failures;
    Evaluator evaluator(alpha, effective_horizon);
    for (const Word& u : words_up_to(alpha.size(), max_len)) {
        ++inv.run;
        try {
            if (auto bad = verdict_invariance_check(m, alpha, u, 100000)) {
                ++inv.failed;
                if (failures.size() < 10)
                    failures.push_back("verdict-invariance: " + alpha.format_word(u) + " vs " + alpha.format_word(*bad));
            } else {
                ++inv.confirmed;
            }
        } catch (const BoundExceeded&) {
            ++inv.inconclusive;
        }
        ++fal.run;
        const FalsifyResult r = falsify_verdict(m, f, alpha, u, period_bound, effective_horizon, &evaluator);
        switch (r.status) {
        case FalsifyStatus::Consistent:
        case FalsifyStatus::Confirmed: ++fal.confirmed; break;
        case FalsifyStatus::InconclusiveTest: ++fal.inconclusive; break;
        case FalsifyStatus::Counterexample:
            ++fal.failed;
            if (failures.size() < 10) {
                const Word& v = r.verdict == Verdict::Top ? *r.false_witness : *r.true_witness;
                failures.push_back("oracle-falsification: verdict " + std::string(to_token(r.verdict)) + " after '" +
                                   alpha.format_word(u) + "' contradicted by period '" + alpha.format_word(v) + "'");
            }
            break;
        }
    }
    ++clo.run;
    if (auto bad = check_trace_closed_bounded(p.nfa_pos, alpha, max_len)) {
        ++clo.failed;
        failures.push_back("trace-closure: accepts '" + alpha.format_word(bad->accepted) + "' but not '" +
                           alpha.format_word(bad->rejected) + "'");
    } else {
        ++clo.confirmed;
    }

    out << std::left << std::setw(22) << "check" << std::right << std::setw(8) << "run" << std::setw(11)
        << "confirmed" << std::setw(14) << "inconclusive" << std::setw(8) << "failed" << '\n';
    std::size_t failed = 0;
    for (const CheckRow* r : {&inv, &fal, &clo}) {
        out << std::left << std::setw(22) << r->name << std::right << std::setw(8) << r->run << std::setw(11)
            << r->confirmed << std::setw(14) << r->inconclusive << std::setw(8) << r->failed << '\n';
        failed += r->failed;
    }
    for (const auto& line : failures)
        out << line << '\n';
    out << "horizon=" << effective_horizon << '\n';
    return failed == 0 ? ok : checks_failed;
}

int cmd_export(const std::string& monitor_file, const std::string& alphabet_file, const FormulaSource& fs,
               const std::string& backend, const std::string& stage, const std::string& out_path, std::ostream& out)
{
    static const std::vector<std::string> stages{"nba-pos", "nba-neg", "nfa-pos", "nfa-neg",
                                                 "dfa-pos", "dfa-neg", "fsm"};
    if (std::find(stages.begin(), stages.end(), stage) == stages.end())
        throw InputError("unknown stage " + stage);
    if (!monitor_file.empty()) {
        if (stage != "fsm")
            throw InputError("a monitor file only provides the fsm stage");
        emit(out_path, to_dot(deserialize(read_file(monitor_file)).machine), out);
        return ok;
    }
    if (alphabet_file.empty())
        throw InputError("export needs --monitor or --alphabet with a formula");
    const TraceAlphabet alpha = load_alphabet(alphabet_file);
    const Formula f = fs.load();
    require_letters(f, alpha);
    const Pipeline p = build_pipeline(f, alpha, parse_backend(backend), options());
    std::string dot;
    if (stage == "nba-pos")
        dot = to_dot(p.nba_pos);
    else if (stage == "nba-neg")
        dot = to_dot(p.nba_neg);
    else if (stage == "nfa-pos")
        dot = to_dot(p.nfa_pos);
    else if (stage == "nfa-neg")
        dot = to_dot(p.nfa_neg);
    else if (stage == "dfa-pos")
        dot = to_dot(p.dfa_pos);
    else if (stage == "dfa-neg")
        dot = to_dot(p.dfa_neg);
    else
        dot = to_dot(p.fsm);
    emit(out_path, dot, out);
    return ok;
}

int cmd_eval(const std::string& alphabet_file, const FormulaSource& fs, const std::string& prefix,
             const std::string& period, std::size_t horizon, std::ostream& out)
{
    const TraceAlphabet alpha = load_alphabet(alphabet_file);
    const Formula f = fs.load();
    require_letters(f, alpha);
    const LassoTrace l{alpha.parse_word(prefix), alpha.parse_word(period)};
    out << to_string(eval_bounded(l, f, alpha, horizon)) << " horizon=" << horizon << '\n';
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Three-valued monitors for temporal properties of concurrent executions"};
    app.name("tracemon");
    app.require_subcommand(1);

    std::string alphabet, backend = "trace", out_path, monitor_file, events_file, stage = "fsm";
    std::string u_text, v_text, prefix, period;
    FormulaSource fs;
    bool stop_on_final = false;
    std::size_t max_len = 5, period_bound = 2, horizon = 12;

    auto* compile = app.add_subcommand("compile", "Synthesize a monitor and write it in text form");
    compile->add_option("-a,--alphabet", alphabet, "Alphabet file")->required();
    fs.add_to(compile);
    compile->add_option("-b,--backend", backend, "trace or word")->capture_default_str();
    compile->add_option("-o,--output", out_path, "Monitor file (default: standard output)");

    auto* runc = app.add_subcommand("run", "Feed events to a monitor, one verdict per event");
    runc->add_option("-m,--monitor", monitor_file, "Monitor file")->required();
    runc->add_option("-e,--events", events_file, "Event file (default: standard input)");
    runc->add_flag("--stop-on-final", stop_on_final, "Exit with status 3 at the first top/bottom verdict");

    auto* equiv = app.add_subcommand("equiv", "Decide whether two words denote the same trace");
    equiv->add_option("-a,--alphabet", alphabet, "Alphabet file")->required();
    equiv->add_option("u", u_text, "First word")->required();
    equiv->add_option("v", v_text, "Second word")->required();

    auto* check = app.add_subcommand("check", "Cross-check a synthesized monitor against the oracle");
    check->add_option("-a,--alphabet", alphabet, "Alphabet file")->required();
    fs.add_to(check);
    check->add_option("-b,--backend", backend, "trace or word")->capture_default_str();
    check->add_option("--max-len", max_len, "Longest prefix checked")->capture_default_str();
    check->add_option("--period-bound", period_bound, "Longest lasso period tried")->capture_default_str();
    check->add_option("--horizon", horizon, "Oracle horizon in events")->capture_default_str();

    auto* exp = app.add_subcommand("export", "Write a pipeline stage as Graphviz DOT");
    exp->add_option("-m,--monitor", monitor_file, "Monitor file (fsm stage only)");
    exp->add_option("-a,--alphabet", alphabet, "Alphabet file");
    fs.add_to(exp);
    exp->add_option("-b,--backend", backend, "trace or word")->capture_default_str();
    exp->add_option("-s,--stage", stage, "nba-pos, nba-neg, nfa-pos, nfa-neg, dfa-pos, dfa-neg or fsm")
        ->capture_default_str();
    exp->add_option("-o,--output", out_path, "DOT file (default: standard output)");

    auto* eval = app.add_subcommand("eval", "Evaluate a formula on the lasso trace prefix·period^ω");
    eval->add_option("-a,--alphabet", alphabet, "Alphabet file")->required();
    fs.add_to(eval);
    eval->add_option("--prefix", prefix, "Finite prefix");
    eval->add_option("--period", period, "Repeated period")->required();
    eval->add_option("--horizon", horizon, "Events the until search may consume")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    try {
        if (*compile)
            return cmd_compile(alphabet, fs, backend, out_path, out, err);
        if (*runc)
            return cmd_run(monitor_file, events_file, stop_on_final, in, out, err);
        if (*equiv)
            return cmd_equiv(alphabet, u_text, v_text, out);
        if (*check)
            return cmd_check(alphabet, fs, backend, max_len, period_bound, horizon, out);
        if (*exp)
            return cmd_export(monitor_file, alphabet, fs, backend, stage, out_path, out);
        if (*eval)
            return cmd_eval(alphabet, fs, prefix, period, horizon, out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return budget_exhausted;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const BoundExceeded& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const IntegrityError& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
    return input_error;
}

} // namespace tracemon::cli
