// Command-line front end: run, enumerate and check group automata, compute
// growth and dissimilarity tables, and reproduce the acceptance experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <gramata/analysis.hpp>
#include <gramata/constructions.hpp>
#include <gramata/efa.hpp>
#include <gramata/experiments.hpp>
#include <gramata/oracles.hpp>
#include <gramata/simulator.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef GRAMATA_CORPUS_DIR
#define GRAMATA_CORPUS_DIR "corpus"
#endif

using json = nlohmann::json;
using namespace gramata;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 3;

struct Globals
{
    bool json = false;
    std::size_t workers = 0;
};

EFA load_machine(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("io", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_efa(ss.str());
}

/// "machine" (the file's own policy), "default", "L,G,C" or "fixed:N".
BudgetPolicy resolve_policy(const EFA& m, const std::optional<std::size_t>& budget, const std::string& policy)
{
    if (budget)
        return BudgetPolicy::constant_depth(*budget);
    if (policy.empty() || policy == "machine")
        return m.policy();
    if (policy == "default")
        return BudgetPolicy::standard();
    if (policy.rfind("fixed:", 0) == 0)
        return BudgetPolicy::constant_depth(std::stoull(policy.substr(6)));
    long l = 0, g = 0, c = 0;
    char comma1 = 0, comma2 = 0;
    std::istringstream in(policy);
    if (in >> l >> comma1 >> g >> comma2 >> c && comma1 == ',' && comma2 == ',' && in.peek() == EOF)
        return BudgetPolicy::affine(l, g, c);
    throw Error("usage", "budget policy must be machine, default, L,G,C or fixed:N");
}

json stats_json(const RunStats& s)
{
    json j{{"expanded", s.expanded},
           {"configurations", s.configurations},
           {"max_depth", s.max_depth},
           {"budget", s.budget}};
    j["accepting_depth"] = s.accepting_depth ? json(*s.accepting_depth) : json(nullptr);
    return j;
}

std::vector<std::string> words_json(const std::vector<Word>& ws)
{
    std::vector<std::string> out;
    for (const auto& w : ws)
        out.push_back(word_str(w));
    return out;
}

int verdict_code(Verdict v)
{
    switch (v) {
    case Verdict::Accept: return kPass;
    case Verdict::Reject: return kFail;
    case Verdict::BudgetExhausted: return kUndecided;
    }
    return kFail;
}

int cmd_run(const Globals& g, const std::string& file, const std::string& word, std::optional<std::size_t> budget,
            const std::string& policy_text)
{
    const EFA m = load_machine(file);
    const BudgetPolicy policy = resolve_policy(m, budget, policy_text);
    const RunResult r = accepts(m, parse_word(word), policy);
    if (g.json) {
        std::vector<std::string> path;
        for (std::size_t idx : r.certificate) {
            const auto& t = m.transitions[idx];
            path.push_back(t.from + " " + t.symbol + " " + t.to + " " + t.reg.str());
        }
        std::cout << json{{"verdict", to_string(r.verdict)},
                          {"word", word_str(parse_word(word))},
                          {"policy", policy.str()},
                          {"stats", stats_json(r.stats)},
                          {"memory_guard_hit", r.memory_guard_hit},
                          {"certificate", path}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << to_string(r.verdict) << "\n";
        std::cout << "budget\t" << r.stats.budget << "\t(" << policy.str() << ")\n";
        std::cout << "expanded\t" << r.stats.expanded << "\n";
        std::cout << "configurations\t" << r.stats.configurations << "\n";
        std::cout << "max_depth\t" << r.stats.max_depth << "\n";
        if (r.stats.accepting_depth)
            std::cout << "accepting_depth\t" << *r.stats.accepting_depth << "\n";
        if (r.memory_guard_hit)
            std::cout << "memory guard hit\n";
    }
    return verdict_code(r.verdict);
}

int cmd_enum(const Globals& g, const std::string& file, std::size_t max_len, std::optional<std::size_t> budget,
             const std::string& policy_text)
{
    const EFA m = load_machine(file);
    const auto e = enumerate(CompiledEfa(m), max_len, resolve_policy(m, budget, policy_text), g.workers);
    if (g.json) {
        std::cout << json{{"accepted", words_json(e.accepted)}, {"budget_exhausted", words_json(e.budget_exhausted)}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& w : e.accepted)
            std::cout << word_str(w) << "\n";
        for (const auto& w : e.budget_exhausted)
            std::cerr << "warning: budget exhausted on " << word_str(w) << "\n";
    }
    return e.budget_exhausted.empty() ? kPass : kUndecided;
}

int cmd_check(const Globals& g, const std::string& file, const std::string& oracle_name, std::size_t max_len,
              std::optional<std::size_t> budget, const std::string& policy_text)
{
    const EFA m = load_machine(file);
    const NamedOracle o = oracle(oracle_name);
    const auto rep =
        equiv_check(CompiledEfa(m), o.contains, m.alphabet, max_len, resolve_policy(m, budget, policy_text), g.workers);
    auto entry_json = [](const EquivEntry& e) {
        return json{{"word", word_str(e.word)}, {"expected", e.expected}, {"got", to_string(e.got)}};
    };
    if (g.json) {
        json mm = json::array(), be = json::array();
        for (const auto& e : rep.mismatches)
            mm.push_back(entry_json(e));
        for (const auto& e : rep.budget_exhausted)
            be.push_back(entry_json(e));
        std::cout << json{{"oracle", o.name},
                          {"max_len", max_len},
                          {"words_checked", rep.words_checked},
                          {"passed", rep.passed()},
                          {"mismatches", mm},
                          {"budget_exhausted", be}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << (rep.passed() ? "pass" : !rep.mismatches.empty() ? "mismatch" : "undecided") << "\t"
                  << rep.words_checked << " words\n";
        for (const auto& e : rep.mismatches)
            std::cout << "mismatch\t" << word_str(e.word) << "\texpected " << (e.expected ? "member" : "non-member")
                      << "\tgot " << to_string(e.got) << "\n";
        for (const auto& e : rep.budget_exhausted)
            std::cout << "undecided\t" << word_str(e.word) << "\n";
    }
    return rep.exit_code();
}

std::vector<NamedGenerator> resolve_generators(const GroupSpec& spec, const std::string& gens)
{
    return gens.empty() ? standard_generators(spec) : parse_generators(spec, gens);
}

int cmd_growth(const Globals& g, const std::string& group, const std::string& gens_text, std::size_t radius)
{
    const GroupSpec spec = GroupSpec::parse(group);
    const auto gens = resolve_generators(spec, gens_text);
    const GrowthTable t = growth(spec, gens, radius);
    std::optional<double> exponent;
    if (t.counts.size() >= 4)
        exponent = growth_exponent_estimate(t);
    if (g.json) {
        json j{{"group", spec.str()}, {"radius", radius}, {"counts", t.counts}};
        j["exponent_estimate"] = exponent ? json(*exponent) : json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "radius\tcount\n";
        for (std::size_t r = 0; r < t.counts.size(); ++r)
            std::cout << r << "\t" << t.counts[r] << "\n";
        if (exponent)
            std::cout << "# exponent estimate\t" << *exponent << "\n";
    }
    return kPass;
}

json dissim_json(const DissimilarityReport& r)
{
    json j{{"n", r.n},
           {"method", r.method},
           {"lower_bound", r.lower_bound},
           {"witnesses", words_json(r.witnesses)},
           {"witnesses_verified", r.witnesses_verified}};
    j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    return j;
}

int cmd_dissim(const Globals& g, const std::string& oracle_name, const std::string& group, const std::string& gens_text,
               std::size_t n)
{
    DissimilarityReport rep;
    std::optional<std::size_t> demand;
    if (!group.empty()) {
        const GroupSpec spec = GroupSpec::parse(group);
        const auto ev = lemma_growth_check(spec, resolve_generators(spec, gens_text), n);
        rep = ev.dissimilarity;
        demand = ev.growth_at_half;
    } else {
        rep = dissimilarity_exact(oracle(oracle_name), n);
    }
    if (g.json) {
        json j = dissim_json(rep);
        if (demand)
            j["growth_at_half"] = *demand;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "n\t" << rep.n << "\n";
        std::cout << "method\t" << rep.method << "\n";
        if (rep.exact)
            std::cout << "exact\t" << *rep.exact << "\n";
        else
            std::cout << "lower_bound\t" << rep.lower_bound << "\n";
        if (demand)
            std::cout << "growth_at_half\t" << *demand << "\n";
        std::cout << "witnesses_verified\t" << (rep.witnesses_verified ? "yes" : "no") << "\n";
        for (const auto& w : rep.witnesses)
            std::cout << "witness\t" << word_str(w) << "\n";
    }
    if (!rep.witnesses_verified)
        return kFail;
    return demand && rep.lower_bound < *demand ? kFail : kPass;
}

void print_result(const Globals& g, const ExperimentResult& r, json* collect)
{
    if (g.json) {
        collect->push_back(json{{"id", r.id},
                                {"criterion", r.criterion},
                                {"passed", r.passed},
                                {"seconds", r.seconds},
                                {"details", r.details}});
        return;
    }
    std::cout << (r.passed ? "PASS" : "FAIL") << "\t" << r.criterion << "\t" << r.id << "\n";
    for (const auto& d : r.details)
        std::cout << "    " << d << "\n";
}

int cmd_paper(const Globals& g, const std::string& id, bool all, const std::string& corpus)
{
    ExperimentContext ctx;
    ctx.corpus_dir = corpus;
    ctx.workers = g.workers;
    std::vector<const Experiment*> todo;
    if (all) {
        for (const auto& e : experiments())
            todo.push_back(&e);
    } else {
        todo.push_back(&experiment(id));
    }
    json results = json::array();
    bool ok = true;
    for (const auto* e : todo) {
        const auto r = run_experiment(*e, ctx);
        ok = ok && r.passed;
        print_result(g, r, &results);
    }
    if (g.json)
        std::cout << json{{"passed", ok}, {"results", results}}.dump(2) << "\n";
    else if (all)
        std::cout << (ok ? "all criteria pass" : "some criteria fail") << "\n";
    return ok ? kPass : kFail;
}

int cmd_probe(const Globals& g, const std::string& id, const std::string& file, std::size_t max_len,
              std::optional<std::size_t> fit_max, const std::string& corpus)
{
    if (!id.empty())
        return cmd_paper(g, id, false, corpus);
    if (file.empty())
        throw Error("usage", "probe needs --experiment ID or a machine file");
    std::vector<std::size_t> lengths;
    for (std::size_t n = 0; n <= max_len; ++n)
        lengths.push_back(n);
    const auto rep = theorem_growth_probe(load_machine(file), lengths, fit_max);
    auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
    if (g.json) {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back(json{{"n", r.n},
                                {"configs_at_n", r.configs_at_n},
                                {"configs_within_n", r.configs_within_n},
                                {"configs_within_half", r.configs_within_half},
                                {"demand", r.demand}});
        json j{{"rows", rows}, {"crossing", opt(rep.crossing)}, {"prefix_crossing", opt(rep.prefix_crossing)}};
        j["exponent_estimate"] = rep.exponent ? json(*rep.exponent) : json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "n\tconfigs_at_n\tconfigs_within_n\tconfigs_within_half\tdemand\n";
        for (const auto& r : rep.rows)
            std::cout << r.n << "\t" << r.configs_at_n << "\t" << r.configs_within_n << "\t" << r.configs_within_half
                      << "\t" << r.demand << "\n";
        std::cout << "# crossing\t" << (rep.crossing ? std::to_string(*rep.crossing) : "none") << "\n";
        std::cout << "# prefix_crossing\t" << (rep.prefix_crossing ? std::to_string(*rep.prefix_crossing) : "none")
                  << "\n";
        if (rep.exponent)
            std::cout << "# exponent estimate\t" << *rep.exponent << "\n";
    }
    return kPass;
}

int cmd_canon(const std::string& file)
{
    std::cout << serialize_efa(load_machine(file));
    return kPass;
}

int cmd_emit_corpus(const std::string& dir)
{
    std::filesystem::create_directories(dir);
    for (const auto& [name, m] : corpus_machines()) {
        const auto path = std::filesystem::path(dir) / (name + ".efa");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error("io", "cannot write " + path.string());
        out << serialize_efa(m);
        std::cout << path.string() << "\n";
    }
    return kPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gramata: group automata toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "emit a single JSON document");
    app.add_option("--workers", g.workers, "worker threads (0 = all cores)");

    std::string file, word, oracle_name, policy_text, group, gens, id, corpus = GRAMATA_CORPUS_DIR;
    std::optional<std::size_t> budget, fit_max;
    std::size_t max_len = 8, radius = 6, n = 4;
    bool all = false;

    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget", budget, "fixed search depth");
        sub->add_option("--budget-policy", policy_text, "machine | default | L,G,C | fixed:N");
    };

    auto* run = app.add_subcommand("run", "decide one word");
    run->add_option("file", file, "machine file")->required();
    run->add_option("word", word, "input word; space-separated when symbols are longer than one character")
        ->required();
    add_budget(run);

    auto* en = app.add_subcommand("enum", "list accepted words up to a length");
    en->add_option("file", file)->required();
    en->add_option("--max-len", max_len)->required();
    add_budget(en);

    auto* check = app.add_subcommand("check", "compare a machine against a membership oracle");
    check->add_option("file", file)->required();
    check->add_option("--oracle", oracle_name)->required();
    check->add_option("--max-len", max_len)->required();
    add_budget(check);

    auto* gr = app.add_subcommand("growth", "ball sizes of a group");
    gr->add_option("--group", group)->required();
    gr->add_option("--gens", gens, "name=element;... (default: standard generators)");
    gr->add_option("--radius", radius)->required();

    auto* ds = app.add_subcommand("dissim", "n-dissimilarity: exact for an oracle, witness bound for a group");
    ds->add_option("--oracle", oracle_name);
    ds->add_option("--group", group);
    ds->add_option("--gens", gens);
    auto* ds_n = ds->add_option("--max-len,-n", n);
    ds_n->required();

    auto* pr = app.add_subcommand("probe", "configuration counts against free-group demand");
    pr->add_option("--experiment", id);
    pr->add_option("file", file);
    pr->add_option("--max-len", max_len);
    pr->add_option("--fit-max", fit_max);
    pr->add_option("--corpus", corpus);

    auto* pa = app.add_subcommand("paper", "run acceptance experiments");
    auto* pa_id = pa->add_option("--experiment", id);
    auto* pa_all = pa->add_flag("--all", all);
    pa_id->excludes(pa_all);
    pa->add_option("--corpus", corpus);

    auto* ca = app.add_subcommand("canon", "print the canonical form of a machine file");
    ca->add_option("file", file)->required();

    std::string out_dir = "corpus";
    auto* em = app.add_subcommand("emit-corpus", "write the shipped machines");
    em->add_option("dir", out_dir);

    app.add_subcommand("list", "list experiment ids and oracle names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (run->parsed())
            return cmd_run(g, file, word, budget, policy_text);
        if (en->parsed())
            return cmd_enum(g, file, max_len, budget, policy_text);
        if (check->parsed())
            return cmd_check(g, file, oracle_name, max_len, budget, policy_text);
        if (gr->parsed())
            return cmd_growth(g, group, gens, radius);
        if (ds->parsed()) {
            if (oracle_name.empty() == group.empty())
                throw Error("usage", "dissim needs exactly one of --oracle or --group");
            return cmd_dissim(g, oracle_name, group, gens, n);
        }
        if (pr->parsed())
            return cmd_probe(g, id, file, max_len, fit_max, corpus);
        if (pa->parsed()) {
            if (!all && id.empty())
                throw Error("usage", "paper needs --experiment ID or --all");
            return cmd_paper(g, id, all, corpus);
        }
        if (ca->parsed())
            return cmd_canon(file);
        if (em->parsed())
            return cmd_emit_corpus(out_dir);
        for (const auto& e : experiments())
            std::cout << "experiment\t" << e.id << "\t" << e.title << "\n";
        for (const auto& o : oracle_names())
            std::cout << "oracle\t" << o << "\n";
        return kPass;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == "memory-guard")
            return kUndecided;
        if (e.code() == "instance-too-large")
            return kFail;
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
