#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "stutter/refine.hpp"
#include "stutter/valuation.hpp"

namespace stutter::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input;
    std::string format;
    std::string semantics;
    std::vector<std::string> pair;
    std::string from;
    std::string action;
    std::vector<std::string> targets;
    std::size_t depth = 0;
    bool depth_set = false;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::string output_format = "text";
    std::string tau = "tau";
    std::string names;
    std::string output;
    bool full_paths = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

std::string format_of(const Config& cfg) {
    if (!cfg.format.empty()) return cfg.format;
    auto ext = fs::path(cfg.input).extension().string();
    if (ext == ".aut" || ext == ".fps") return ext.substr(1);
    throw UsageError("cannot infer the format of " + cfg.input + "; pass --format aut|fps");
}

Lts load_lts(const Config& cfg) {
    AutOptions opt;
    opt.tau_label = cfg.tau;
    Lts lts = parse_aut(read_file(cfg.input), opt);
    std::string names = cfg.names;
    if (names.empty()) {
        auto side = fs::path(cfg.input).replace_extension(".names");
        if (fs::exists(side)) names = side.string();
    }
    if (!names.empty()) lts.set_state_names(parse_state_names(read_file(names), lts.num_states()));
    return lts;
}

Fps load_fps(const Config& cfg) {
    FpsOptions opt;
    opt.tau_label = cfg.tau;
    return parse_fps(read_file(cfg.input), opt);
}

SignatureScope scope_of(const Config& cfg) {
    return cfg.full_paths ? SignatureScope::full_paths : SignatureScope::one_step;
}

Semantics semantics_of(const Config& cfg) {
    if (cfg.semantics.empty()) throw UsageError("--semantics is required for .aut input");
    return parse_semantics(cfg.semantics);
}

void require_delay(const Config& cfg) {
    if (!cfg.semantics.empty() && cfg.semantics != "delay")
        throw UsageError(".fps input supports only probabilistic delay bisimulation");
}

std::vector<std::vector<std::string>> named_blocks(const Partition& part, const std::vector<std::string>& names) {
    std::vector<std::vector<std::string>> out;
    for (const auto& b : part.blocks()) {
        out.emplace_back();
        for (StateId s : b) out.back().push_back(names[s]);
    }
    return out;
}

std::string block_text(const std::vector<std::string>& members) {
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + members[i];
    return s + "}";
}

std::string blocks_text(const Partition& part, const std::vector<std::string>& names) {
    std::string s;
    for (const auto& b : named_blocks(part, names)) s += (s.empty() ? "" : ",") + block_text(b);
    return s;
}

std::string observation_text(const Fps& fps, Observation o) {
    return o.is_tau() ? "tau*" : "tau*" + fps.alphabet().label(o);
}

Observation parse_observation(const Fps& fps, const std::string& a, const Config& cfg) {
    if (a.empty()) throw UsageError("--action is required");
    if (a == "eps" || a == cfg.tau) return Action::tau();
    if (!fps.alphabet().contains(a)) throw UsageError("unknown action '" + a + "'");
    return fps.alphabet().find(a);
}

Json signature_json(const Fps& fps, const ProbSignature& sig, const Partition& part) {
    Json arr = Json::array();
    for (const auto& [key, p] : sig) {
        arr.push_back({{"action", key.first.is_tau() ? std::string("eps") : fps.alphabet().label(key.first)},
                       {"block", named_blocks(part, fps.state_names())[key.second]},
                       {"probability", format_rational(p)}});
    }
    return arr;
}

std::string signature_text(const Fps& fps, const ProbSignature& sig, const Partition& part) {
    std::string s;
    for (const auto& [key, p] : sig) {
        if (!s.empty()) s += ' ';
        s += observation_text(fps, key.first) + " " +
             block_text(named_blocks(part, fps.state_names())[key.second]) + " " + format_rational(p);
    }
    return s;
}

void print(std::ostream& out, const Config& cfg, const Json& j, const std::string& text) {
    if (cfg.output_format == "json")
        out << j.dump(2) << '\n';
    else
        out << text;
}

int cmd_check(const Config& cfg, std::ostream& out) {
    if (cfg.pair.size() != 2) throw UsageError("--pair takes two state names");
    Json j;
    std::ostringstream text;
    bool same = false;
    if (format_of(cfg) == "aut") {
        Lts lts = load_lts(cfg);
        Semantics sem = semantics_of(cfg);
        StateId x = lts.find_state(cfg.pair[0]), y = lts.find_state(cfg.pair[1]);
        auto d = distinguish(lts, x, y, sem, scope_of(cfg));
        same = !d;
        j["semantics"] = to_string(sem);
        j["pair"] = cfg.pair;
        j["equivalent"] = same;
        text << (same ? "equivalent" : "inequivalent") << '\n';
        if (d) {
            std::string word = render_word(d->word, d->partition, lts);
            const std::string& owner = d->in_first ? cfg.pair[0] : cfg.pair[1];
            j["word"] = word;
            j["word_in"] = owner;
            text << "distinguishing word: " << word << " (only from " << owner << ")\n";
        }
    } else {
        require_delay(cfg);
        Fps fps = load_fps(cfg);
        StateId x = fps.find_state(cfg.pair[0]), y = fps.find_state(cfg.pair[1]);
        auto rounds = delay_refine_rounds(fps);
        same = rounds.back().same_block(x, y);
        j["semantics"] = "delay";
        j["pair"] = cfg.pair;
        j["equivalent"] = same;
        text << (same ? "equivalent" : "inequivalent") << '\n';
        if (!same) {
            std::size_t r = 0;
            while (r + 1 < rounds.size() && rounds[r + 1].same_block(x, y)) ++r;
            const Partition& part = rounds[r];
            auto sigs = prob_signatures(fps, part);
            std::set<std::pair<Observation, BlockId>> keys;
            for (const auto& [k, v] : sigs[x]) keys.insert(k);
            for (const auto& [k, v] : sigs[y]) keys.insert(k);
            for (const auto& k : keys) {
                Rational px = sigs[x].count(k) ? sigs[x].at(k) : Rational(0);
                Rational py = sigs[y].count(k) ? sigs[y].at(k) : Rational(0);
                if (px == py) continue;
                auto block = named_blocks(part, fps.state_names())[k.second];
                j["witness"] = {{"action", k.first.is_tau() ? std::string("eps") : fps.alphabet().label(k.first)},
                                {"block", block},
                                {"probabilities", {format_rational(px), format_rational(py)}}};
                text << "distinguishing probability: P(" << observation_text(fps, k.first) << ", "
                     << block_text(block) << ") = " << format_rational(px) << " from " << cfg.pair[0] << ", "
                     << format_rational(py) << " from " << cfg.pair[1] << '\n';
                break;
            }
        }
    }
    print(out, cfg, j, text.str());
    return same ? 0 : 1;
}

int cmd_partition(const Config& cfg, std::ostream& out) {
    Json j;
    std::ostringstream text;
    if (format_of(cfg) == "aut") {
        Lts lts = load_lts(cfg);
        Semantics sem = semantics_of(cfg);
        Partition part = refine(lts, sem, scope_of(cfg));
        j["semantics"] = to_string(sem);
        j["blocks"] = named_blocks(part, lts.state_names());
        text << blocks_text(part, lts.state_names()) << '\n';
    } else {
        require_delay(cfg);
        Fps fps = load_fps(cfg);
        Partition part = delay_refine(fps);
        auto sigs = prob_signatures(fps, part);
        j["semantics"] = "delay";
        j["blocks"] = named_blocks(part, fps.state_names());
        Json sj = Json::object();
        text << blocks_text(part, fps.state_names()) << '\n';
        for (StateId s = 0; s < fps.num_states(); ++s) {
            sj[fps.name(s)] = signature_json(fps, sigs[s], part);
            text << fps.name(s) << ": " << signature_text(fps, sigs[s], part) << '\n';
        }
        j["signatures"] = sj;
    }
    print(out, cfg, j, text.str());
    return 0;
}

Json state_map(const Partition& part, const std::vector<std::string>& names) {
    Json m = Json::object();
    for (StateId s = 0; s < part.num_states(); ++s) m[names[s]] = part.block_of(s);
    return m;
}

int cmd_minimize(const Config& cfg, std::ostream& out) {
    std::string system;
    Json map;
    std::vector<std::string> quotient_names;
    if (format_of(cfg) == "aut") {
        Lts lts = load_lts(cfg);
        Semantics sem = semantics_of(cfg);
        auto q = minimize(lts, sem, scope_of(cfg));
        system = write_aut(q.lts);
        quotient_names = q.lts.state_names();
        map = {{"semantics", to_string(sem)},
               {"states", state_map(q.partition, lts.state_names())},
               {"blocks", named_blocks(q.partition, lts.state_names())}};
        if (!cfg.output.empty()) {
            std::string names;
            for (const auto& n : quotient_names) names += n + '\n';
            write_file(fs::path(cfg.output).replace_extension(".names").string(), names);
        }
    } else {
        require_delay(cfg);
        Fps fps = load_fps(cfg);
        auto q = minimize_fps(fps);
        system = write_fps(q.fps);
        map = {{"semantics", "delay"},
               {"states", state_map(q.partition, fps.state_names())},
               {"blocks", named_blocks(q.partition, fps.state_names())}};
    }
    if (cfg.output.empty()) {
        out << system;
    } else {
        write_file(cfg.output, system);
        write_file(cfg.output + ".map.json", map.dump(2) + "\n");
        out << "wrote " << cfg.output << " (" << map["blocks"].size() << " states) and " << cfg.output
            << ".map.json\n";
    }
    return 0;
}

void require_fps(const Config& cfg, const char* command) {
    if (format_of(cfg) != "fps") throw UsageError(std::string(command) + " needs an .fps system");
}

int cmd_prob_reach(const Config& cfg, std::ostream& out) {
    require_fps(cfg, "prob-reach");
    Fps fps = load_fps(cfg);
    if (cfg.from.empty()) throw UsageError("--from is required");
    if (cfg.targets.empty()) throw UsageError("--targets is required");
    StateId x = fps.find_state(cfg.from);
    Observation o = parse_observation(fps, cfg.action, cfg);
    std::vector<bool> ys(fps.num_states(), false);
    for (const auto& t : cfg.targets) ys[fps.find_state(t)] = true;
    Rational p = prob_reach(fps, x, o, ys);
    Json j = {{"from", cfg.from},
              {"action", o.is_tau() ? std::string("eps") : fps.alphabet().label(o)},
              {"targets", cfg.targets},
              {"probability", format_rational(p)}};
    print(out, cfg, j, format_rational(p) + "\n");
    return 0;
}

int cmd_alpha_dump(const Config& cfg, std::ostream& out) {
    if (format_of(cfg) != "aut") throw UsageError("alpha-dump needs an .aut system");
    Lts lts = load_lts(cfg);
    Semantics sem = semantics_of(cfg);
    std::size_t depth = cfg.depth_set ? cfg.depth : lts.num_states() + 1;
    std::vector<StateId> states;
    if (!cfg.from.empty()) {
        states.push_back(lts.find_state(cfg.from));
    } else {
        for (StateId s = 0; s < lts.num_states(); ++s) states.push_back(s);
    }
    Json j = {{"semantics", to_string(sem)}, {"depth", depth}, {"alpha", Json::object()}};
    std::ostringstream text;
    for (StateId s : states) {
        if (states.size() > 1) text << lts.name(s) << ":\n";
        Json arr = Json::array();
        for (const auto& c : alpha(lts, s, sem, depth)) {
            auto str = to_string(c.canonical(), lts.state_names(), lts.alphabet());
            arr.push_back(str);
            text << (states.size() > 1 ? "  " : "") << str << '\n';
        }
        j["alpha"][lts.name(s)] = arr;
    }
    print(out, cfg, j, text.str());
    return 0;
}

int cmd_audit(const Config& cfg, std::ostream& out) {
    require_fps(cfg, "audit");
    if (cfg.trials == 0) throw UsageError("--trials must be positive");
    Fps fps = load_fps(cfg);
    auto reports = audit_valuation(fps, cfg.seed, cfg.trials);
    Json arr = Json::array();
    std::ostringstream text;
    bool clean = true;
    for (const auto& r : reports) {
        Json e = {{"law", r.law}, {"trials", r.trials}, {"failures", r.failures}};
        if (r.witness) e["witness"] = *r.witness;
        arr.push_back(e);
        text << r.law << ": " << r.trials - r.failures << "/" << r.trials << " passed";
        if (r.witness) text << "; witness: " << *r.witness;
        text << '\n';
        clean = clean && r.failures == 0;
    }
    print(out, cfg, arr, text.str());
    return clean ? 0 : 1;
}

int cmd_paths(const Config& cfg, std::ostream& out) {
    if (cfg.from.empty()) throw UsageError("--from is required");
    std::size_t depth = cfg.depth_set ? cfg.depth : 3;
    Json arr = Json::array();
    std::ostringstream text;
    if (format_of(cfg) == "aut") {
        Lts lts = load_lts(cfg);
        for (const auto& p : executions(lts, lts.find_state(cfg.from), depth)) {
            auto s = to_string(p, lts.state_names(), lts.alphabet());
            arr.push_back({{"path", s}});
            text << s << '\n';
        }
    } else {
        Fps fps = load_fps(cfg);
        std::function<void(Path&)> walk = [&](Path& p) {
            auto s = to_string(p, fps.state_names(), fps.alphabet());
            auto mu = format_rational(mu_p(fps, p));
            arr.push_back({{"path", s}, {"probability", mu}});
            text << s << ' ' << mu << '\n';
            if (p.length() == depth) return;
            for (const auto& t : fps.out(last(p))) {
                Path next = p.extended(t.action, t.target);
                walk(next);
            }
        };
        Path root(fps.find_state(cfg.from));
        walk(root);
    }
    print(out, cfg, arr, text.str());
    return 0;
}

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("input", cfg.input, "System file (.aut or .fps)")->required();
    sub->add_option("--format", cfg.format, "Input format, inferred from the extension by default")
        ->check(CLI::IsMember({"aut", "fps"}));
    sub->add_option("--output-format", cfg.output_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tau", cfg.tau, "Label of the silent action");
    sub->add_option("--names", cfg.names, "State-name sidecar for .aut input (default: <stem>.names if present)");
}

void add_semantics(CLI::App* sub, Config& cfg) {
    sub->add_option("--semantics", cfg.semantics, "branching, weak, eta or delay")
        ->check(CLI::IsMember({"branching", "weak", "eta", "delay"}));
}

void add_scope(CLI::App* sub, Config& cfg) {
    sub->add_flag("--full-paths", cfg.full_paths,
                  "Compare whole image path languages instead of one-step signatures (finer for eta and delay)");
}


}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Stuttering bisimulation checker for labelled and fully probabilistic transition systems"};
    app.name("stutter");
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Decide whether two states are equivalent");
    add_common(check, cfg);
    add_semantics(check, cfg);
    add_scope(check, cfg);
    check->add_option("--pair", cfg.pair, "The two states to compare")->expected(2)->required();

    auto* partition = app.add_subcommand("partition", "Print the equivalence classes");
    add_common(partition, cfg);
    add_semantics(partition, cfg);
    add_scope(partition, cfg);

    auto* min = app.add_subcommand("minimize", "Write the quotient system");
    add_common(min, cfg);
    add_semantics(min, cfg);
    add_scope(min, cfg);
    min->add_option("--output", cfg.output, "Quotient file; a state map goes to <output>.map.json");

    auto* reach = app.add_subcommand("prob-reach", "Probability of reaching targets after tau* and an action");
    add_common(reach, cfg);
    reach->add_option("--from", cfg.from, "Start state");
    reach->add_option("--action", cfg.action, "Visible action, or eps for the empty observation");
    reach->add_option("--targets", cfg.targets, "Target states")->delimiter(',');

    auto* dump = app.add_subcommand("alpha-dump", "List the alpha-paths of states as stutter classes");
    add_common(dump, cfg);
    add_semantics(dump, cfg);
    dump->add_option("--state,--from", cfg.from, "Only this state");
    dump->add_option("--depth", cfg.depth, "Bound on the underlying execution length");

    auto* audit = app.add_subcommand("audit", "Randomized check of the valuation laws");
    add_common(audit, cfg);
    audit->add_option("--seed", cfg.seed, "Random seed");
    audit->add_option("--trials", cfg.trials, "Trials per law");

    auto* paths = app.add_subcommand("paths", "List executions up to a depth");
    add_common(paths, cfg);
    paths->add_option("--from", cfg.from, "Start state");
    paths->add_option("--depth", cfg.depth, "Maximum length (default 3)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.depth_set = dump->count("--depth") + paths->count("--depth") > 0;

    try {
        if (check->parsed()) return cmd_check(cfg, out);
        if (partition->parsed()) return cmd_partition(cfg, out);
        if (min->parsed()) return cmd_minimize(cfg, out);
        if (reach->parsed()) return cmd_prob_reach(cfg, out);
        if (dump->parsed()) return cmd_alpha_dump(cfg, out);
        if (audit->parsed()) return cmd_audit(cfg, out);
        if (paths->parsed()) return cmd_paths(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace stutter::cli
