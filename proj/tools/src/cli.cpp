/*
 * Copyright 2026 The rarrival Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ra/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rarrival/error.hpp"
#include "rarrival/flow_json.hpp"
#include "rarrival/instance_text.hpp"
#include "rarrival/line.hpp"
#include "rarrival/normalize.hpp"
#include "rarrival/reduce.hpp"
#include "rarrival/semantics.hpp"
#include "rarrival/ueopl.hpp"

namespace ra {

using json = nlohmann::ordered_json;
using namespace rarrival;

namespace {

struct Options
{
    std::string p_poly = "linear";
    bool human = false;
    std::optional<std::uint64_t> max_steps;
    bool trace = false;
    std::uint64_t t = 0;
    std::string file;
    std::string flow_file;
    std::string level = "runlike";
    std::string claim;
    std::string witness_out;
    bool progress = false;
    std::string target;
    std::string output;
    bool print_map = false;
    std::string bits;
    std::string fn = "S";
};

/// Usage-level failure detected after option parsing.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

class Session
{
public:
    Session(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

    void emit(const json& doc) const { out_ << (opt_.human ? doc.dump(2) : doc.dump()) << '\n'; }

    OverflowPolicy policy() const { return OverflowPolicy::parse(opt_.p_poly); }

    /// Loads the instance and makes it single-entry if needed.
    const Instance& instance()
    {
        if (!instance_) {
            Instance raw = load_instance(opt_.file);
            if (raw.single_entry()) {
                instance_ = std::move(raw);
            } else {
                err_ << "note: instance has multi-entry components; running on its single-entry normalization\n";
                instance_ = normalize_single_entry(raw).instance;
            }
        }
        return *instance_;
    }

    std::ostream& err() const { return err_; }
    const Options& opt() const { return opt_; }

private:
    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<Instance> instance_;
};

std::string bits_string(const SwitchPosition& q)
{
    std::string s;
    for (bool b : q.bits()) s.push_back(b ? '1' : '0');
    return s;
}

json state_json(const Instance& instance, std::uint64_t t, const State& s)
{
    json stack = json::array();
    for (const Frame& f : s.stack)
        stack.push_back({{"component", f.component + 1},
                         {"box", instance.component(f.component).boxes()[f.box].name},
                         {"q", bits_string(f.saved)}});
    return {{"t", t},
            {"stack", std::move(stack)},
            {"component", s.component + 1},
            {"vertex", instance.component(s.component).name(s.vertex)},
            {"q", bits_string(s.position)}};
}

json outcome_json(const Instance& instance, const RunOutcome& outcome)
{
    json j = {{"outcome", outcome_name(outcome)}};
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Terminated>) {
                j["exit"] = instance.component(0).name(o.exit);
                j["T"] = o.time;
            } else if constexpr (std::is_same_v<T, StackBlowup>) {
                j["t"] = o.time;
                j["depth"] = o.depth;
            } else if constexpr (std::is_same_v<T, LoopOverflow>) {
                j["t"] = o.time;
                j["component"] = o.component + 1;
                j["edge"] = instance.component(o.component).edge_key(o.edge);
            } else {
                j["steps"] = o.steps;
            }
        },
        outcome);
    return j;
}

json violation_json(const FlowViolation& v)
{
    json j = {{"code", v.code}, {"message", v.message}};
    if (v.component != kNone) j["component"] = v.component + 1;
    if (!v.location.empty()) j["location"] = v.location;
    return j;
}

json component_status_json(const Component& c, const ComponentFlowStatus& s)
{
    static constexpr const char* kKinds[] = {"zero", "valid", "invalid"};
    json j = {{"component", c.index() + 1}, {"status", kKinds[static_cast<int>(s.kind)]}};
    if (s.ok()) {
        j["current"] = c.name(s.current);
        j["complete"] = s.complete;
        j["call_pending"] = s.call_pending;
    }
    json v = json::array();
    for (const auto& cv : s.violations)
        v.push_back({{"code", code_of(cv.condition)}, {"location", cv.location}, {"message", cv.message}});
    j["violations"] = std::move(v);
    return j;
}

json indices(const std::vector<ComponentId>& ids)
{
    json a = json::array();
    for (auto id : ids) a.push_back(id + 1);
    return a;
}

json edges(const std::vector<ComponentEdge>& es)
{
    json a = json::array();
    for (auto [u, v] : es) a.push_back({u + 1, v + 1});
    return a;
}

json run_like_json(const Instance& instance, const RunLikeStatus& s)
{
    json j = {{"run_like", s.run_like()}, {"classification", to_string(s.classification)}};
    json reasons = json::array();
    json violations = json::array();
    for (const auto& v : s.violations) {
        reasons.push_back(v.message);
        violations.push_back(violation_json(v));
    }
    if (!s.violations.empty()) j["reason"] = s.violations.front().message;
    j["reasons"] = std::move(reasons);
    j["violations"] = std::move(violations);
    if (s.run_like()) {
        j["K"] = indices(s.complete);
        j["J"] = indices(s.pending);
        j["order"] = indices(s.order);
        json current = json::object();
        for (const auto& c : instance.components())
            current[std::to_string(c.index() + 1)] = c.name(s.current(c.index()));
        j["current"] = std::move(current);
        j["pending_edges"] = edges(s.graphs.pending);
        j["completed_edges"] = edges(s.graphs.completed);
        if (s.overflow)
            j["overflow"] = {{"component", s.overflow->first + 1},
                             {"edge", instance.component(s.overflow->first).edge_key(s.overflow->second)}};
    }
    j["operations"] = s.operations;
    return j;
}

json witness_json(const Instance& instance, const FinishedWitness& w)
{
    json j = {{"classification", to_string(w.classification)}};
    if (w.exit) j["exit"] = instance.component(0).name(*w.exit);
    j["val"] = w.value;
    j["steps"] = w.steps;
    j["flows"] = flow_to_json(instance, w.flow)["flows"];
    return j;
}

VertexId main_exit(const Instance& instance, const std::string& name)
{
    const Component& main = instance.component(0);
    const auto v = main.find_vertex(name);
    if (!v || !main.is_exit(*v)) throw UsageError("'" + name + "' is not an exit of component 1");
    return *v;
}

Claim parse_claim(const Instance& instance, const std::string& text)
{
    if (text == "diverge") return {Claim::Kind::Diverges, kNone};
    if (text.starts_with("terminate:")) return {Claim::Kind::Terminates, main_exit(instance, text.substr(10))};
    throw UsageError("--claim must be 'terminate:<exit>' or 'diverge'");
}

RunOptions run_options(const Session& s)
{
    return {s.policy(), s.opt().max_steps};
}

int cmd_validate(Session& s)
{
    const RawInstance raw = parse_instance_text(read_text_file(s.opt().file));
    const ValidationReport report = validate(raw);
    if (report.ok()) {
        const Instance instance = Instance::build(raw);
        s.emit({{"valid", true},
                {"components", instance.size()},
                {"single_entry", instance.single_entry()},
                {"dimension", instance.total_dimension()}});
        return kOk;
    }
    json v = json::array();
    for (const auto& x : report.violations) {
        json j = {{"code", x.code}, {"message", x.message}};
        if (x.component) j["component"] = x.component;
        if (!x.location.empty()) j["location"] = x.location;
        if (x.line) j["line"] = x.line;
        v.push_back(std::move(j));
    }
    s.emit({{"valid", false}, {"violations", std::move(v)}});
    return kNo;
}

int cmd_simulate(Session& s, std::ostream& out)
{
    const Instance& instance = s.instance();
    RunObserver observer;
    if (s.opt().trace)
        observer = [&](std::uint64_t t, const State& state, const RunProfile&) {
            out << state_json(instance, t, state).dump() << '\n';
        };
    const RunResult result = run(instance, run_options(s), observer);
    s.emit(outcome_json(instance, result.outcome));
    return kOk;
}

int cmd_profile(Session& s)
{
    const Instance& instance = s.instance();
    RunProfile p;
    try {
        p = run_profile(instance, s.opt().t, run_options(s));
    } catch (const HorizonExceeded& e) {
        json j = outcome_json(instance, e.outcome());
        j["error"] = "t is beyond the decided horizon";
        s.emit(j);
        return kNo;
    }
    json times = json::object();
    for (const auto& c : instance.components()) {
        const auto l = c.index();
        json row = json::object();
        row["S"] = p.first_entry[l] ? json(*p.first_entry[l]) : json(nullptr);
        row["T"] = p.exit_time[l] ? json(*p.exit_time[l]) : json(nullptr);
        times[std::to_string(l + 1)] = std::move(row);
    }
    s.emit({{"t", s.opt().t}, {"flows", flow_to_json(instance, p.flow)["flows"]}, {"times", std::move(times)}});
    return kOk;
}

int cmd_verify(Session& s)
{
    const Instance& instance = s.instance();
    const Flow flow = parse_flow(instance, read_text_file(s.opt().flow_file));
    const FlowBounds bounds = FlowBounds::of(instance, s.policy());
    const std::string& level = s.opt().level;

    json j = {{"level", level}};
    bool ok = false;
    if (level == "component") {
        ok = true;
        json comps = json::array();
        for (const auto& c : instance.components()) {
            const auto st = verify_component_flow(c, flow[c.index()]);
            ok = ok && st.ok();
            comps.push_back(component_status_json(c, st));
        }
        j["ok"] = ok;
        j["components"] = std::move(comps);
    } else if (level == "recursive") {
        const auto report = verify_recursive_flow(instance, flow);
        ok = report.ok();
        j["ok"] = ok;
        json v = json::array();
        for (const auto& x : report.violations) v.push_back(violation_json(x));
        if (!report.violations.empty()) j["reason"] = report.violations.front().message;
        j["violations"] = std::move(v);
    } else {
        const auto status = verify_run_like(instance, flow, bounds);
        ok = status.run_like();
        j["ok"] = ok;
        j.update(run_like_json(instance, status));
    }

    if (!s.opt().claim.empty()) {
        const auto verdict = verify_witness(instance, flow, parse_claim(instance, s.opt().claim), bounds);
        j["witness"] = {{"accepted", verdict.accepted}, {"reason", verdict.reason}};
        ok = verdict.accepted;
    }
    s.emit(j);
    return ok ? kOk : kNo;
}

int cmd_walk(Session& s)
{
    const Instance& instance = s.instance();
    WalkProgress progress;
    if (s.opt().progress)
        progress = [&](const WalkCheckpoint& c) {
            s.err() << json{{"steps", c.steps}, {"val", c.value}, {"classification", to_string(c.classification)}}.dump()
                    << '\n';
        };
    const FinishedWitness w = walk(instance, s.policy(), progress);
    if (!s.opt().witness_out.empty()) {
        std::ofstream f(s.opt().witness_out);
        if (!f) throw UsageError("cannot write " + s.opt().witness_out);
        f << flow_to_json(instance, w.flow).dump(2) << '\n';
    }
    s.emit(witness_json(instance, w));
    return kOk;
}

int cmd_decide(Session& s)
{
    const Instance& instance = s.instance();
    const Decision d = decide(instance, main_exit(instance, s.opt().target), s.policy());
    s.emit({{"answer", d.yes ? "yes" : "no"}, {"witness", witness_json(instance, d.witness)}});
    return d.yes ? kOk : kNo;
}

int cmd_reduce(Session& s)
{
    const MonotoneCircuit circuit = parse_circuit(read_text_file(s.opt().file));
    const Reduction r = mcvp_to_ra(circuit);
    std::ofstream f(s.opt().output);
    if (!f) throw UsageError("cannot write " + s.opt().output);
    f << to_text(r.instance);

    json j = {{"gates", circuit.gates.size()},
              {"components", r.instance.size()},
              {"vertices", r.instance.total_vertices()},
              {"constant", r.vertex_constant},
              {"target", r.map.top}};
    if (s.opt().print_map) {
        json map = json::object();
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) map[circuit.gates[i].name] = r.map.component[i] + 1;
        j["map"] = std::move(map);
        j["exits"] = {{"true", r.map.top}, {"false", r.map.bottom}};
    }
    s.emit(j);
    return kOk;
}

int cmd_ueopl(Session& s)
{
    const Instance& instance = s.instance();
    const Ueopl u(instance, s.policy());
    const Bits x = from_hex(s.opt().bits, u.encoding().size());
    json j = {{"fn", s.opt().fn}, {"width", u.encoding().size()}};
    if (s.opt().fn == "V") j["value"] = u.potential(x);
    else j["bits"] = to_hex(s.opt().fn == "S" ? u.successor(x) : u.predecessor(x));
    s.emit(j);
    return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Recursive Arrival toolkit", "ra"};
    app.require_subcommand(1);
    app.add_flag("--human", opt.human, "Indented output instead of one JSON document per line");

    auto add_policy = [&](CLI::App* sub) {
        sub->add_option("--p-poly", opt.p_poly, "Overflow polynomial: linear, quadratic or const:C")
            ->envname("RA_P_POLY");
    };
    auto add_file = [&](CLI::App* sub, const char* what) {
        sub->add_option("file", opt.file, what)->required()->check(CLI::ExistingFile);
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check an instance for structural violations");
    add_file(validate_cmd, "Instance file");

    auto* simulate_cmd = app.add_subcommand("simulate", "Run the instance with both non-termination detectors");
    add_file(simulate_cmd, "Instance file");
    simulate_cmd->add_option("--max-steps", opt.max_steps, "Hard step cap");
    add_policy(simulate_cmd);
    simulate_cmd->add_flag("--trace", opt.trace, "Stream every state as a JSON line");

    auto* profile_cmd = app.add_subcommand("profile", "Recursive run profile at time t");
    add_file(profile_cmd, "Instance file");
    profile_cmd->add_option("--t", opt.t, "Time step")->required();
    profile_cmd->add_option("--max-steps", opt.max_steps, "Hard step cap");
    add_policy(profile_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Check a flow against the certificate hierarchy");
    add_file(verify_cmd, "Instance file");
    verify_cmd->add_option("--flow", opt.flow_file, "Flow JSON file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--level", opt.level, "component, recursive or runlike")
        ->check(CLI::IsMember({"component", "recursive", "runlike"}));
    verify_cmd->add_option("--claim", opt.claim, "Also check the flow as a witness: terminate:<exit> or diverge");
    add_policy(verify_cmd);

    auto* walk_cmd = app.add_subcommand("walk", "Follow the Adv line to the finished flow");
    add_file(walk_cmd, "Instance file");
    walk_cmd->add_option("--emit-witness", opt.witness_out, "Write the finished flow as flow JSON");
    walk_cmd->add_flag("--progress", opt.progress, "Print checkpoints to stderr");
    add_policy(walk_cmd);

    auto* decide_cmd = app.add_subcommand("decide", "Does the run terminate at the target exit?");
    add_file(decide_cmd, "Instance file");
    decide_cmd->add_option("--target", opt.target, "Exit of component 1")->required();
    add_policy(decide_cmd);

    auto* reduce_cmd = app.add_subcommand("reduce", "Reductions into Recursive Arrival");
    reduce_cmd->require_subcommand(1);
    auto* mcvp_cmd = reduce_cmd->add_subcommand("mcvp", "Monotone circuit value to Recursive Arrival");
    add_file(mcvp_cmd, "Circuit netlist");
    mcvp_cmd->add_option("-o,--output", opt.output, "Instance file to write")->required();
    mcvp_cmd->add_flag("--print-map", opt.print_map, "Print the gate to component map");

    auto* ueopl_cmd = app.add_subcommand("ueopl-step", "Evaluate S, P or V on a bit-encoded flow");
    add_file(ueopl_cmd, "Instance file");
    ueopl_cmd->add_option("--bits", opt.bits, "Hex bit string")->required();
    ueopl_cmd->add_option("--fn", opt.fn, "S, P or V")->check(CLI::IsMember({"S", "P", "V"}));
    add_policy(ueopl_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    Session s(opt, out, err);
    try {
        if (*validate_cmd) return cmd_validate(s);
        if (*simulate_cmd) return cmd_simulate(s, out);
        if (*profile_cmd) return cmd_profile(s);
        if (*verify_cmd) return cmd_verify(s);
        if (*walk_cmd) return cmd_walk(s);
        if (*decide_cmd) return cmd_decide(s);
        if (*mcvp_cmd) return cmd_reduce(s);
        if (*ueopl_cmd) return cmd_ueopl(s);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidInstance& e) {
        err << "error: invalid instance\n";
        for (const auto& v : e.report().violations) err << "  " << v.message << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalInvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}
