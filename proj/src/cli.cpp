#include "ekrf/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ekrf/conditions.hpp"
#include "ekrf/constructions.hpp"
#include "ekrf/manifest.hpp"
#include "ekrf/report.hpp"
#include "ekrf/search.hpp"
#include "ekrf/structure.hpp"

namespace ekrf {

namespace {

using nlohmann::json;

json sets_json(const Family& f, const std::vector<std::size_t>& idx) {
    json a = json::array();
    for (std::size_t i : idx) a.push_back(f[i].elements());
    return a;
}

json family_json(const Family& f) {
    json j;
    j["n"] = f.params().n;
    j["k"] = f.params().k;
    j["members"] = json::array();
    for (const KSet& s : f) j["members"].push_back(s.elements());
    return j;
}

json bigint_json(const BigInt& v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
}

KSet parse_element_list(const std::string& text, int n) {
    std::vector<int> e;
    std::istringstream in(text);
    std::string f;
    while (std::getline(in, f, ',')) e.push_back(std::stoi(f));
    return KSet(n, e);
}

unsigned default_threads() {
    if (const char* env = std::getenv("EKRF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

// Writes `content` to `path` with a manifest, or to `out` when no path.
void emit(const std::string& content, const std::string& path, std::ostream& out, const std::string& command_line,
          const json& params, std::chrono::steady_clock::time_point started) {
    if (path.empty()) {
        out << content;
        return;
    }
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << content;
    }
    RunManifest m;
    m.command_line = command_line;
    m.parameters = params;
    m.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_manifest(m, path);
}

struct Common {
    bool json_out = false;
    bool deterministic = true;
    unsigned threads = 1;
};

struct SpecArgs {
    int t = 1;
    int ell = 3;
    std::string variant = "eq4";
    int s = 0;

    void add(CLI::App* app, bool required = true) {
        auto* v = app->add_option("--variant", variant, "eq2|eq3|eq4|eq10|pairwise");
        if (required) v->required();
        app->add_option("--t", t, "intersection depth");
        app->add_option("--ell", ell, "tuple size");
        app->add_option("--s", s, "slack for eq10");
    }
    ConditionSpec spec() const {
        ConditionSpec c{t, ell, parse_variant(variant), s};
        c.validate();
        return c;
    }
    json to_json() const { return {{"t", t}, {"ell", ell}, {"variant", variant}, {"s", s}}; }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    std::string command_line = "ekrf";
    for (const auto& a : args) command_line += " " + a;

    CLI::App app{"Extremal families under weakened intersection-sum conditions", "ekrf"};
    app.require_subcommand(1);
    Common common;
    common.threads = default_threads();
    app.add_flag("--json", common.json_out, "JSON output where text is the default");
    app.add_flag("--seedless-deterministic,!--no-seedless-deterministic", common.deterministic,
                 "all algorithms are deterministic (always on)");
    app.add_option("--threads", common.threads, "worker threads (env EKRF_THREADS)")->check(CLI::PositiveNumber);

    // construct
    auto* construct = app.add_subcommand("construct", "generate a candidate-extremal family");
    std::string c_variant, c_out;
    int c_n = 0, c_k = 0, c_t = 1, c_ell = 3, c_s = 0, c_u = 1;
    construct->add_option("--variant", c_variant, "thm6|thm8|star|sunflower")->required()
        ->check(CLI::IsMember({"thm6", "thm8", "star", "sunflower"}));
    construct->add_option("--n", c_n)->required();
    construct->add_option("--k", c_k)->required();
    construct->add_option("--t", c_t);
    construct->add_option("--ell", c_ell);
    construct->add_option("--s", c_s);
    construct->add_option("--u", c_u);
    construct->add_option("-o,--output", c_out, "output file (.fam or .json)");

    // verify
    auto* verify = app.add_subcommand("verify", "check a family against a pair-sum condition");
    std::string v_family;
    SpecArgs v_spec;
    bool v_decide_only = false;
    verify->add_option("--family", v_family)->required();
    verify->add_flag("--decide-only", v_decide_only, "skip the exact minimum when the condition holds");
    v_spec.add(verify);

    // profile
    auto* profile = app.add_subcommand("profile", "tabulate f(x), or g(x) when --s is given");
    int p_t = 1, p_ell = 3;
    std::optional<int> p_s;
    profile->add_option("--t", p_t);
    profile->add_option("--ell", p_ell)->required();
    profile->add_option("--s", p_s);

    // bound
    auto* bound = app.add_subcommand("bound", "evaluate a closed-form bound");
    std::string b_kind;
    BoundParams bp;
    bound->add_option("--kind", b_kind, "ekr|t3|t5|t6|t7|t8")->required();
    bound->add_option("--n", bp.n);
    bound->add_option("--k", bp.k);
    bound->add_option("--t", bp.t);
    bound->add_option("--ell", bp.ell);
    bound->add_option("--s", bp.s);

    // search
    auto* search = app.add_subcommand("search", "exact maximum family search");
    int s_n = 0, s_k = 0;
    SpecArgs s_spec;
    double s_time = 0;
    std::uint64_t s_nodes = 0;
    std::string s_incumbent, s_symmetry = "none", s_out;
    bool s_exhaustive = false;
    search->add_option("--n", s_n)->required();
    search->add_option("--k", s_k)->required();
    s_spec.add(search);
    search->add_option("--time-limit", s_time, "seconds, 0 = none");
    search->add_option("--node-cap", s_nodes, "0 = none");
    search->add_option("--incumbent", s_incumbent, "feasible starting family");
    search->add_option("--symmetry", s_symmetry)->check(CLI::IsMember({"none", "element-order"}));
    search->add_flag("--exhaustive", s_exhaustive, "plain subset enumeration (tiny instances)");
    search->add_option("-o,--output", s_out, "result JSON file");

    // structure
    auto* structure = app.add_subcommand("structure", "structural analyzers");
    structure->require_subcommand(1);
    std::string st_family, st_kernel;
    int st_t = 1, st_u = 2, st_ell = 3;
    auto* st_sun = structure->add_subcommand("sunflower", "find a sunflower with u petals");
    st_sun->add_option("--family", st_family)->required();
    st_sun->add_option("--t", st_t)->required();
    st_sun->add_option("--u", st_u)->required();
    auto* st_match = structure->add_subcommand("matching", "matching number");
    st_match->add_option("--family", st_family)->required();
    auto* st_dec = structure->add_subcommand("decompose", "kernel decomposition");
    st_dec->add_option("--family", st_family)->required();
    st_dec->add_option("--kernel", st_kernel, "comma-separated kernel elements")->required();
    auto* st_audit = structure->add_subcommand("audit", "audit a family against a sunflower kernel");
    st_audit->add_option("--family", st_family)->required();
    st_audit->add_option("--t", st_t)->required();
    st_audit->add_option("--ell", st_ell)->required();
    st_audit->add_option("--kernel", st_kernel, "use this kernel instead of searching");

    // export
    auto* exp = app.add_subcommand("export", "write the search problem as ILP or CNF");
    std::string e_format, e_out;
    int e_n = 0, e_k = 0;
    long e_target = 0;
    std::uint64_t e_cap = 1'000'000;
    SpecArgs e_spec;
    exp->add_option("format", e_format, "ilp|cnf")->required()->check(CLI::IsMember({"ilp", "cnf"}));
    exp->add_option("--n", e_n)->required();
    exp->add_option("--k", e_k)->required();
    e_spec.add(exp);
    exp->add_option("--target", e_target, "CNF: required family size");
    exp->add_option("--tuple-cap", e_cap, "refuse beyond this many violating tuples");
    exp->add_option("-o,--output", e_out);

    // report
    auto* rep = app.add_subcommand("report", "closed forms vs constructions vs solver optima");
    std::string r_grid, r_grid_file, r_out;
    double r_time = 5.0;
    bool r_no_solve = false, r_csv = false;
    rep->add_option("--grid", r_grid, "rows n,k,t,ell[,s] separated by ';'");
    rep->add_option("--grid-file", r_grid_file, "file with one n,k,t,ell[,s] row per line");
    rep->add_option("--time-limit", r_time, "solver seconds per row");
    rep->add_flag("--no-solve", r_no_solve);
    rep->add_flag("--csv", r_csv, "CSV instead of aligned text");
    rep->add_option("-o,--output", r_out);

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
        for (auto* inner : sub->get_subcommands([](const CLI::App*) { return true; })) inner->fallthrough();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (construct->parsed()) {
            Family f;
            if (c_variant == "thm6")
                f = construct_thm6(c_n, c_k, c_t, c_ell);
            else if (c_variant == "thm8")
                f = construct_thm8(c_n, c_k, c_ell, c_s);
            else if (c_variant == "star")
                f = construct_star(c_n, c_k, c_t);
            else
                f = construct_sunflower(c_n, c_k, c_t, c_u);
            if (c_variant == "thm6" && c_n < c_ell * c_k)
                err << "warning: n < ell*k; tightness witnesses may not exist at this n\n";
            const bool as_json = common.json_out || (c_out.size() >= 5 && c_out.ends_with(".json"));
            const std::string body = as_json ? serialize_family_json(f) : serialize_family(f);
            emit(body, c_out, out, command_line,
                 {{"variant", c_variant}, {"n", c_n}, {"k", c_k}, {"t", c_t}, {"ell", c_ell}, {"s", c_s}, {"u", c_u}},
                 started);
            return 0;
        }

        if (verify->parsed()) {
            const Family f = load_family(v_family);
            const ConditionSpec spec = v_spec.spec();
            const CheckResult r = check_condition(f, spec, {!v_decide_only, common.threads});
            json j;
            if (r.ok) {
                j["status"] = "ok";
                j["min_pairsum"] = r.min_pairsum ? json(*r.min_pairsum) : json(nullptr);
                j["threshold"] = r.threshold;
            } else {
                j["status"] = "violation";
                j["pair_sum"] = r.violation->pair_sum;
                j["min_pairsum"] = r.violation->pair_sum;
                j["threshold"] = r.threshold;
                j["indices"] = r.violation->indices;
                j["sets"] = sets_json(f, r.violation->indices);
            }
            out << j.dump() << "\n";
            return r.ok ? 0 : 1;
        }

        if (profile->parsed()) {
            Profile pr;
            json j;
            if (p_s) {
                const GProfile g = g_profile(p_ell, *p_s);
                pr = g.profile;
                j["function"] = "g";
                j["ell"] = p_ell;
                j["s"] = *p_s;
                j["threshold"] = g.threshold;
                j["min_at_ell_minus_2"] = g.min_at_ell_minus_2;
                j["min_meets_threshold"] = g.min_meets_threshold;
                j["outside_hypothesis"] = g.outside_hypothesis;
            } else {
                pr = f_profile(p_t, p_ell);
                j["function"] = "f";
                j["t"] = p_t;
                j["ell"] = p_ell;
            }
            j["values"] = json::array();
            for (const auto& pt : pr.points) j["values"].push_back(pt.value);
            j["min"] = pr.min_value;
            j["argmin"] = pr.argmin;
            j["real_argmin"] = pr.real_argmin;
            if (common.json_out) {
                out << j.dump() << "\n";
            } else {
                out << std::setw(4) << "x" << "  " << "value\n";
                for (const auto& pt : pr.points) out << std::setw(4) << pt.x << "  " << pt.value << "\n";
                out << "min " << pr.min_value << " at x in {";
                for (std::size_t i = 0; i < pr.argmin.size(); ++i) out << (i ? "," : "") << pr.argmin[i];
                out << "}; real argmin " << pr.real_argmin << "\n";
                if (p_s)
                    out << "threshold " << j["threshold"] << "; min at ell-2: " << (j["min_at_ell_minus_2"] ? "yes" : "no")
                        << "; meets threshold: " << (j["min_meets_threshold"] ? "yes" : "no") << "\n";
            }
            return 0;
        }

        if (bound->parsed()) {
            const BoundKind kind = parse_bound_kind(b_kind);
            const BigInt v = rhs_bound(kind, bp);
            if (common.json_out)
                out << json{{"kind", b_kind}, {"value", bigint_json(v)}}.dump() << "\n";
            else
                out << v.str() << "\n";
            return 0;
        }

        if (search->parsed()) {
            const GroundParams gp(s_n, s_k);
            const ConditionSpec spec = s_spec.spec();
            SearchOptions so;
            so.time_limit = s_time;
            so.node_cap = s_nodes;
            so.exhaustive = s_exhaustive;
            so.symmetry = s_symmetry == "element-order" ? Symmetry::ElementOrder : Symmetry::None;
            if (!s_incumbent.empty()) so.incumbent = load_family(s_incumbent);
            const SearchResult r = max_family(gp, spec, so);
            json j;
            j["n"] = s_n;
            j["k"] = s_k;
            j["condition"] = s_spec.to_json();
            j["threshold"] = threshold(spec);
            j["size"] = r.size;
            j["optimal"] = r.optimal;
            j["bound"] = r.bound;
            j["nodes"] = r.nodes;
            j["elapsed"] = r.elapsed;
            j["best"] = family_json(r.best);
            json params = s_spec.to_json();
            params["n"] = s_n;
            params["k"] = s_k;
            params["time_limit"] = s_time;
            params["symmetry"] = s_symmetry;
            emit(j.dump() + "\n", s_out, out, command_line, params, started);
            return r.optimal ? 0 : 3;
        }

        if (structure->parsed()) {
            const Family f = load_family(st_family);
            json j;
            if (st_sun->parsed()) {
                const auto sf = find_sunflower(f, st_t, st_u);
                if (sf) {
                    j = {{"found", true},
                         {"kernel", sf->kernel.elements()},
                         {"petal_count", sf->petal_count},
                         {"member_indices", sf->member_indices},
                         {"members", sets_json(f, sf->member_indices)}};
                } else {
                    j = {{"found", false}};
                }
            } else if (st_match->parsed()) {
                const Matching mt = matching_number(f);
                j = {{"matching_number", mt.nu}, {"witness", mt.witness}, {"members", sets_json(f, mt.witness)}};
            } else if (st_dec->parsed()) {
                const Decomposition d = kernel_decompose(f, parse_element_list(st_kernel, f.params().n));
                j["kernel"] = d.kernel.elements();
                j["contains_kernel"] = d.idx_t;
                j["missing_one"] = json::object();
                for (const auto& [a, idx] : d.idx_minus) j["missing_one"][std::to_string(a)] = idx;
                j["leftover"] = d.idx_leftover;
                j["sizes"] = {{"contains_kernel", d.idx_t.size()}, {"leftover", d.idx_leftover.size()}};
            } else {
                AuditOptions ao;
                if (!st_kernel.empty()) ao.kernel = parse_element_list(st_kernel, f.params().n);
                const AuditReport a = lemma_audit(f, st_t, st_ell, ao);
                auto check = [](const AuditCheck& c) {
                    return json{{"pass", c.pass}, {"detail", c.detail}, {"witness", c.witness}};
                };
                j["case"] = a.case1 ? 1 : 2;
                if (a.sunflower)
                    j["sunflower"] = {{"kernel", a.sunflower->kernel.elements()},
                                      {"member_indices", a.sunflower->member_indices}};
                if (a.case1) {
                    j["kernel"] = a.decomposition->kernel.elements();
                    j["kernel_meeting"] = check(a.kernel_meeting);
                    j["residual_intersecting"] = check(a.residual_intersecting);
                    j["residual_cross"] = check(a.residual_cross);
                    j["all_pass"] = a.all_pass();
                }
            }
            out << j.dump() << "\n";
            return 0;
        }

        if (exp->parsed()) {
            const GroundParams gp(e_n, e_k);
            const ConditionSpec spec = e_spec.spec();
            ExportOptions eo;
            eo.tuple_cap = e_cap;
            const std::string body =
                e_format == "ilp" ? export_ilp(gp, spec, eo) : export_cnf(gp, spec, e_target, eo);
            json params = e_spec.to_json();
            params["format"] = e_format;
            params["n"] = e_n;
            params["k"] = e_k;
            params["target"] = e_target;
            emit(body, e_out, out, command_line, params, started);
            return 0;
        }

        if (rep->parsed()) {
            std::string grid_text;
            if (!r_grid_file.empty()) {
                std::ifstream in(r_grid_file);
                if (!in) throw std::runtime_error("cannot read " + r_grid_file);
                std::ostringstream b;
                b << in.rdbuf();
                grid_text = b.str();
            }
            for (char c : r_grid) grid_text += c == ';' ? '\n' : c;
            ReportOptions ro;
            ro.solve = !r_no_solve;
            ro.time_limit = r_time;
            const auto rows = report(parse_grid(grid_text), ro);
            std::string body;
            if (common.json_out) {
                json a = json::array();
                for (const auto& r : rows) {
                    json row{{"n", r.point.n}, {"k", r.point.k}, {"t", r.point.t}, {"ell", r.point.ell}};
                    row["s"] = r.point.s ? json(*r.point.s) : json(nullptr);
                    row["bound"] = r.bound ? bigint_json(*r.bound) : json(nullptr);
                    row["construction"] = r.construction ? json(*r.construction) : json(nullptr);
                    row["solver_best"] = r.solver_best ? json(*r.solver_best) : json(nullptr);
                    row["optimal"] = r.optimal ? json(*r.optimal) : json(nullptr);
                    row["marker"] = r.marker;
                    row["error"] = r.error;
                    a.push_back(row);
                }
                body = a.dump() + "\n";
            } else {
                body = r_csv ? report_csv(rows) : report_text(rows);
            }
            emit(body, r_out, out, command_line, {{"grid", grid_text}, {"time_limit", r_time}, {"solve", !r_no_solve}},
                 started);
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace ekrf
