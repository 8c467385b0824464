// nlbox — command-line surface for the nonlocal-box toolkit.
//
// Subcommands: classify, decompose, vertices, dimension, simulate, ic,
// ic-scan, nogo, game, catalog. Every command prints a single JSON document
// on stdout (CSV on request for tabular outputs); diagnostics go to stderr.
//
// Exit codes: 0 success, 2 unparseable input or unknown name, 3 array that
// fails exact validation (the message names the violated constraint),
// 1 anything else.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "nlbox/infocausality.hpp"
#include "nlbox/json_io.hpp"
#include "nlbox/nogo.hpp"

namespace {

using nlbox::Json;

Json load_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw nlbox::MalformedInput(std::string("JSON parse error: ") + e.what());
    }
}

// An array argument is a catalog name, inline JSON, "-" for stdin, or a path.
Json load_array_json(const std::string& input) {
    if (nlbox::is_catalog_name(input)) return nlbox::catalog_json(input);
    if (!input.empty() && input.front() == '{') return load_json_text(input);
    if (input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return load_json_text(ss.str());
    }
    std::ifstream f(input);
    if (!f) throw nlbox::MalformedInput("cannot read input: '" + input + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_json_text(ss.str());
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// ---------------------------------------------------------------------------

int cmd_classify(const std::string& input) {
    nlbox::ParsedArray pa = nlbox::parse_array(load_array_json(input));
    const nlbox::CorrelationArray& arr = pa.array;
    nlbox::SignalingReport rep = nlbox::signaling_report(arr);
    Json out;
    out["valid"] = true;
    out["inexact_input"] = pa.inexact_input;
    out["signaling"] = nlbox::serialize_signaling(rep);
    out["chsh"] = nlbox::serialize_chsh(nlbox::chsh(arr));
    out["sim_success_probability"] = nlbox::to_string(nlbox::sim_success_probability(arr));
    nlbox::MembershipVerdict ns = nlbox::membership_nosignaling(arr);
    out["nosignaling"] = ns.inside;
    Json certs;
    certs["nosignaling"] = nlbox::serialize_verdict(nlbox::nosignaling_vertex_set(), ns);
    if (rep.no_signaling()) {
        nlbox::MembershipVerdict lv = nlbox::membership_local(arr);
        out["local"] = lv.inside;
        certs["local"] = nlbox::serialize_verdict(nlbox::local_vertex_set(), lv);
    } else {
        out["local"] = nullptr;
        certs["local"] = nullptr;
    }
    out["certificates"] = std::move(certs);
    emit(out);
    return 0;
}

int cmd_decompose(const std::string& input, const std::string& set_name, bool two) {
    nlbox::ParsedArray pa = nlbox::parse_array(load_array_json(input));
    const nlbox::VertexSet* set = nullptr;
    nlbox::MembershipVerdict verdict;
    if (set_name == "local") {
        set = &nlbox::local_vertex_set();
        verdict = nlbox::membership_local(pa.array);
    } else if (set_name == "nosignaling") {
        set = &nlbox::nosignaling_vertex_set();
        verdict = nlbox::membership_nosignaling(pa.array);
    } else {
        throw nlbox::MalformedInput("unknown vertex set: '" + set_name + "'");
    }
    Json out;
    out["set"] = set->name;
    out["inside"] = verdict.inside;
    if (!verdict.inside) {
        out["certificate"] = nlbox::serialize_inequality(*verdict.inequality);
        emit(out);
        return 0;
    }
    nlbox::Decomposition lexmin = nlbox::decompose(pa.array, *set);
    out["certificate"] = nlbox::serialize_decomposition(*set, lexmin);
    if (two) {
        nlbox::TwoDecompositions td = nlbox::two_decompositions(pa.array, *set);
        Json jt;
        jt["unique"] = td.unique;
        jt["first"] = nlbox::serialize_decomposition(*set, td.first);
        if (!td.unique) jt["second"] = nlbox::serialize_decomposition(*set, *td.second);
        out["two"] = std::move(jt);
    }
    emit(out);
    return 0;
}

int cmd_vertices(const std::string& format) {
    std::vector<nlbox::TaggedVertex> verts = nlbox::enumerate_vertices();
    if (format == "csv") {
        std::cout << "id,tag,a00,b00,a01,b01,a10,b10,a11,b11\n";
        for (const nlbox::TaggedVertex& t : verts) {
            std::cout << int(t.vertex.id) << "," << (t.local ? "local" : "signaling");
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    std::cout << "," << t.vertex.a(x, y) << "," << t.vertex.b(x, y);
            std::cout << "\n";
        }
        return 0;
    }
    Json list = Json::array();
    int local_count = 0;
    for (const nlbox::TaggedVertex& t : verts) {
        Json outputs;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                outputs[std::to_string(x) + std::to_string(y)] =
                    Json::array({t.vertex.a(x, y), t.vertex.b(x, y)});
        Json jv{{"id", t.vertex.id}, {"tag", t.local ? "local" : "signaling"},
                {"outputs", std::move(outputs)}};
        if (t.local) {
            // a(0)a(1);b(0)b(1) strategy notation, defined for local vertices
            std::string strat;
            strat += char('0' + t.vertex.a(0, 0));
            strat += char('0' + t.vertex.a(1, 0));
            strat += ';';
            strat += char('0' + t.vertex.b(0, 0));
            strat += char('0' + t.vertex.b(0, 1));
            jv["strategy"] = strat;
            ++local_count;
        }
        list.push_back(std::move(jv));
    }
    emit(Json{{"count", verts.size()},
              {"local_count", local_count},
              {"signaling_count", static_cast<int>(verts.size()) - local_count},
              {"vertices", std::move(list)}});
    return 0;
}

int cmd_dimension() {
    emit(Json{{"all_256", nlbox::affine_dimension(nlbox::all_vertex_set())},
              {"local_16", nlbox::affine_dimension(nlbox::local_vertex_set())},
              {"nosignaling_24", nlbox::affine_dimension(nlbox::nosignaling_vertex_set())}});
    return 0;
}

nlbox::QuantumBoxSettings parse_angles(const std::string& text) {
    std::stringstream ss(text);
    double vals[4];
    char comma;
    for (int i = 0; i < 4; ++i) {
        if (i > 0 && (!(ss >> comma) || comma != ',')) throw nlbox::MalformedInput("--angles expects a0,a1,b0,b1");
        if (!(ss >> vals[i])) throw nlbox::MalformedInput("--angles expects four numbers");
    }
    return {vals[0], vals[1], vals[2], vals[3]};
}

nlbox::BoxKind parse_kind(const std::string& kind, bool allow_classical) {
    if (kind == "pr") return nlbox::BoxKind::Pr;
    if (kind == "bohm") return nlbox::BoxKind::Bohm;
    if (kind == "quantum") return nlbox::BoxKind::Quantum;
    if (allow_classical && kind == "classical") return nlbox::BoxKind::Classical;
    throw nlbox::MalformedInput("unknown box kind: '" + kind + "'");
}

nlbox::InputOrder parse_order(const std::string& order) {
    if (order == "alice-first") return nlbox::InputOrder::AliceFirst;
    if (order == "bob-first") return nlbox::InputOrder::BobFirst;
    if (order == "simultaneous") return nlbox::InputOrder::Simultaneous;
    throw nlbox::MalformedInput("unknown order: '" + order + "'");
}

int cmd_simulate(const nlbox::SessionConfig& cfg) {
    nlbox::BoxSession session = nlbox::run_session(cfg);
    Json out = nlbox::serialize_session(session);
    out["empirical"] = nlbox::serialize_empirical(nlbox::empirical_array(session));
    out["analytic"] = nlbox::serialize_array(nlbox::analytic_array(cfg));
    if (cfg.kind == nlbox::BoxKind::Pr || cfg.kind == nlbox::BoxKind::Bohm) {
        long violations = 0;
        for (const nlbox::SessionRound& r : session.rounds)
            if ((r.a ^ r.b) != (r.x & r.y)) ++violations;
        out["pr_constraint_violations"] = violations;
    }
    emit(out);
    return 0;
}

Json ic_report_json(const nlbox::ICReport& rep, const std::string& e_text) {
    return Json{{"E", e_text},
                {"E_value", rep.E.to_string()},
                {"n", rep.n},
                {"P_k", rep.p_k.to_string()},
                {"entropy", rep.entropy.to_string()},
                {"bound", rep.bound.to_string()},
                {"deficit", rep.deficit.to_string()},
                {"violated", rep.violated},
                {"precision_bits", rep.precision_bits}};
}

int cmd_ic(const std::string& e_text, long n, long prec) {
    nlbox::BigFloat e = nlbox::parse_scalar(e_text, prec);
    nlbox::ICReport rep = nlbox::ic_report(e, n, prec);
    Json out = ic_report_json(rep, e_text);
    out["strength"] = nlbox::to_string(nlbox::classify_strength(e));
    emit(out);
    return 0;
}

int cmd_ic_scan(const std::string& e_text, long n_max, long prec, const std::string& format) {
    nlbox::BigFloat e = nlbox::parse_scalar(e_text, prec);
    std::optional<long> minimal = nlbox::minimal_violation_n(e, n_max, prec);
    std::vector<nlbox::ICReport> reports;
    reports.reserve(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) reports.push_back(nlbox::ic_report(e, n, prec));
    std::optional<long> first_violated;
    for (const nlbox::ICReport& r : reports)
        if (r.violated) {
            first_violated = r.n;
            break;
        }
    if (first_violated != minimal)
        throw nlbox::InternalCheckFailure("scan and minimal_violation_n disagree");
    if (format == "csv") {
        std::cout << "n,deficit,violated\n";
        for (const nlbox::ICReport& r : reports)
            std::cout << r.n << "," << r.deficit.to_string(24) << ","
                      << (r.violated ? "true" : "false") << "\n";
        return 0;
    }
    Json rows = Json::array();
    for (const nlbox::ICReport& r : reports)
        rows.push_back(Json{{"n", r.n},
                            {"deficit", r.deficit.to_string(24)},
                            {"violated", r.violated}});
    Json out{{"E", e_text},
             {"E_value", e.to_string()},
             {"n_max", n_max},
             {"rows", std::move(rows)}};
    if (minimal)
        out["minimal_violation_n"] = *minimal;
    else
        out["minimal_violation_n"] = nullptr;
    emit(out);
    return 0;
}

Json state_json(const nlbox::StateVector& s) {
    Json amps = Json::array();
    for (int i = 0; i < s.dimension(); ++i)
        amps.push_back(Json::array({s.amplitudes[i].real(), s.amplitudes[i].imag()}));
    return amps;
}

int cmd_nogo_pbr() {
    nlbox::PbrTable t = nlbox::pbr_table();
    Json table = Json::array(), zeros = Json::array(), sums = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json row = Json::array(), zrow = Json::array();
        double sum = 0;
        for (int j = 0; j < 4; ++j) {
            double p = t.probabilities[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            row.push_back(p);
            zrow.push_back(p < 1e-10);
            sum += p;
        }
        table.push_back(std::move(row));
        zeros.push_back(std::move(zrow));
        sums.push_back(sum);
    }
    Json outcomes = Json::array();
    for (int j = 0; j < 4; ++j)
        outcomes.push_back(Json{{"label", t.outcome_labels[static_cast<std::size_t>(j)]},
                                {"amplitudes", state_json(t.outcomes[static_cast<std::size_t>(j)])}});
    emit(Json{{"preparations", t.preparation_labels},
              {"outcomes", std::move(outcomes)},
              {"table", std::move(table)},
              {"zero_pattern", std::move(zeros)},
              {"row_sums", std::move(sums)}});
    return 0;
}

nlbox::Complex parse_complex(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw nlbox::MalformedInput("complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

int cmd_nogo_project(const std::string& state_file, const std::string& obs_file) {
    Json js = load_array_json(state_file);  // reuses file/inline/"-" handling
    Json jo = load_array_json(obs_file);
    if (!js.contains("amplitudes") || !js["amplitudes"].is_array())
        throw nlbox::MalformedInput("state file needs an 'amplitudes' array");
    if (!jo.contains("matrix") || !jo["matrix"].is_array())
        throw nlbox::MalformedInput("observable file needs a 'matrix' array of rows");
    const Json& amps = js["amplitudes"];
    nlbox::CVector v(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<long>(i)] = parse_complex(amps[i]);
    const Json& rows = jo["matrix"];
    nlbox::CMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != rows.size())
            throw nlbox::MalformedInput("observable matrix must be square (row-major rows)");
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(static_cast<long>(i), static_cast<long>(j)) = parse_complex(rows[i][j]);
    }
    nlbox::ProjectionDecomposition dec =
        nlbox::preferred_projections(nlbox::StateVector(v), nlbox::HermitianObservable(m));
    Json branches = Json::array();
    double wsum = 0;
    for (const nlbox::ProjectionBranch& br : dec.branches) {
        branches.push_back(Json{{"eigenvalue", br.eigenvalue},
                                {"weight", br.weight},
                                {"state", state_json(br.state)}});
        wsum += br.weight;
    }
    emit(Json{{"branches", std::move(branches)}, {"weight_sum", wsum}});
    return 0;
}

int cmd_game(const nlbox::SessionConfig& cfg) {
    nlbox::GameResult g = nlbox::guessing_game_n1(cfg);
    Json out{{"kind", nlbox::to_string(cfg.kind)},
             {"rounds", g.rounds},
             {"seed", cfg.seed},
             {"correct", g.correct},
             {"empirical_P_k", g.empirical_p},
             {"analytic_P_k", g.analytic_p},
             {"standard_error", g.standard_error}};
    if (cfg.kind == nlbox::BoxKind::Classical) out["vertex"] = cfg.vertex_id;
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nlbox: exact analysis and simulation of two-input/two-output nonlocal boxes"};
    app.require_subcommand(1);

    std::string input, set_name = "local", format = "json";
    bool two = false;
    auto* classify = app.add_subcommand("classify", "Validate an array and report signaling, CHSH, and polytope membership");
    classify->add_option("input", input, "catalog name, JSON text, file path, or - for stdin")->required();

    auto* decompose = app.add_subcommand("decompose", "Convex decomposition over a vertex set, or a separating certificate");
    decompose->add_option("input", input, "catalog name, JSON text, file path, or - for stdin")->required();
    decompose->add_option("--set", set_name, "vertex set: local | nosignaling")->default_str("local");
    decompose->add_flag("--two", two, "also probe for two distinct decompositions / a uniqueness proof");

    auto* vertices = app.add_subcommand("vertices", "Enumerate the 256 deterministic vertices with local/signaling tags");
    vertices->add_option("--format", format, "json | csv")->default_str("json");

    app.add_subcommand("dimension", "Affine dimensions of the vertex sets");

    std::string kind = "pr", order = "alice-first", angles_text;
    long rounds = 1000, prec = nlbox::kDefaultPrecision, n = 1, n_max = 100;
    std::uint64_t seed = 0;
    bool disclose = false;
    int vertex_id = 0;
    auto* simulate = app.add_subcommand("simulate", "Run a seeded box session and estimate its array");
    simulate->add_option("--kind", kind, "pr | bohm | quantum")->required();
    simulate->add_option("--rounds", rounds, "number of rounds")->default_str("1000");
    simulate->add_option("--seed", seed, "generator seed")->default_str("0");
    simulate->add_flag("--disclose-lambda", disclose, "log the Bohm hidden variable per round");
    simulate->add_option("--order", order, "bohm input order: alice-first | bob-first | simultaneous")
        ->default_str("alice-first");
    simulate->add_option("--angles", angles_text, "quantum angles a0,a1,b0,b1 (radians)");

    std::string e_text;
    auto* ic = app.add_subcommand("ic", "Information-causality report for one (E, n)");
    ic->add_option("--E", e_text, "box strength: decimal, num/den, or 1/sqrt2")->required();
    ic->add_option("--n", n, "nesting level (N = 2^n bits)")->required();
    ic->add_option("--prec", prec, "working precision in bits")->default_str("300");

    auto* ic_scan = app.add_subcommand("ic-scan", "Deficits and verdicts for n = 1..n-max");
    ic_scan->add_option("--E", e_text, "box strength: decimal, num/den, or 1/sqrt2")->required();
    ic_scan->add_option("--n-max", n_max, "largest n to scan")->required();
    ic_scan->add_option("--prec", prec, "working precision in bits")->default_str("300");
    ic_scan->add_option("--format", format, "json | csv")->default_str("json");

    std::string state_file, obs_file;
    auto* nogo = app.add_subcommand("nogo", "Quantum no-go checks");
    nogo->require_subcommand(1);
    auto* nogo_pbr = nogo->add_subcommand("pbr", "Preparation/outcome orthogonality table");
    (void)nogo_pbr;
    auto* nogo_project = nogo->add_subcommand("project", "Project a state onto the eigenspaces of an observable");
    nogo_project->add_option("--state", state_file, "JSON file with 'amplitudes': [[re,im],...]")->required();
    nogo_project->add_option("--observable", obs_file, "JSON file with 'matrix': row-major [[re,im],...] rows")->required();

    auto* game = app.add_subcommand("game", "One-bit guessing game (n = 1)");
    game->add_option("--kind", kind, "pr | bohm | quantum | classical")->required();
    game->add_option("--rounds", rounds, "number of rounds")->default_str("1000");
    game->add_option("--seed", seed, "generator seed")->default_str("0");
    game->add_option("--order", order, "bohm input order")->default_str("alice-first");
    game->add_option("--angles", angles_text, "quantum angles a0,a1,b0,b1");
    game->add_option("--vertex", vertex_id, "deterministic vertex id for --kind classical")->default_str("0");

    std::string catalog_name;
    auto* catalog = app.add_subcommand("catalog", "Print a built-in array");
    catalog->add_option("name", catalog_name, "table2..table8 | uniform | pr | quantum-tsirelson")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(input);
        if (decompose->parsed()) return cmd_decompose(input, set_name, two);
        if (vertices->parsed()) return cmd_vertices(format);
        if (app.get_subcommand("dimension")->parsed()) return cmd_dimension();
        if (simulate->parsed() || game->parsed()) {
            nlbox::SessionConfig cfg;
            cfg.kind = parse_kind(kind, /*allow_classical=*/game->parsed());
            cfg.rounds = rounds;
            cfg.seed = seed;
            cfg.order = parse_order(order);
            cfg.disclose_lambda = disclose;
            cfg.vertex_id = vertex_id;
            if (!angles_text.empty()) cfg.settings = parse_angles(angles_text);
            return simulate->parsed() ? cmd_simulate(cfg) : cmd_game(cfg);
        }
        if (ic->parsed()) return cmd_ic(e_text, n, prec);
        if (ic_scan->parsed()) return cmd_ic_scan(e_text, n_max, prec, format);
        if (nogo_pbr->parsed()) return cmd_nogo_pbr();
        if (nogo_project->parsed()) return cmd_nogo_project(state_file, obs_file);
        if (catalog->parsed()) {
            emit(nlbox::catalog_json(catalog_name));
            return 0;
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const nlbox::MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlbox::UnknownCatalogEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlbox::NegativeProbability& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlbox::CellNotNormalized& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlbox::SignalingInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
