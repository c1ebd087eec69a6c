#include "hmt/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hmt/completion.hpp"
#include "hmt/errors.hpp"
#include "hmt/oracle.hpp"
#include "hmt/rewrite.hpp"

namespace hmt {

namespace {

using json = nlohmann::json;

Rational rational_field(const json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw SchemaError(what + " must be an integer or a rational string");
}

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json integers(const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p())
            a.push_back(x.get_si());
        else
            a.push_back(x.get_str());
    }
    return a;
}

ParameterWindow default_window(std::size_t k) {
    return {std::vector<Rational>(k, Rational(-3, 2)), std::vector<Rational>(k, Rational(3, 2))};
}

DatasetSpec make_entry(std::string name, std::size_t n, std::vector<std::vector<long>> cols, std::vector<Rational> gamma,
                       std::string note, bool singular = false) {
    DatasetSpec d;
    d.name = std::move(name);
    d.torus = TorusDatum::create(n, cols);
    d.parameter.gamma_tilde = std::move(gamma);
    d.options.window = default_window(d.torus.k());
    d.singular = singular;
    d.note = std::move(note);
    return d;
}

}  // namespace

DatasetSpec dataset_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("dataset must be an object");
    static const std::set<std::string> known{"schema", "name", "torus", "parameter", "options", "singular", "note"};
    for (const auto& [key, v] : j.items())
        if (!known.count(key)) throw SchemaError("unknown dataset field \"" + key + "\"");
    if (!j.contains("schema") || j["schema"] != "dataset/1") throw SchemaError("schema must be \"dataset/1\"");
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
        throw SchemaError("dataset needs a non-empty \"name\"");
    if (!j.contains("torus")) throw SchemaError("dataset needs \"torus\"");
    if (!j.contains("parameter")) throw SchemaError("dataset needs \"parameter\"");
    DatasetSpec d;
    d.name = j["name"].get<std::string>();
    try {
        d.torus = torus_from_json(j["torus"]);
    } catch (const InvalidDatum& e) {
        throw SchemaError(std::string("torus: ") + e.what());
    }
    d.parameter = parameter_from_json(j["parameter"], d.torus.n());
    if (d.parameter.gamma_tilde.size() != d.torus.k()) throw SchemaError("gammaTilde must have length k");
    d.options.window = default_window(d.torus.k());
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw SchemaError("options must be an object");
        static const std::set<std::string> opts{"cutoff", "radius", "order", "seed", "window"};
        for (const auto& [key, v] : o.items())
            if (!opts.count(key)) throw SchemaError("unknown option \"" + key + "\"");
        auto count = [&](const char* key, auto& field) {
            if (!o.contains(key)) return;
            if (!o[key].is_number_integer() || o[key].get<long long>() < 0)
                throw SchemaError(std::string("option ") + key + " must be a nonnegative integer");
            field = o[key].get<std::remove_reference_t<decltype(field)>>();
        };
        count("cutoff", d.options.cutoff);
        count("radius", d.options.radius);
        count("order", d.options.order);
        count("seed", d.options.seed);
        if (o.contains("window")) {
            const auto& w = o["window"];
            if (!w.is_object() || !w.contains("lower") || !w.contains("upper") || !w["lower"].is_array() ||
                !w["upper"].is_array())
                throw SchemaError("window needs \"lower\" and \"upper\" arrays");
            ParameterWindow pw;
            for (const auto& v : w["lower"]) pw.lower.push_back(rational_field(v, "window bound"));
            for (const auto& v : w["upper"]) pw.upper.push_back(rational_field(v, "window bound"));
            if (pw.lower.size() != d.torus.k() || pw.upper.size() != d.torus.k())
                throw SchemaError("window bounds must have length k");
            for (std::size_t i = 0; i < pw.lower.size(); ++i)
                if (pw.lower[i] > pw.upper[i]) throw SchemaError("window lower bound exceeds upper bound");
            d.options.window = pw;
        }
    }
    if (j.contains("singular")) {
        if (!j["singular"].is_boolean()) throw SchemaError("singular must be a boolean");
        d.singular = j["singular"].get<bool>();
    }
    if (j.contains("note")) {
        if (!j["note"].is_string()) throw SchemaError("note must be a string");
        d.note = j["note"].get<std::string>();
    }
    return d;
}

json to_json(const DatasetSpec& d) {
    json o{{"cutoff", d.options.cutoff},
           {"radius", d.options.radius},
           {"order", d.options.order},
           {"seed", d.options.seed},
           {"window", {{"lower", rationals(d.options.window.lower)}, {"upper", rationals(d.options.window.upper)}}}};
    json j{{"schema", "dataset/1"},
           {"name", d.name},
           {"torus", to_json(d.torus)},
           {"parameter", to_json(d.parameter)},
           {"options", o},
           {"singular", d.singular}};
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

std::vector<DatasetSpec> corpus() {
    return {
        make_entry("tate", 1, {}, {}, "k = 0: one chamber class, one arrow pair"),
        make_entry("a1hat", 2, {{1, 1}}, {Rational(1, 2)}, "diagonal circle in a rank-2 torus"),
        make_entry("triangle", 3, {{1, 1, 1}}, {Rational(1, 2)}, "diagonal circle in a rank-3 torus"),
        make_entry("rank2", 3, {{1, 0, 1}, {0, 1, 1}}, {Rational(1, 3), Rational(2, 3)}, "two-dimensional embedded torus"),
        make_entry("orbifold", 2, {{1, 2}}, {Rational(1, 2)}, "non-unimodular: rewriting only"),
        make_entry("a1hat_singular", 2, {{1, 1}}, {Rational(0)}, "parameter on the wall through 0", true),
    };
}

std::optional<DatasetSpec> corpus_entry(const std::string& name) {
    for (auto& d : corpus())
        if (d.name == name) return d;
    return std::nullopt;
}

std::size_t thread_budget() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HML_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return hw;
}

namespace {

// Runs f(0..n-1) on at most thread_budget() threads; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    std::size_t t = std::min(thread_budget(), n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Flags {
    std::string format = "json";
    bool cover = false;
};

struct Section {
    std::string status = "pass";  // pass | fail | skipped
    json result = json::object();
    std::string text;  // table or dot rendering

    void merge(const OracleReport& r, const std::string& key) {
        result[key] = to_json(r);
        if (!r.pass) status = "fail";
    }
};

std::string status_of(bool ok) { return ok ? "pass" : "fail"; }

Section cmd_circuits(const DatasetSpec& d, const Flags&) {
    Section s;
    json arr = json::array();
    std::ostringstream t;
    auto cs = circuits(d.torus);
    for (const auto& c : cs) {
        json sup = json::array();
        for (auto i : c.support) sup.push_back(i);
        arr.push_back({{"vector", integers(c.vector)}, {"support", sup}, {"coefficients", rationals(c.coefficients)}});
        t << to_string(to_label(c.vector)) << "  coefficients " << rationals(c.coefficients).dump() << "\n";
    }
    s.result = {{"count", cs.size()}, {"circuits", arr}};
    s.text = "circuits: " + std::to_string(cs.size()) + "\n" + t.str();
    return s;
}

Section cmd_generic(const DatasetSpec& d, const Flags&) {
    Section s;
    auto g = is_generic(d.torus, d.parameter);
    s.result = {{"generic", g.generic}, {"intentionallySingular", d.singular}};
    if (g.witness)
        s.result["witness"] = {{"circuit", integers(g.witness->circuit)}, {"level", g.witness->level.get_str()}};
    s.status = status_of(g.generic || d.singular);
    s.text = std::string(g.generic ? "generic" : "on a wall") + (d.singular ? " (flagged singular)" : "") + "\n";
    if (g.witness) s.text += "witness circuit " + to_string(to_label(g.witness->circuit)) + " level " + g.witness->level.get_str() + "\n";
    return s;
}

Section cmd_chambers(const DatasetSpec& d, const Flags&) {
    Section s;
    auto cls = enumerate_chambers(d.torus, d.parameter);
    json arr = json::array();
    std::ostringstream t;
    t << "chamber classes: " << cls.size() << "\n";
    for (const auto& c : cls) {
        arr.push_back({{"id", c.id}, {"representative", c.representative}, {"invariant", integers(c.invariant)}});
        t << "c" << c.id << "  " << to_string(c.representative) << "  invariant " << to_string(to_label(c.invariant)) << "\n";
    }
    s.result = {{"count", cls.size()}, {"classes", arr}};
    s.text = t.str();
    return s;
}

Section cmd_quiver(const DatasetSpec& d, const Flags& f) {
    Section s;
    MirrorModel m(d.torus, d.parameter);
    auto q = f.cover ? global_quiver(m, d.options.radius) : quotient_quiver(m);
    s.result = to_json(q);
    if (f.format == "dot") {
        s.text = to_dot(q);
    } else {
        std::ostringstream t;
        t << q.name << ": " << q.vertices.size() << " vertices, " << q.arrow_pairs.size() << " arrow pairs, "
          << q.monodromy.size() << " monodromy relations, " << q.commute.size() << " commutation relations\n";
        for (const auto& v : q.vertices)
            t << v.id << "  " << to_string(v.label) << "  loops " << v.loops.rank << "/" << v.loops.ambient_rank << "\n";
        s.text = t.str();
    }
    return s;
}

Section cmd_algebra(const DatasetSpec& d, const Flags&) {
    Section s;
    auto m = std::make_shared<MirrorModel>(d.torus, d.parameter);
    std::ostringstream t;
    if (!is_unimodular(d.torus)) {
        // normal forms need unimodular data; report the rewriting normal words instead
        RewriteSystem rs(quotient_quiver(*m));
        json per = json::array();
        for (const auto& c : m->classes()) {
            std::set<std::map<Word, Laurent>> normal;
            std::size_t words = 0;
            for (const auto& w : rs.words_from(c.representative, d.options.cutoff)) {
                normal.insert(rs.reduce(w).terms);
                ++words;
            }
            per.push_back({{"class", c.id}, {"words", words}, {"distinctNormalForms", normal.size()}});
            t << "c" << c.id << ": " << words << " words, " << normal.size() << " normal forms\n";
        }
        s.result = {{"rewritingOnly", true}, {"classes", per}};
        s.text = "rewriting only (non-unimodular)\n" + t.str();
        return s;
    }
    NormalFormAlgebra alg(m);
    json homs = json::array();
    for (const auto& a : m->classes())
        for (const auto& b : m->classes()) {
            auto r = alg.hom_rank_table(a.representative, b.representative, d.options.cutoff);
            homs.push_back({{"src", a.id}, {"dst", b.id}, {"ranks", r}});
            t << "Hom(c" << a.id << ", c" << b.id << ")  " << json(r).dump() << "\n";
        }
    s.result = {{"rewritingOnly", false}, {"homRanks", homs}};
    auto rw = compare_rewriting(m, std::min<std::size_t>(2 * d.options.cutoff, 6));
    s.merge(rw, "rewriting");
    t << "rewriting vs normal form: " << rw.stats["pairs"] << " pairs, " << (rw.pass ? "agree" : "DISAGREE") << "\n";
    s.text = t.str();
    return s;
}

Section cmd_oracle(const DatasetSpec& d, const Flags&) {
    Section s;
    if (!is_unimodular(d.torus)) {
        s.status = "skipped";
        s.result = {{"reason", "oracle comparison needs unimodular data"}};
        s.text = "skipped: non-unimodular\n";
        return s;
    }
    OracleReport reps[2];
    parallel_for(2, [&](std::size_t i) {
        reps[i] = i == 0 ? verify_tilting_iso(d.torus, d.parameter, d.options.cutoff)
                         : verify_invariant_corner(d.torus, d.parameter, d.options.cutoff);
    });
    s.merge(reps[0], "tilting");
    s.merge(reps[1], "invariantCorner");
    std::ostringstream t;
    for (const auto& r : reps) {
        t << r.check << " (cutoff " << r.cutoff << "): " << (r.pass ? "pass" : "FAIL") << "\n";
        for (const auto& m : r.mismatches) t << "  " << m << "\n";
    }
    s.text = t.str();
    return s;
}

Section cmd_completion(const DatasetSpec& d, const Flags&) {
    Section s;
    auto g = build_gamma_series(3);
    json gc = json::array();
    for (std::int64_t j = 0; j <= 3; ++j) gc.push_back(to_string(g.rational_coefficient(Label{j})));
    s.result["gammaCoefficients"] = gc;
    OracleReport reps[2];
    parallel_for(2, [&](std::size_t i) {
        reps[i] = i == 0 ? verify_roundtrip(d.torus, d.options.order) : verify_moment_intertwine(d.torus, d.options.order);
    });
    s.merge(reps[0], "roundtrip");
    s.merge(reps[1], "momentIntertwine");
    std::ostringstream t;
    t << "gamma coefficients " << gc.dump() << "\n";
    for (const auto& r : reps) {
        t << r.check << " (order " << r.cutoff << "): " << (r.pass ? "pass" : "FAIL") << "\n";
        for (const auto& m : r.mismatches) t << "  " << m << "\n";
    }
    s.text = t.str();
    return s;
}

Section cmd_schober(const DatasetSpec& d, const Flags& f) {
    Section s;
    auto arr = std::make_shared<DiscriminantArrangement>(d.torus);
    auto faces = arr->faces(d.options.window);
    const std::size_t cutoff = d.options.cutoff, k = d.torus.k();
    if (f.format == "dot") s.text = face_poset_dot(arr, faces);

    struct Job {
        std::string kind;
        std::size_t a, b;
        std::optional<DiscriminantFace> mid;
    };
    std::vector<Job> jobs;
    for (const auto& lo : faces)
        for (const auto& up : faces)
            if (!(lo == up) && arr->incident(lo, up)) jobs.push_back({"corner", lo.id, up.id, std::nullopt});
    for (const auto& x : faces)
        for (const auto& y : faces) {
            if (x.dim != k || y.dim != k || !(x.id < y.id)) continue;
            auto w = arr->closure_meet(x, y);
            if (!w || w->dim + 1 != k) continue;
            jobs.push_back({"adjacent", x.id, y.id, std::nullopt});
            jobs.push_back({"collinear", x.id, y.id, *w});
            jobs.push_back({"control", x.id, y.id, *w});
            jobs.push_back({"wallcross", x.id, y.id, std::nullopt});
        }
    std::vector<json> out(jobs.size());
    std::vector<int> ok(jobs.size(), 1);
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto& j = jobs[i];
        const auto& a = faces[j.a];
        const auto& b = faces[j.b];
        json e{{"kind", j.kind}, {"a", a.str()}, {"b", b.str()}};
        if (j.kind == "wallcross") {
            auto w = wall_crossing_bimodule(arr, b, a, cutoff, d.options.seed);
            e["ranks"] = w.ranks;
            e["directRanks"] = w.direct_ranks;
            ok[i] = w.ranks == w.direct_ranks;
        } else {
            OracleReport r = j.kind == "corner"     ? check_corner_identity(arr, a, b, cutoff)
                             : j.kind == "adjacent" ? check_adjacent_equivalence(arr, a, b, cutoff)
                                                    : check_collinear_composition(arr, a, *j.mid, b, cutoff, j.kind == "control");
            e["report"] = to_json(r);
            // the engineered control must be detected
            ok[i] = j.kind == "control" ? !r.pass : r.pass;
        }
        e["status"] = status_of(ok[i]);
        out[i] = std::move(e);
    });
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // kind -> (passed, total)
    json checks = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& t = tally[jobs[i].kind];
        t.first += ok[i];
        ++t.second;
        if (!ok[i]) s.status = "fail";
        checks.push_back(out[i]);
    }
    json fl = json::array();
    for (const auto& face : faces) {
        FaceModel m(arr, {face});
        auto jf = to_json(face);
        jf["vertexClasses"] = m.classes().size();
        fl.push_back(jf);
    }
    s.result = {{"faces", fl}, {"checks", checks}};
    if (is_generic(d.torus, d.parameter)) {
        auto r = check_mirror_consistency(d.torus, d.parameter);
        s.merge(r, "mirror");
    }
    if (f.format != "dot") {
        std::ostringstream t;
        t << "faces: " << faces.size() << "\n";
        for (const auto& [kind, c] : tally) t << kind << ": " << c.first << "/" << c.second << "\n";
        if (s.result.contains("mirror")) t << "mirror: " << s.result["mirror"]["status"].get<std::string>() << "\n";
        s.text = t.str();
    }
    return s;
}

using Handler = Section (*)(const DatasetSpec&, const Flags&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h{
        {"circuits", cmd_circuits}, {"generic", cmd_generic}, {"chambers", cmd_chambers},
        {"quiver", cmd_quiver},     {"algebra", cmd_algebra}, {"oracle", cmd_oracle},
        {"completion", cmd_completion}, {"schober", cmd_schober},
    };
    return h;
}

bool needs_generic(const std::string& cmd) {
    return cmd == "chambers" || cmd == "quiver" || cmd == "algebra" || cmd == "oracle";
}

DatasetSpec load_dataset(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) {
        std::ifstream in(arg);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw SchemaError(arg + ": " + e.what());
        }
        return dataset_from_json(j);
    }
    std::string stem = fs::path(arg).stem().string();
    if (auto d = corpus_entry(stem)) return *d;
    throw SchemaError("no dataset file or corpus entry named \"" + arg + "\"");
}

int emit(const std::string& cmd, const DatasetSpec& d, const Flags& f, std::ostream& out) {
    json report{{"schema", "report/1"}, {"command", cmd}, {"dataset", d.name}};
    bool failed = false;
    std::ostringstream text;
    if (cmd == "all") {
        json sections = json::object();
        for (const auto& [name, h] : handlers()) {
            Section s;
            if (needs_generic(name) && !is_generic(d.torus, d.parameter)) {
                s.status = "skipped";
                s.result = {{"reason", "parameter lies on a wall"}};
                s.text = "skipped: parameter lies on a wall\n";
            } else {
                Flags sub = f;
                sub.format = "table";
                s = h(d, sub);
            }
            failed |= s.status == "fail";
            sections[name] = {{"status", s.status}, {"result", s.result}};
            text << "== " << name << " [" << s.status << "]\n" << s.text;
        }
        report["sections"] = sections;
    } else {
        auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& p) { return p.first == cmd; });
        if (needs_generic(cmd) && !is_generic(d.torus, d.parameter))
            throw NonGenericParameter("dataset " + d.name + " has a parameter on a wall");
        Section s = it->second(d, f);
        failed = s.status == "fail";
        report["status"] = s.status;
        report["result"] = s.result;
        text << s.text;
    }
    if (cmd == "all") report["status"] = failed ? "fail" : "pass";
    if (f.format == "json")
        out << report.dump(2) << "\n";
    else
        out << text.str();
    return failed ? exit_code::verification_failed : exit_code::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combinatorial checks for multiplicative hypertoric data", "hmt"};
    app.require_subcommand(1);
    Flags flags;
    std::string dataset;
    std::optional<std::size_t> cutoff, order;
    std::optional<std::int64_t> radius;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> names;
    for (const auto& [name, h] : handlers()) names.push_back(name);
    names.push_back("all");
    static const std::map<std::string, std::string> about{
        {"circuits", "circuits of the embedded lattice"},
        {"generic", "genericity of the parameter"},
        {"chambers", "chamber classes of the periodic arrangement"},
        {"quiver", "quotient (or cover) quiver with relations"},
        {"algebra", "hom ranks and the rewriting comparison"},
        {"oracle", "localized-ring comparison of the path algebra and its invariant corner"},
        {"completion", "completed roundtrip and moment checks"},
        {"schober", "face algebras and transition checks on the parameter window"},
        {"all", "every check above"}};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("dataset", dataset, "dataset JSON file or corpus name")->required();
        sub->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"json", "table", "dot"}));
        sub->add_option("--cutoff", cutoff, "degree cutoff");
        sub->add_option("--order", order, "series truncation order");
        sub->add_option("--radius", radius, "deck radius for cover quivers");
        sub->add_option("--seed", seed, "seed for perturbations");
        sub->add_flag("--cover", flags.cover, "quiver: emit the cover quiver instead of the quotient");
    }
    std::vector<const char*> argv{"hmt"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return exit_code::usage;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    if (flags.format == "dot" && cmd != "quiver" && cmd != "schober") {
        err << "usage error: --format dot is only available for quiver and schober\n";
        return exit_code::usage;
    }
    try {
        DatasetSpec d = load_dataset(dataset);
        if (cutoff) d.options.cutoff = *cutoff;
        if (order) d.options.order = *order;
        if (radius) d.options.radius = *radius;
        if (seed) d.options.seed = *seed;
        return emit(cmd, d, flags, out);
    } catch (const SchemaError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const NonGenericParameter& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
}

}  // namespace hmt
