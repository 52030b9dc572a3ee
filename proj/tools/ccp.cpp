#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccp/compton.hpp"
#include "ccp/errors.hpp"
#include "ccp/infotheory.hpp"
#include "ccp/pipeline.hpp"
#include "ccp/tables.hpp"

namespace
{
using nlohmann::ordered_json;
using ccp::StateSpec;

constexpr int exit_accuracy = 2;
constexpr int exit_solver = 3;
constexpr int exit_io = 4;

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Common
{
    std::vector<std::string> states{"1,0"};
    double Z = 1.0;
    std::vector<std::string> rcs{"inf"};
    double tol = 1e-9;
    int panel_order = 16;
    std::optional<double> pmax;
    std::optional<double> ceiling;
    std::string format = "json";
    std::string out;
    unsigned threads = 0;
    std::vector<int> moments{-1, 1, 2, 4};
    std::vector<double> alphas;
};

std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

ordered_json jnum(double x)
{
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

std::pair<int, int> parse_state(std::string const& s)
{
    static std::string const letters = "spdfghikl";
    auto comma = s.find(',');
    if (comma != std::string::npos)
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    if (s.size() >= 2 && std::isalpha(static_cast<unsigned char>(s.back())))
    {
        auto l = letters.find(static_cast<char>(std::tolower(s.back())));
        if (l != std::string::npos)
            return {std::stoi(s.substr(0, s.size() - 1)), static_cast<int>(l)};
    }
    throw CLI::ValidationError("--state", "expected n,l or a label like 3d: " + s);
}

std::optional<double> parse_rc(std::string const& s)
{
    if (s == "inf" || s == "infinity")
        return std::nullopt;
    return std::stod(s);
}

std::vector<StateSpec> specs_of(Common const& c)
{
    std::vector<StateSpec> out;
    for (auto const& r : c.rcs)
    {
        auto const rc = parse_rc(r);
        for (auto const& s : c.states)
        {
            auto [n, l] = parse_state(s);
            StateSpec spec = rc ? StateSpec::confined(c.Z, *rc, n, l)
                                : StateSpec::free(c.Z, n, l);
            spec.validate();
            out.push_back(spec);
        }
    }
    return out;
}

ccp::RunOptions run_options(Common const& c)
{
    ccp::RunOptions o;
    o.qspec.relative_tolerance = c.tol;
    o.qspec.panel_order = c.panel_order;
    o.pmax_override = c.pmax;
    o.solve.ceiling = c.ceiling;
    o.alphas = c.alphas;
    o.qspec.validate();
    return o;
}

void add_common(CLI::App* app, Common& c, bool states = true)
{
    if (states)
    {
        app->add_option("--state", c.states, "State as n,l or label (repeatable)");
        app->add_option("--Z", c.Z, "Nuclear charge")->check(CLI::PositiveNumber);
        app->add_option("--rc", c.rcs, "Confinement radius in bohr or inf (repeatable)");
    }
    app->add_option("--tol", c.tol, "Relative quadrature tolerance")
        ->check(CLI::Range(1e-15, 1e-4));
    app->add_option("--panel-order", c.panel_order, "Gauss-Legendre panel order")
        ->check(CLI::Range(8, 64));
    app->add_option("--pmax-override", c.pmax, "Momentum truncation p_max")
        ->check(CLI::PositiveNumber);
    app->add_option("--e-ceiling", c.ceiling, "Energy scan ceiling in hartree");
    app->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", c.out, "Output file (default: stdout or $CCP_OUTPUT_DIR)");
    app->add_option("--threads", c.threads, "Worker threads (0: all cores)");
}

void emit(std::string const& text, Common const& c, std::string const& stem)
{
    std::string path = c.out;
    if (path.empty())
    {
        if (char const* dir = std::getenv("CCP_OUTPUT_DIR"); dir && *dir)
            path = (std::filesystem::path(dir) / (stem + "." + c.format)).string();
    }
    if (path.empty())
    {
        std::cout << text;
        std::cout.flush();
        if (!std::cout)
            throw IoError("cannot write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path);
    f << text;
    if (!f)
        throw IoError("cannot write " + path);
}

int exit_for(std::vector<ccp::Outcome> const& outcomes)
{
    int code = 0;
    for (auto const& o : outcomes)
    {
        if (o.failure == ccp::FailureKind::accuracy)
            code = std::max(code, exit_accuracy);
        else if (o.failure != ccp::FailureKind::none)
            code = std::max(code, exit_solver);
    }
    return code;
}

void report_failures(std::vector<ccp::Outcome> const& outcomes)
{
    for (auto const& o : outcomes)
        if (!o.ok())
            std::cerr << "error: " << o.spec.label() << ": " << o.message << "\n";
}

ordered_json spec_json(StateSpec const& s)
{
    ordered_json j;
    j["label"] = s.label();
    j["Z"] = s.Z;
    j["rc"] = s.rc ? ordered_json(*s.rc) : ordered_json("inf");
    j["n"] = s.n;
    j["l"] = s.l;
    return j;
}

ordered_json tolerance_json(ccp::RunOptions const& o)
{
    ordered_json t;
    t["quadrature_relative"] = o.qspec.relative_tolerance;
    t["quadrature_absolute"] = o.qspec.absolute_floor;
    t["panel_order"] = o.qspec.panel_order;
    t["energy_hartree"] = o.solve.tolerance;
    return t;
}

std::string solve_output(std::vector<ccp::Outcome> const& outs, Common const& c,
                         ccp::RunOptions const& opts)
{
    if (c.format == "json")
    {
        ordered_json doc;
        doc["schema"] = 1;
        doc["command"] = "solve";
        doc["tolerance"] = tolerance_json(opts);
        doc["records"] = ordered_json::array();
        for (auto const& o : outs)
        {
            ordered_json r;
            r["spec"] = spec_json(o.spec);
            if (!o.ok())
            {
                r["status"] = "error";
                r["error"] = o.message;
                doc["records"].push_back(r);
                continue;
            }
            auto const& s = *o.result;
            r["status"] = "ok";
            r["tolerance"] = tolerance_json(opts);
            r["energy_hartree"] = s.energy;
            r["node_count"] = s.diag.node_count;
            r["J0"] = s.J0;
            ordered_json m = ordered_json::object();
            for (int k : c.moments)
                if (s.moments.count(k))
                    m[std::to_string(k)] = s.moments.at(k);
            r["moments"] = m;
            ordered_json me = ordered_json::object();
            for (int k : c.moments)
                if (s.emd_moments.count(k))
                    me[std::to_string(k)] = s.emd_moments.at(k);
            r["moments_emd_route"] = me;
            r["p2_virial"] = s.p2_virial;
            r["p4_momentum_to_pmax"] = s.p4_momentum_cutoff;
            r["shannon"] = s.shannon;
            r["onicescu"] = s.onicescu;
            ordered_json a = ordered_json::array();
            for (auto [alpha, w] : s.entropic_moments)
                a.push_back({{"alpha", alpha}, {"value", w}});
            r["entropic_moments"] = a;
            ordered_json d;
            d["radial_norm_residual"] = s.diag.radial_norm_residual;
            d["raw_norm"] = s.diag.raw_norm;
            d["half_norm_residual"] = s.diag.half_norm_residual;
            d["p_max"] = s.diag.p_max;
            d["tail_exponent"] = s.diag.tail_exponent;
            d["tail_mass"] = s.diag.tail_mass;
            d["clamp_count"] = s.diag.clamp_count;
            d["shannon_tail_bound"] = s.diag.shannon_tail_bound;
            d["p4_tail_slope"] = s.diag.p4_tail_slope;
            r["diagnostics"] = d;
            doc["records"].push_back(r);
        }
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "state,Z,rc_bohr,n,l,status,energy_hartree,nodes,J0_au";
    for (int k : c.moments)
        os << ",p" << k << "_au";
    os << ",shannon,onicescu";
    for (double a : c.alphas)
        os << ",omega_" << num(a);
    os << ",raw_norm,half_norm_residual,p_max_au,tail_exponent,clamp_count,rel_tol\n";
    for (auto const& o : outs)
    {
        auto const& sp = o.spec;
        os << sp.label() << "," << num(sp.Z) << "," << (sp.rc ? num(*sp.rc) : "inf")
           << "," << sp.n << "," << sp.l;
        if (!o.ok())
        {
            os << ",error\n";
            continue;
        }
        auto const& s = *o.result;
        os << ",ok," << num(s.energy) << "," << s.diag.node_count << "," << num(s.J0);
        for (int k : c.moments)
            os << "," << (s.moments.count(k) ? num(s.moments.at(k)) : "");
        os << "," << num(s.shannon) << "," << num(s.onicescu);
        for (auto [alpha, w] : s.entropic_moments)
            os << "," << num(w);
        os << "," << num(s.diag.raw_norm) << "," << num(s.diag.half_norm_residual)
           << "," << num(s.diag.p_max) << "," << num(s.diag.tail_exponent) << ","
           << s.diag.clamp_count << "," << num(opts.qspec.relative_tolerance) << "\n";
    }
    return os.str();
}

struct ProfileOpts
{
    double qmax = 0.0;
    int points = 0;
};

std::vector<std::pair<double, double>> profile_samples(ccp::ComptonProfile const& cp,
                                                       ProfileOpts const& p)
{
    std::vector<std::pair<double, double>> out;
    double const top = p.qmax > 0.0 ? p.qmax : cp.q_max();
    if (p.points > 1)
    {
        for (int i = 0; i < p.points; ++i)
        {
            double const q = top * i / (p.points - 1);
            out.emplace_back(q, cp.at(q));
        }
        return out;
    }
    for (std::size_t i = 0; i < cp.grid().size(); ++i)
        if (cp.grid()[i] <= top)
            out.emplace_back(cp.grid()[i], cp.values()[i]);
    return out;
}

double entropy_density(double J)
{
    return J > 0.0 ? -J * std::log(J) : 0.0;
}

std::string profile_output(std::vector<ccp::Outcome> const& outs, Common const& c,
                           ccp::RunOptions const& opts, ProfileOpts const& p)
{
    if (c.format == "json")
    {
        ordered_json doc;
        doc["schema"] = 1;
        doc["command"] = "profile";
        doc["tolerance"] = tolerance_json(opts);
        doc["profiles"] = ordered_json::array();
        for (auto const& o : outs)
        {
            ordered_json r;
            r["spec"] = spec_json(o.spec);
            if (!o.ok())
            {
                r["status"] = "error";
                r["error"] = o.message;
                doc["profiles"].push_back(r);
                continue;
            }
            r["status"] = "ok";
            r["q_max"] = o.result->profile->q_max();
            ordered_json q = ordered_json::array(), J = ordered_json::array(),
                         h = ordered_json::array();
            for (auto [qq, jj] : profile_samples(*o.result->profile, p))
            {
                q.push_back(qq);
                J.push_back(jj);
                h.push_back(entropy_density(jj));
            }
            r["q_au"] = q;
            r["J_au"] = J;
            r["entropy_density"] = h;
            doc["profiles"].push_back(r);
        }
        return doc.dump(1) + "\n";
    }
    std::ostringstream os;
    os << "state,Z,rc_bohr,q_au,J_au,entropy_density\n";
    for (auto const& o : outs)
    {
        if (!o.ok())
            continue;
        auto const& sp = o.spec;
        std::string const head = sp.label() + "," + num(sp.Z) + ","
                                 + (sp.rc ? num(*sp.rc) : std::string("inf"));
        for (auto [q, J] : profile_samples(*o.result->profile, p))
            os << head << "," << num(q) << "," << num(J) << "," << num(entropy_density(J))
               << "\n";
    }
    return os.str();
}

std::string reproduce_output(std::vector<ccp::CellReport> const& cells,
                             Common const& c, ccp::RunOptions const& opts)
{
    if (c.format == "json")
    {
        ordered_json doc;
        doc["schema"] = 1;
        doc["command"] = "reproduce";
        doc["tolerance"] = tolerance_json(opts);
        doc["cells"] = ordered_json::array();
        for (auto const& r : cells)
        {
            ordered_json j;
            j["table"] = r.table;
            j["cell"] = r.label;
            j["computed"] = jnum(r.computed);
            j["printed"] = r.printed;
            j["reference"] = r.reference;
            j["reference_kind"] = r.reference_kind;
            j["deviation"] = jnum(r.deviation);
            j["deviation_kind"] = r.relative ? "relative" : "absolute";
            j["acceptance_tolerance"] = r.tolerance;
            j["pass"] = r.pass;
            if (!r.flag.empty())
                j["flag"] = r.flag;
            if (!r.note.empty())
                j["note"] = r.note;
            doc["cells"].push_back(j);
        }
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "table,cell,computed,printed,reference,reference_kind,deviation,deviation_kind,"
          "tolerance,status,flag,note\n";
    for (auto const& r : cells)
    {
        std::string note = r.note;
        for (auto& ch : note)
            if (ch == ',' || ch == '\n')
                ch = ';';
        os << r.table << "," << r.label << "," << num(r.computed) << "," << num(r.printed)
           << "," << num(r.reference) << "," << r.reference_kind << "," << num(r.deviation)
           << "," << (r.relative ? "relative" : "absolute") << "," << num(r.tolerance)
           << "," << (r.pass ? "pass" : "FAIL") << "," << r.flag << "," << note << "\n";
    }
    return os.str();
}

double scan_value(ccp::StateResult const& r, std::string const& quantity)
{
    if (quantity == "J0")
        return r.J0;
    if (quantity == "shannon")
        return r.shannon;
    return r.onicescu;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Confined hydrogen Compton profiles and information measures"};
    app.require_subcommand(1);

    Common solve_c, profile_c, repro_c, scan_c;
    repro_c.format = "csv";
    scan_c.format = "csv";

    auto* solve = app.add_subcommand("solve", "Solve states and report moments and entropies");
    add_common(solve, solve_c);
    solve->add_option("--moments", solve_c.moments, "Moments m in [-1, 4] to emit")
        ->check(CLI::Range(-1, 4));
    solve->add_option("--alpha", solve_c.alphas, "Entropic-moment orders (> 1/6)");

    ProfileOpts popts;
    auto* profile = app.add_subcommand("profile", "Export J(q) and -J ln J");
    add_common(profile, profile_c);
    profile->add_option("--qmax", popts.qmax, "Largest q to export")
        ->check(CLI::PositiveNumber);
    profile->add_option("--points", popts.points, "Uniform samples instead of the native grid")
        ->check(CLI::Range(2, 1000000));

    std::vector<int> tables{1, 2, 3};
    std::string tables_path = ccp::default_tables_path();
    auto* repro = app.add_subcommand("reproduce", "Compare computed tables with the printed ones");
    add_common(repro, repro_c, false);
    repro->add_option("--table", tables, "Table number(s)")->check(CLI::Range(1, 3));
    repro->add_option("--tables-file", tables_path, "Printed table data")
        ->check(CLI::ExistingFile);

    int l_max = 2;
    int n_max = 5;
    std::string quantity = "J0";
    auto* scan = app.add_subcommand("scan", "Quantity versus n for each l and rc");
    add_common(scan, scan_c, false);
    scan->add_option("--Z", scan_c.Z, "Nuclear charge")->check(CLI::PositiveNumber);
    scan->add_option("--rc", scan_c.rcs, "Confinement radii (bohr or inf)");
    scan->add_option("--l-max", l_max, "Largest l")->check(CLI::Range(0, 5));
    scan->add_option("--n-max", n_max, "Largest n")->check(CLI::Range(1, 9));
    scan->add_option("--quantity", quantity, "J0, shannon or onicescu")
        ->check(CLI::IsMember({"J0", "shannon", "onicescu"}));

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*solve)
        {
            auto const opts = run_options(solve_c);
            ccp::StateCache cache(opts);
            auto const outs = ccp::run_states(specs_of(solve_c), cache, solve_c.threads);
            emit(solve_output(outs, solve_c, opts), solve_c, "solve");
            report_failures(outs);
            return exit_for(outs);
        }
        if (*profile)
        {
            auto const opts = run_options(profile_c);
            ccp::StateCache cache(opts);
            auto const outs = ccp::run_states(specs_of(profile_c), cache, profile_c.threads);
            emit(profile_output(outs, profile_c, opts, popts), profile_c, "profile");
            report_failures(outs);
            return exit_for(outs);
        }
        if (*repro)
        {
            auto const opts = run_options(repro_c);
            ccp::StateCache cache(opts);
            std::vector<ccp::CellReport> cells;
            for (int t : tables)
            {
                auto part = ccp::reproduce_table(t, cache, tables_path, repro_c.threads);
                cells.insert(cells.end(), part.begin(), part.end());
            }
            emit(reproduce_output(cells, repro_c, opts), repro_c, "reproduce");
            int failed = 0;
            for (auto const& c : cells)
                if (!c.pass)
                {
                    ++failed;
                    std::cerr << "FAIL " << c.label << ": computed " << num(c.computed)
                              << " vs " << num(c.reference) << " (" << c.reference_kind
                              << ")" << (c.note.empty() ? "" : "; " + c.note) << "\n";
                }
            std::cerr << failed << " of " << cells.size() << " cells outside tolerance\n";
            return failed ? exit_accuracy : 0;
        }
        if (*scan)
        {
            auto const opts = run_options(scan_c);
            ccp::StateCache cache(opts);
            std::vector<StateSpec> specs;
            for (auto const& r : scan_c.rcs)
            {
                auto const rc = parse_rc(r);
                for (int l = 0; l <= l_max; ++l)
                    for (int n = l + 1; n <= n_max; ++n)
                        specs.push_back(rc ? StateSpec::confined(scan_c.Z, *rc, n, l)
                                           : StateSpec::free(scan_c.Z, n, l));
            }
            auto const outs = ccp::run_states(specs, cache, scan_c.threads);
            std::string text;
            if (scan_c.format == "json")
            {
                ordered_json doc;
                doc["schema"] = 1;
                doc["command"] = "scan";
                doc["quantity"] = quantity;
                doc["tolerance"] = tolerance_json(opts);
                doc["points"] = ordered_json::array();
                for (auto const& o : outs)
                {
                    ordered_json p;
                    p["rc"] = o.spec.rc ? ordered_json(*o.spec.rc) : ordered_json("inf");
                    p["l"] = o.spec.l;
                    p["n"] = o.spec.n;
                    if (o.ok())
                        p["value"] = scan_value(*o.result, quantity);
                    else
                        p["error"] = o.message;
                    doc["points"].push_back(p);
                }
                text = doc.dump(2) + "\n";
            }
            else
            {
                std::ostringstream os;
                os << "rc_bohr,l,n," << quantity << (quantity == "J0" ? "_au" : "")
                   << ",status\n";
                for (auto const& o : outs)
                    os << (o.spec.rc ? num(*o.spec.rc) : "inf") << "," << o.spec.l << ","
                       << o.spec.n << ","
                       << (o.ok() ? num(scan_value(*o.result, quantity)) : "") << ","
                       << (o.ok() ? "ok" : "error") << "\n";
                text = os.str();
            }
            emit(text, scan_c, "scan");
            report_failures(outs);
            return exit_for(outs);
        }
    }
    catch (IoError const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (std::ios_base::failure const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return ccp::classify_failure(e) == ccp::FailureKind::accuracy ? exit_accuracy
                                                                      : exit_solver;
    }
    return 0;
}
