#include "fluxladder/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fluxladder/bands.hpp"
#include "fluxladder/csv.hpp"
#include "fluxladder/dynamics.hpp"
#include "fluxladder/groundstate.hpp"

namespace fs = std::filesystem;

namespace fluxladder {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("value of '" + key + "' is not a number: " + value);
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("value of '" + key + "' is not an integer: " + value);
    return static_cast<int>(v);
}

// Typed parameter access with defaults.  Every key read is recorded in
// canonical form so the run manifest lists the complete resolved parameter
// set; keys never read are reported as configuration errors.
class Params {
  public:
    explicit Params(const ExperimentConfig& cfg) : kv_(cfg.values) {}

    double get_double(const std::string& key, double def) {
        const auto it = kv_.find(key);
        const double v = (it == kv_.end()) ? def : parse_double(key, it->second);
        note(key, fmt17(v));
        return v;
    }

    double require_double(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'");
        const double v = parse_double(key, it->second);
        note(key, fmt17(v));
        return v;
    }

    int get_int(const std::string& key, int def) {
        const auto it = kv_.find(key);
        const int v = (it == kv_.end()) ? def : parse_int(key, it->second);
        note(key, std::to_string(v));
        return v;
    }

    std::string get_str(const std::string& key, const std::string& def) {
        const auto it = kv_.find(key);
        const std::string v = (it == kv_.end()) ? def : it->second;
        note(key, v);
        return v;
    }

    std::vector<double> get_double_list(const std::string& key, const std::string& def) {
        const auto it = kv_.find(key);
        const std::string raw = (it == kv_.end()) ? def : it->second;
        std::vector<double> out;
        std::string canon;
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(parse_double(key, item));
            if (!canon.empty()) canon += ',';
            canon += fmt17(out.back());
        }
        if (out.empty()) throw ConfigError("value of '" + key + "' lists no numbers");
        note(key, canon);
        return out;
    }

    void check_consumed() const {
        for (const auto& [k, v] : kv_)
            if (!seen_.count(k)) throw ConfigError("unknown key '" + k + "'");
    }

    const std::map<std::string, std::string>& resolved() const { return resolved_; }

  private:
    void note(const std::string& key, const std::string& canon) {
        seen_.insert(key);
        resolved_[key] = canon;
    }

    std::map<std::string, std::string> kv_;
    std::map<std::string, std::string> resolved_;
    std::set<std::string> seen_;
};

Boundary parse_boundary(const std::string& s) {
    if (s == "open") return Boundary::Open;
    if (s == "periodic") return Boundary::Periodic;
    throw ConfigError("boundary must be 'open' or 'periodic', got '" + s + "'");
}

ChiralKind parse_kind_state(const std::string& s) {
    if (s == "1S") return ChiralKind::OneS;
    if (s == "1AS") return ChiralKind::OneAS;
    if (s == "1E") return ChiralKind::OneE;
    if (s == "2S") return ChiralKind::TwoS;
    if (s == "2AS") return ChiralKind::TwoAS;
    if (s == "2E") return ChiralKind::TwoE;
    throw ConfigError("kind_state must be one of 1S, 1AS, 1E, 2S, 2AS, 2E; got '" + s + "'");
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw ConfigError("grids need at least two points");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

std::string out_file(const fs::path& dir, const char* name) { return (dir / name).string(); }

// --- experiment runners ----------------------------------------------------

void run_bands(Params& p, const fs::path& dir) {
    const double t0 = p.get_double("t0", 1.0);
    const double phi = p.require_double("phi_pi") * kPi;
    const int k_points = p.get_int("k_points", 512);
    p.check_consumed();
    if (k_points < 2) throw ConfigError("k_points must be >= 2");

    const BlochParams bp{t0, phi};
    bp.validate();
    CsvWriter csv(out_file(dir, "bands.csv"), {"k", "E_lower", "E_upper", "sz_lower"});
    for (double k : linspace(-kPi, kPi, k_points)) {
        const BandPoint pt = band_point(bp, k);
        csv.row({fmt17(k), fmt17(pt.E_lower), fmt17(pt.E_upper), fmt17(pt.sz_lower)});
    }
    CsvWriter minima(out_file(dir, "band_minima.csv"), {"k_min"});
    for (double k : lower_band_minima(bp)) minima.row({fmt17(k)});
}

void run_gs_scan(Params& p, const fs::path& dir) {
    const int n_exc = p.get_int("n_exc", 1);
    if (n_exc != 1 && n_exc != 2) throw ConfigError("n_exc must be 1 or 2");
    const int N = p.get_int("N", 50);
    const Boundary b = parse_boundary(p.get_str("boundary", n_exc == 1 ? "periodic" : "open"));
    const double alpha = p.get_double("alpha", 1.0);
    const double g = p.get_double("g", 1.0);
    const double g_rung = p.get_double("g_rung", g);
    const double lo = p.get_double("phi_min_pi", 0.02);
    const double hi = p.get_double("phi_max_pi", 1.0);
    const int points = p.get_int("phi_points", 50);
    p.check_consumed();

    std::vector<double> grid = linspace(lo * kPi, hi * kPi, points);
    const LadderSpec spec = LadderSpec::uniform(N, b, g, g_rung);
    const auto scan = chiral_current_scan(spec, alpha, grid, n_exc);

    CsvWriter csv(out_file(dir, "gsscan.csv"), {"phi", "jc", "jc_analytic", "degeneracy"});
    for (const auto& pt : scan)
        csv.row({fmt17(pt.phi), fmt17(pt.jc), fmt17(pt.jc_analytic),
                 std::to_string(pt.degeneracy)});
}

void run_current_map(Params& p, const fs::path& dir) {
    const int N = p.get_int("N", 50);
    const double phi = p.require_double("phi_pi") * kPi;
    const int n_exc = p.get_int("n_exc", 1);
    if (n_exc != 1 && n_exc != 2) throw ConfigError("n_exc must be 1 or 2");
    const Boundary b = parse_boundary(p.get_str("boundary", "periodic"));
    const double alpha = p.get_double("alpha", 1.0);
    const double g = p.get_double("g", 1.0);
    const double g_rung = p.get_double("g_rung", g);
    const std::string state = p.get_str("state", "ground");
    p.check_consumed();

    const LadderSpec spec = LadderSpec::uniform(N, b, g, g_rung);
    FluxPattern pattern;
    pattern.kind = FluxKind::Uniform;
    pattern.phi = phi;
    const SynthesisResult syn = synthesize_flux(pattern, spec, alpha);
    const SectorBasis basis = build_basis(spec, n_exc);

    CurrentReport report;
    if (state == "kramers") {
        if (n_exc != 1 || b != Boundary::Periodic)
            throw ConfigError("state=kramers needs n_exc=1 and periodic boundaries");
        const StateVector psi = kramers_ground_combination(syn.couplings.t[0][0], phi, N);
        report = measure(psi, syn.couplings, basis);
    } else if (state == "ground") {
        const OperatorMatrix H = build_effective_hamiltonian(syn.couplings, basis);
        const GroundSpace gs = ground_states(H);
        report = measure(gs.states[0], syn.couplings, basis);
        for (std::size_t i = 1; i < gs.states.size(); ++i) {
            const CurrentReport r = measure(gs.states[i], syn.couplings, basis);
            for (std::size_t x = 0; x < report.jA.size(); ++x) {
                report.jA[x] += r.jA[x];
                report.jB[x] += r.jB[x];
            }
            for (std::size_t x = 0; x < report.jRung.size(); ++x) report.jRung[x] += r.jRung[x];
            for (std::size_t x = 0; x < report.density.size(); ++x)
                report.density[x] += r.density[x];
            report.jC += r.jC;
        }
        const double inv = 1.0 / static_cast<double>(gs.states.size());
        for (auto& v : report.jA) v *= inv;
        for (auto& v : report.jB) v *= inv;
        for (auto& v : report.jRung) v *= inv;
        for (auto& v : report.density) v *= inv;
        report.jC *= inv;
    } else {
        throw ConfigError("state must be 'ground' or 'kramers', got '" + state + "'");
    }

    CsvWriter currents(out_file(dir, "currents.csv"), {"type", "j", "current"});
    for (std::size_t bidx = 0; bidx < report.jA.size(); ++bidx)
        currents.row({"legA", std::to_string(bidx + 1), fmt17(report.jA[bidx])});
    for (std::size_t bidx = 0; bidx < report.jB.size(); ++bidx)
        currents.row({"legB", std::to_string(bidx + 1), fmt17(report.jB[bidx])});
    for (std::size_t j = 0; j < report.jRung.size(); ++j)
        currents.row({"rung", std::to_string(j + 1), fmt17(report.jRung[j])});
    currents.row({"chiral", "0", fmt17(report.jC)});

    CsvWriter dens(out_file(dir, "densities.csv"), {"leg", "j", "density"});
    for (int j = 1; j <= N; ++j)
        dens.row({"A", std::to_string(j), fmt17(report.density[site_index(Leg::A, j, N)])});
    for (int j = 1; j <= N; ++j)
        dens.row({"B", std::to_string(j), fmt17(report.density[site_index(Leg::B, j, N)])});
}

void run_dynamics(Params& p, const fs::path& dir) {
    const ChiralKind kind = parse_kind_state(p.get_str("kind_state", "1S"));
    const int N = p.get_int("N", 10);
    const Boundary b = parse_boundary(p.get_str("boundary", "open"));
    const double phi = p.get_double("phi_pi", 0.5) * kPi;
    const double g = p.get_double("g", 1.0);
    const double g_rung = p.get_double("g_rung", g);
    const int j0 = p.get_int("j0", (N + 1) / 2);
    const std::vector<double> times = p.get_double_list("t_list", "0.5,1.0");
    p.check_consumed();

    const LadderSpec spec = LadderSpec::uniform(N, b, g, g_rung);
    const ChiralResult res = chiral_experiment(kind, spec, phi, times, j0);

    CsvWriter dyn(out_file(dir, "dynamics.csv"), {"t", "leg", "j", "density"});
    for (std::size_t i = 0; i < res.times.size(); ++i)
        for (int l = 0; l < 2; ++l)
            for (int j = 1; j <= N; ++j)
                dyn.row({fmt17(res.times[i]), l == 0 ? "A" : "B", std::to_string(j),
                         fmt17(res.density[i][site_index(static_cast<Leg>(l), j, N)])});

    CsvWriter deltas(out_file(dir, "deltas.csv"), {"t", "dnA", "dnB"});
    for (std::size_t i = 0; i < res.times.size(); ++i)
        deltas.row({fmt17(res.times[i]), fmt17(res.dn[i].first), fmt17(res.dn[i].second)});
}

void run_short_time(Params& p, const fs::path& dir) {
    const ChiralKind kind = parse_kind_state(p.get_str("kind_state", "1S"));
    const int N = p.get_int("N", 10);
    const Boundary b = parse_boundary(p.get_str("boundary", "open"));
    const double phi = p.get_double("phi_pi", 0.5) * kPi;
    const double g = p.get_double("g", 1.0);
    const double g_rung = p.get_double("g_rung", g);
    const int j0 = p.get_int("j0", (N + 1) / 2);
    const double dt_min = p.get_double("dt_min", 0.01);
    const double dt_max = p.get_double("dt_max", 0.10);
    const int dt_points = p.get_int("dt_points", 10);
    p.check_consumed();

    const LadderSpec spec = LadderSpec::uniform(N, b, g, g_rung);
    const ShortTimeFit fit = short_time_law(kind, spec, phi, linspace(dt_min, dt_max, dt_points), j0);

    CsvWriter pts(out_file(dir, "shorttime.csv"), {"t", "dnA", "dnB"});
    for (std::size_t i = 0; i < fit.times.size(); ++i)
        pts.row({fmt17(fit.times[i]), fmt17(fit.dnA[i]), fmt17(fit.dnB[i])});

    CsvWriter fitcsv(out_file(dir, "fit.csv"),
                     {"c3A", "c3B", "prediction", "rel_err", "grid_ok"});
    fitcsv.row({fmt17(fit.c3A), fmt17(fit.c3B), fmt17(fit.prediction), fmt17(fit.rel_err),
                fit.grid_ok ? "1" : "0"});
    std::cout << "short-time fit: c3A = " << fmt17(fit.c3A) << ", prediction = "
              << fmt17(fit.prediction) << ", rel_err = " << fmt17(fit.rel_err) << "\n";
}

void run_rwa_check(Params& p, const fs::path& dir) {
    const double u_over_g = p.get_double("u_over_g", 20.0);
    const double g = p.get_double("g", 1.0);
    const double T = p.get_double("T", 2.0);  // in units of the inverse effective hopping
    const int samples = p.get_int("samples", 50);
    const double alpha = p.get_double("alpha", 1.0);
    p.check_consumed();
    if (samples < 1) throw ConfigError("samples must be >= 1");

    const FidelityTrace trace = rwa_check(u_over_g, g, T, samples, alpha);
    CsvWriter csv(out_file(dir, "rwa.csv"), {"t", "F"});
    for (std::size_t i = 0; i < trace.t.size(); ++i)
        csv.row({fmt17(trace.t[i]), fmt17(trace.F[i])});
    std::cout << "rwa-check: min fidelity " << fmt17(trace.min_F) << " at u/g = "
              << fmt17(u_over_g) << "\n";
}

void run_prepare(Params& p, const fs::path& dir) {
    const ChiralKind kind = parse_kind_state(p.get_str("kind_state", "1S"));
    const int N = p.get_int("N", 10);
    const Boundary b = parse_boundary(p.get_str("boundary", "open"));
    const double g = p.get_double("g", 1.0);
    const double g_rung = p.get_double("g_rung", g);
    const double T = p.get_double("T", 50.0);
    const double dt = p.get_double("dt", 0.01);
    p.check_consumed();

    const LadderSpec spec = LadderSpec::uniform(N, b, g, g_rung);
    const PrepareResult pr = prepare_superposition(kind, spec, T, dt);

    CsvWriter trace(out_file(dir, "prepare.csv"), {"stage", "s", "fidelity"});
    for (std::size_t st = 0; st < pr.stages.size(); ++st)
        for (std::size_t i = 0; i < pr.stages[st].s.size(); ++i)
            trace.row({std::to_string(st + 1), fmt17(pr.stages[st].s[i]),
                       fmt17(pr.stages[st].fidelity[i])});

    const SectorBasis basis{N, pr.psi.size() == 2 * N ? 1 : 2};
    if (basis.n_exc == 1) {
        CsvWriter st(out_file(dir, "state.csv"), {"leg", "j", "re", "im"});
        for (int l = 0; l < 2; ++l)
            for (int j = 1; j <= N; ++j) {
                const cplx v = pr.psi[site_index(static_cast<Leg>(l), j, N)];
                st.row({l == 0 ? "A" : "B", std::to_string(j), fmt17(v.real()), fmt17(v.imag())});
            }
    } else {
        CsvWriter st(out_file(dir, "state.csv"), {"site1", "site2", "re", "im"});
        for (int q = 0; q < basis.dim(); ++q) {
            const auto [s1, s2] = basis.pair_sites(q);
            st.row({std::to_string(s1), std::to_string(s2), fmt17(pr.psi[q].real()),
                    fmt17(pr.psi[q].imag())});
        }
    }
    std::cout << "prepare: target fidelity " << fmt17(pr.fidelity) << "\n";
}

void write_manifest(const ExperimentConfig& cfg, const Params& p, const fs::path& dir) {
    std::ofstream out(out_file(dir, "run-manifest.txt"));
    if (!out) throw std::runtime_error("cannot write run manifest");
    out << "# resolved run parameters; reusable as --config\n";
    out << "kind = " << cfg.kind << "\n";
    for (const auto& [k, v] : p.resolved()) out << k << " = " << v << "\n";
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (key == "kind")
            cfg.kind = val;
        else
            cfg.values[key] = val;
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

int error_exit_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 2;
    if (dynamic_cast<const std::domain_error*>(&e)) return 2;
    return 3;
}

void run_experiment(const ExperimentConfig& cfg, const std::string& outdir) {
    fs::create_directories(outdir);
    Params p(cfg);
    const fs::path dir(outdir);
    if (cfg.kind == "bands")
        run_bands(p, dir);
    else if (cfg.kind == "gs-scan")
        run_gs_scan(p, dir);
    else if (cfg.kind == "current-map")
        run_current_map(p, dir);
    else if (cfg.kind == "dynamics")
        run_dynamics(p, dir);
    else if (cfg.kind == "short-time")
        run_short_time(p, dir);
    else if (cfg.kind == "rwa-check")
        run_rwa_check(p, dir);
    else if (cfg.kind == "prepare")
        run_prepare(p, dir);
    else
        throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
    write_manifest(cfg, p, dir);
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"two-leg flux ladder simulations"};
    app.require_subcommand(0, 1);

    std::string config_path, outdir = "fluxladder-out";
    int threads = 0;
    std::vector<std::string> overrides;

    const char* kinds[] = {"bands",      "gs-scan",  "current-map", "dynamics",
                           "short-time", "rwa-check", "prepare"};
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value parameter file");
        cmd->add_option("--out", outdir, "output directory");
        cmd->add_option("--threads", threads, "worker threads (0 = library default)");
        cmd->add_option("--set", overrides, "override a single key=value");
    };
    add_common(&app);
    for (const char* k : kinds) add_common(app.add_subcommand(k, ""));

    std::vector<const char*> argv;
    argv.push_back("fluxladder");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got " + o);
            const std::string key = trim(o.substr(0, eq));
            const std::string val = trim(o.substr(eq + 1));
            if (key == "kind")
                cfg.kind = val;
            else
                cfg.values[key] = val;
        }
        const auto subs = app.get_subcommands();
        if (!subs.empty()) cfg.kind = subs[0]->get_name();
        if (cfg.kind.empty()) throw ConfigError("no experiment selected (subcommand or kind=...)");
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        run_experiment(cfg, outdir);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_exit_code(e);
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args);
}

}  // namespace fluxladder
