#include "qstep/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qstep/analysis.hpp"
#include "qstep/delay.hpp"
#include "qstep/errors.hpp"
#include "qstep/packet.hpp"
#include "qstep/phase.hpp"
#include "qstep/scatter.hpp"

namespace qstep::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// 10 significant digits; non-finite values spelled "inf".
std::string sweep_number(double v) { return std::isfinite(v) ? fmt("%.10g", v) : std::string("inf"); }

std::string param_number(double v) { return fmt("%.17g", v); }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json complex_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

struct OutputOptions {
  bool no_header = false;
  bool no_timestamp = false;
  std::string out_path;
};

struct Context {
  std::ostream& out;
  OutputOptions opts;

  RunManifest manifest(std::string command, std::vector<std::pair<std::string, std::string>> params) const {
    RunManifest m;
    m.command = std::move(command);
    m.parameters = std::move(params);
    if (!opts.no_timestamp) m.timestamp = utc_now();
    return m;
  }

  void emit_json(json body, const RunManifest& m) const {
    json doc;
    if (!opts.no_header) {
      json params = json::object();
      for (const auto& [k, v] : m.parameters) params[k] = v;
      json man{{"command", m.command}, {"parameters", params}, {"tool_version", m.tool_version}};
      if (!m.timestamp.empty()) man["timestamp"] = m.timestamp;
      doc["manifest"] = man;
    }
    for (auto& [k, v] : body.items()) doc[k] = v;
    write(doc.dump(2) + "\n");
  }

  void emit_csv(const std::string& body, const RunManifest& m, const std::string& extra_comments = {}) const {
    std::string text;
    if (!opts.no_header) text = csv_header(m) + extra_comments;
    write(text + body);
  }

  void write(const std::string& text) const {
    if (opts.out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(opts.out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + opts.out_path);
    f << text;
  }
};

void cmd_compute(const Context& ctx, double eps, double nuq, double rho, const std::string& format) {
  const auto sol = solve_matching(eps, nuq, rho);
  json body;
  body["eps"] = eps;
  body["nuq"] = nuq;
  body["rho"] = rho;
  body["regime"] = to_string(sol.regime);
  body["alpha_minus"] = complex_json(sol.alpha_minus);
  body["alpha_plus"] = complex_json(sol.alpha_plus);
  body["beta"] = complex_json(sol.beta);
  body["gamma"] = complex_json(sol.gamma);
  body["r"] = complex_json(sol.r);
  body["r_tilde"] = complex_json(sol.r_tilde);
  body["t"] = complex_json(sol.t);
  body["t_tilde"] = complex_json(sol.t_tilde);
  body["abs_r"] = std::abs(sol.r);
  if (sol.regime == EnergyRegime::Diffusion) {
    body["theta"] = nullptr;
    body["tau"] = nullptr;
    body["note"] = "no delay defined above the barrier";
  } else {
    const auto ph = phase_of_r(eps, nuq);
    body["theta"] = ph.unwrapped();
    body["minus_sign"] = ph.minus_sign;
    body["tau"] = tau_reflection(eps, nuq);
  }
  const auto m = ctx.manifest("compute", {{"eps", param_number(eps)},
                                          {"nuq", param_number(nuq)},
                                          {"rho", param_number(rho)},
                                          {"format", format}});
  if (format == "json") {
    ctx.emit_json(body, m);
    return;
  }
  std::ostringstream os;
  for (auto& [k, v] : body.items()) {
    char key[32];
    std::snprintf(key, sizeof key, "%-12s", k.c_str());
    if (v.is_object())
      os << key << " " << v["re"].get<double>() << (v["im"].get<double>() < 0 ? " - " : " + ")
         << std::abs(v["im"].get<double>()) << "i\n";
    else
      os << key << " " << v.dump() << "\n";
  }
  ctx.write(os.str());
}

void cmd_table(const Context& ctx, double vq, const std::vector<double>& v1s, const std::vector<double>& energies) {
  std::ostringstream body;
  body << "E0_keV,quaternionic";
  for (double v : v1s) body << ",V1_" << fmt("%g", v);
  body << "\n";
  auto cell = [](double e0, const PhysicalStep& step) -> std::string {
    if (!(e0 < step.v0_kev())) return "NA";
    try {
      return fmt("%.3f", physical_delay(e0, step));
    } catch (const BoundaryEnergy&) {
      return "NA";
    } catch (const DomainError&) {
      return "NA";
    }
  };
  for (double e0 : energies) {
    body << fmt("%g", e0) << "," << cell(e0, PhysicalStep::pure_quaternionic(vq));
    for (double v : v1s) body << "," << cell(e0, PhysicalStep::pure_complex(v));
    body << "\n";
  }
  auto join = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt("%g", xs[i]);
    return s;
  };
  ctx.emit_csv(body.str(), ctx.manifest("table", {{"vq_kev", fmt("%g", vq)},
                                                  {"v1_kev", join(v1s)},
                                                  {"energies_kev", join(energies)}}));
}

void cmd_sweep(const Context& ctx, const std::string& mode, double lo, double hi, int count) {
  if (count < 1) throw DomainError("sweep needs at least one grid point");
  std::ostringstream body;
  int dropped = 0;
  std::vector<std::string> extra;
  RescaleConstants scales{0.5, 1.0};
  if (mode == "fig1") {
    body << "eps,tau_c,tau_q\n";
  } else {
    scales = rescale_constants();
    body << "eps_tilde,tau_tilde_c,tau_tilde_q\n";
    extra.push_back("# complex_scale: " + param_number(scales.complex_scale));
    extra.push_back("# quaternionic_scale: " + param_number(scales.quaternionic_scale));
  }
  for (int n = 0; n < count; ++n) {
    const double x = count == 1 ? lo : lo + (hi - lo) * n / (count - 1);
    double cols[2];
    bool boundary = false;
    bool any = false;
    for (int c = 0; c < 2; ++c) {
      const CurveKind kind = mode == "fig1" ? (c == 0 ? CurveKind::Complex : CurveKind::Quaternionic)
                                            : (c == 0 ? CurveKind::RescaledComplex : CurveKind::RescaledQuaternionic);
      const double scale = c == 0 ? scales.complex_scale : scales.quaternionic_scale;
      try {
        cols[c] = delay_on_curve(kind, x, c == 0 ? 0.0 : 1.0, mode == "fig1" ? 1.0 : scale);
        any = true;
      } catch (const BoundaryEnergy&) {
        boundary = true;
      } catch (const DomainError&) {
        cols[c] = std::numeric_limits<double>::infinity();
      }
    }
    if (boundary || !any) {
      ++dropped;
      continue;
    }
    body << sweep_number(x) << "," << sweep_number(cols[0]) << "," << sweep_number(cols[1]) << "\n";
  }
  std::string comments = "# dropped_points: " + std::to_string(dropped) + "\n";
  for (const auto& line : extra) comments += line + "\n";
  ctx.emit_csv(body.str(),
               ctx.manifest("sweep", {{"mode", mode},
                                      {"min", param_number(lo)},
                                      {"max", param_number(hi)},
                                      {"count", std::to_string(count)}}),
               comments);
}

void cmd_minimize(const Context& ctx, const std::string& curve, double nuq) {
  CurveKind kind = CurveKind::GeneralNuq;
  if (curve == "complex") kind = CurveKind::Complex;
  if (curve == "quaternionic") kind = CurveKind::Quaternionic;
  const auto m = find_minimum(kind, nuq);
  json body{{"curve", curve}, {"eps_star", m.eps_star}, {"tau_star", m.tau_star}, {"product", m.product}};
  if (kind == CurveKind::GeneralNuq) body["nuq"] = nuq;
  std::vector<std::pair<std::string, std::string>> params{{"curve", curve}};
  if (kind == CurveKind::GeneralNuq) params.emplace_back("nuq", param_number(nuq));
  ctx.emit_json(body, ctx.manifest("minimize", params));
}

void cmd_mimic(const Context& ctx, double e0, double vq) {
  const auto s = mimic_potential(e0, vq);
  json body{{"e0_kev", s.e0_kev}, {"vq_kev", s.vq_kev}, {"v1_kev", s.v1_kev}, {"delay_kev", s.delay_kev},
            {"roots", s.roots}};
  ctx.emit_json(body, ctx.manifest("mimic", {{"e0_kev", param_number(e0)}, {"vq_kev", param_number(vq)}}));
}

void cmd_intersect(const Context& ctx, double lo, double hi) {
  const auto scales = rescale_constants();
  const auto roots = (lo > 0 && hi > lo) ? curve_intersections(lo, hi, scales) : curve_intersections(scales);
  json list = json::array();
  for (const auto& r : roots) list.push_back({{"eps_tilde", r.eps_tilde}, {"tau_tilde", r.tau_tilde}});
  json body{{"complex_scale", scales.complex_scale},
            {"quaternionic_scale", scales.quaternionic_scale},
            {"count", roots.size()},
            {"intersections", list}};
  std::vector<std::pair<std::string, std::string>> params;
  if (lo > 0 && hi > lo) params = {{"min", param_number(lo)}, {"max", param_number(hi)}};
  ctx.emit_json(body, ctx.manifest("intersect", params));
}

void cmd_packet(const Context& ctx, double eps0, double sigma, double nuq, double rho, int n_modes,
                const std::string& format) {
  const auto cfg = make_packet_config(eps0, sigma, nuq, rho, n_modes);
  const auto track = build_and_evolve(cfg);
  const auto fit = fit_reflected_trajectory(track);
  const double delay = extract_delay(track, eps0);
  const double analytic = tau_reflection(eps0, nuq);
  const auto m = ctx.manifest("packet", {{"eps0", param_number(eps0)},
                                         {"sigma", param_number(sigma)},
                                         {"nuq", param_number(nuq)},
                                         {"rho", param_number(rho)},
                                         {"n_modes", std::to_string(n_modes)},
                                         {"format", format}});
  if (format == "csv") {
    std::ostringstream body;
    body << "tau,xi_centroid,norm_captured,width,incident_overlap,quaternionic_fraction\n";
    for (const auto& s : track.samples)
      body << sweep_number(s.tau) << "," << sweep_number(s.xi_centroid) << "," << sweep_number(s.norm_captured)
           << "," << sweep_number(s.width) << "," << sweep_number(s.incident_overlap) << ","
           << sweep_number(s.quaternionic_fraction) << "\n";
    ctx.emit_csv(body.str(), m,
                 "# extracted_delay: " + param_number(delay) + "\n# stationary_phase_delay: " + param_number(analytic) +
                     "\n");
    return;
  }
  json samples = json::array();
  for (const auto& s : track.samples)
    samples.push_back({{"tau", s.tau},
                       {"xi_centroid", s.xi_centroid},
                       {"norm_captured", s.norm_captured},
                       {"width", s.width},
                       {"incident_overlap", s.incident_overlap},
                       {"quaternionic_fraction", s.quaternionic_fraction}});
  json body{{"eps0", eps0},
            {"sigma_eps", sigma},
            {"nuq", nuq},
            {"rho", rho},
            {"n_modes", n_modes},
            {"xi_grid", {{"min", cfg.xi.min}, {"max", cfg.xi.max}, {"count", cfg.xi.count}}},
            {"samples", samples},
            {"fit", {{"slope", fit.slope}, {"intercept", fit.intercept}, {"residual_rms", fit.residual_rms}}},
            {"delay", delay},
            {"stationary_phase_delay", analytic},
            {"relative_error", std::abs(delay - analytic) / analytic}};
  ctx.emit_json(body, m);
}

void report_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

std::string csv_header(const RunManifest& m) {
  std::string s = "# command: " + m.command + "\n# tool_version: " + m.tool_version + "\n";
  if (!m.timestamp.empty()) s += "# timestamp: " + m.timestamp + "\n";
  for (const auto& [k, v] : m.parameters) s += "# param." + k + ": " + v + "\n";
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reflection delay times for quaternionic and complex potential steps", "qstep"};
  app.require_subcommand(1);
  OutputOptions opts;
  app.add_flag("--no-header", opts.no_header, "Omit the run manifest (CSV comments / JSON manifest)");
  app.add_flag("--no-timestamp", opts.no_timestamp, "Omit the timestamp from the manifest");
  app.add_option("--out", opts.out_path, "Write the report to a file instead of standard output");

  double eps = 0, nuq = 0, rho = 0;
  std::string format = "json";
  auto* compute = app.add_subcommand("compute", "Scattering amplitudes, phase and delay at one (eps, nuq, rho)");
  compute->add_option("--eps", eps, "E / V0")->required();
  compute->add_option("--nuq", nuq, "Vq / V0")->required();
  compute->add_option("--rho", rho, "atan2(V3, V2)")->capture_default_str();
  compute->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  double vq = 20.0;
  std::vector<double> v1s{18.5, 16.5, 14.6};
  std::vector<double> energies{2, 4, 6, 8, 10, 12, 14};
  auto* table = app.add_subcommand("table", "Delay table in KeV t0 / hbar");
  table->add_option("--vq", vq, "Pure quaternionic step height [KeV]")->capture_default_str();
  table->add_option("--v1", v1s, "Complex step heights [KeV]")->delimiter(',')->capture_default_str();
  table->add_option("--energies", energies, "Incoming energies [KeV]")->delimiter(',')->capture_default_str();

  std::string mode = "fig1";
  double lo = NAN, hi = NAN;
  int count = 0;
  auto* sweep = app.add_subcommand("sweep", "Delay curves: fig1 (unscaled) or fig2 (rescaled)");
  sweep->add_option("--mode", mode)->check(CLI::IsMember({"fig1", "fig2"}))->capture_default_str();
  sweep->add_option("--min", lo, "First grid value");
  sweep->add_option("--max", hi, "Last grid value");
  sweep->add_option("--count", count, "Number of grid points");

  std::string curve = "quaternionic";
  double min_nuq = 0.5;
  auto* minimize = app.add_subcommand("minimize", "Minimum of a delay curve");
  minimize->add_option("--curve", curve)->check(CLI::IsMember({"complex", "quaternionic", "general"}))->capture_default_str();
  minimize->add_option("--nuq", min_nuq, "nuq for --curve general")->capture_default_str();

  double e0 = 2.0, mimic_vq = 20.0;
  auto* mimic = app.add_subcommand("mimic", "Complex step that reproduces a quaternionic delay at one energy");
  mimic->add_option("--e0", e0, "Incoming energy [KeV]")->required();
  mimic->add_option("--vq", mimic_vq, "Quaternionic step height [KeV]")->capture_default_str();

  double int_lo = 0, int_hi = 0;
  auto* intersect = app.add_subcommand("intersect", "Crossings of the rescaled delay curves");
  intersect->add_option("--min", int_lo, "Lower end of the eps~ range");
  intersect->add_option("--max", int_hi, "Upper end of the eps~ range");

  double eps0 = 0.5, sigma = 0.02, p_nuq = 0, p_rho = 0;
  int n_modes = 256;
  std::string p_format = "json";
  auto* packet = app.add_subcommand("packet", "Wave-packet centroid delay");
  packet->add_option("--eps0", eps0)->capture_default_str();
  packet->add_option("--sigma", sigma)->capture_default_str();
  packet->add_option("--nuq", p_nuq)->capture_default_str();
  packet->add_option("--rho", p_rho)->capture_default_str();
  packet->add_option("--n-modes", n_modes)->capture_default_str();
  packet->add_option("--format", p_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kUsage;
  }

  const Context ctx{out, opts};
  try {
    if (*compute) {
      cmd_compute(ctx, eps, nuq, rho, format);
    } else if (*table) {
      cmd_table(ctx, vq, v1s, energies);
    } else if (*sweep) {
      const bool fig1 = mode == "fig1";
      cmd_sweep(ctx, mode, std::isnan(lo) ? (fig1 ? 0.01 : 0.02) : lo, std::isnan(hi) ? (fig1 ? 0.99 : 2.7) : hi,
                count > 0 ? count : (fig1 ? 99 : 135));
    } else if (*minimize) {
      cmd_minimize(ctx, curve, min_nuq);
    } else if (*mimic) {
      cmd_mimic(ctx, e0, mimic_vq);
    } else if (*intersect) {
      cmd_intersect(ctx, int_lo, int_hi);
    } else if (*packet) {
      cmd_packet(ctx, eps0, sigma, p_nuq, p_rho, n_modes, p_format);
    }
  } catch (const Error& e) {
    report_error(err, e.code(), e.what());
    return e.numerical() ? kNumerical : kUsage;
  }
  return kOk;
}

}  // namespace qstep::cli
