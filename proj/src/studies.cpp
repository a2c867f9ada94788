#include "sagnac/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "sagnac/error.hpp"
#include "sagnac/phase.hpp"
#include "sagnac/pipeline.hpp"
#include "sagnac/pulse.hpp"
#include "sagnac/raman.hpp"
#include "sagnac/switch.hpp"
#include "sagnac/units.hpp"

#ifndef SAGNAC_VERSION
#define SAGNAC_VERSION "0.0.0"
#endif

namespace sagnac {
namespace {

using nlohmann::ordered_json;

// Runs body(i) for i in [0, n) on up to `jobs` threads; first exception wins.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> uniform_axis(double lo, double hi, double dt) {
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dt - 1e-9)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = lo + dt * static_cast<double>(i);
  return t;
}

std::vector<StudyMode> expand(StudyMode mode) {
  if (mode == StudyMode::both) return {StudyMode::analytic, StudyMode::numeric};
  return {mode};
}

const char* mode_name(StudyMode m) { return m == StudyMode::analytic ? "analytic" : "numeric"; }

SwitchResponse response_for(const ScenarioFile& file, StudyMode mode, std::span<const double> t,
                            PumpDiagnostics* diag) {
  const auto& sc = file.scenario;
  const double energy = sc.pump.energy();
  const auto pair = mode == StudyMode::analytic ? analytic_phases(sc, energy, t)
                                                : numeric_phases(sc, energy, file.solver, t, diag);
  return response_from_phases(pair, sc.loss_signal);
}

ordered_json diagnostics_json(const PumpDiagnostics& d) {
  ordered_json j;
  j["steps"] = d.step_count;
  j["edge_power_fraction"] = d.edge_power_fraction;
  j["spectral_edge_fraction"] = d.spectral_edge_fraction;
  return j;
}

ordered_json window_summary(const SwitchScenario& sc) {
  const auto m = window_metrics(sc.fiber, sc.pump, signal_xpm(sc));
  ordered_json j;
  j["pump_energy_pj"] = sc.pump.energy();
  j["e_star_pj"] = m.e_star ? ordered_json(*m.e_star) : ordered_json(nullptr);
  j["t_center_ps"] = m.t_center;
  j["tau_w_ps"] = m.tau_w;
  j["walk_through_ok"] = m.walk_through_ok;
  return j;
}

ordered_json fwhm_json(std::span<const double> t, std::span<const double> y) {
  ordered_json j;
  try {
    const auto w = measure_fwhm(t, y);
    j["fwhm_ps"] = w.width;
    j["left_ps"] = w.left;
    j["right_ps"] = w.right;
    j["multimodal"] = w.multimodal;
  } catch (const ValidationError&) {
    j["fwhm_ps"] = nullptr;
  }
  return j;
}

StudyResult energy_sweep_study(const ScenarioFile& file, unsigned jobs) {
  const auto& sc = file.scenario;
  const auto mode = file.study.mode == StudyMode::numeric ? SweepMode::numeric : SweepMode::analytic;
  const auto points = energy_sweep(sc, file.study.energies_pj, mode, file.solver, jobs);

  StudyResult r;
  Table t{"energy_sweep.csv", {"E_pJ", "T_peak", "R_peak", "theta_plateau_rad"}, {}};
  double t_max = 0.0;
  for (const auto& p : points) {
    t.rows.push_back({p.energy_pj, p.t_peak, p.r_peak, p.theta_plateau});
    t_max = std::max(t_max, p.t_peak);
  }
  std::size_t first_max = 0;
  while (first_max + 1 < points.size() && points[first_max].t_peak < t_max - 1e-9) ++first_max;
  r.tables.push_back(std::move(t));
  r.summary["mode"] = mode_name(file.study.mode);
  r.summary["e_star_pj"] = sc.fiber.beta_plus != 0.0
                               ? ordered_json(total_switch_energy(sc.fiber, signal_xpm(sc)))
                               : ordered_json(nullptr);
  r.summary["first_max_energy_pj"] = points.empty() ? 0.0 : points[first_max].energy_pj;
  return r;
}

StudyResult window_trace_study(const ScenarioFile& file, unsigned jobs) {
  const auto& sc = file.scenario;
  const auto times = window_time_axis(sc.fiber, file.study.dt_ps, file.study.margin_ps);
  const auto modes = expand(file.study.mode);
  std::vector<SwitchResponse> responses(modes.size());
  PumpDiagnostics diag;
  parallel_for(modes.size(), jobs,
               [&](std::size_t i) { responses[i] = response_for(file, modes[i], times, &diag); });

  StudyResult r;
  Table t{"window_trace.csv", {"t_ps"}, {}};
  for (auto m : modes) {
    const std::string s = mode_name(m);
    for (const char* c : {"T_", "R_", "theta_", "phi_common_"}) {
      t.columns.push_back(c + s + (c[0] == 'T' || c[0] == 'R' ? "" : "_rad"));
    }
  }
  t.columns.push_back("masked");
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    bool masked = false;
    for (const auto& resp : responses) {
      row.insert(row.end(), {resp.transmission[k], resp.reflection[k], resp.theta[k], resp.phi_common[k]});
      masked = masked || resp.masked[k];
    }
    row.push_back(masked ? 1.0 : 0.0);
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.summary = window_summary(sc);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    r.summary[std::string("window_") + mode_name(modes[i])] =
        fwhm_json(responses[i].t, responses[i].transmission);
  }
  if (file.study.mode != StudyMode::analytic) r.summary["pump_solver"] = diagnostics_json(diag);
  return r;
}

StudyResult delay_scan_study(const ScenarioFile& file, unsigned jobs) {
  const auto& sc = file.scenario;
  const auto& st = file.study;
  const double fwhm = *sc.signal_fwhm_ps;
  const double tc = sc.fiber.length * sc.fiber.beta_minus / 2.0;
  const auto base = window_time_axis(sc.fiber, st.dt_ps, st.margin_ps);
  const auto [dmin, dmax] = std::minmax_element(st.delays_ps.begin(), st.delays_ps.end());
  const double reach = 4.0 * fwhm + 2.0 * st.dt_ps;
  const double lo = std::min(base.front(), tc + *dmin - reach);
  const double hi = std::max(base.back(), tc + *dmax + reach);
  const auto times = uniform_axis(lo, hi, st.dt_ps);

  const auto modes = expand(st.mode);
  std::vector<DelayScan> scans(modes.size());
  PumpDiagnostics diag;
  std::vector<double> absolute(st.delays_ps.size());
  for (std::size_t i = 0; i < absolute.size(); ++i) absolute[i] = tc + st.delays_ps[i];
  parallel_for(modes.size(), jobs, [&](std::size_t i) {
    scans[i] = delay_scan(response_for(file, modes[i], times, &diag), fwhm, absolute);
  });

  StudyResult r;
  Table t{"delay_scan.csv", {"delay_ps"}, {}};
  for (auto m : modes) t.columns.push_back(std::string("p_") + mode_name(m));
  t.columns.push_back("masked");
  for (std::size_t k = 0; k < absolute.size(); ++k) {
    std::vector<double> row{st.delays_ps[k]};
    bool masked = false;
    for (const auto& s : scans) {
      row.push_back(s.switch_probability[k]);
      masked = masked || s.masked[k];
    }
    row.push_back(masked ? 1.0 : 0.0);
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.summary = window_summary(sc);
  r.summary["signal_fwhm_ps"] = fwhm;
  r.summary["delay_origin_ps"] = tc;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    r.summary[std::string("scan_") + mode_name(modes[i])] =
        fwhm_json(st.delays_ps, scans[i].switch_probability);
  }
  if (st.mode != StudyMode::analytic) r.summary["pump_solver"] = diagnostics_json(diag);
  return r;
}

StudyResult pump_broadening_study(const ScenarioFile& file, unsigned jobs) {
  const auto& sc = file.scenario;
  const auto& lengths = file.study.lengths_m;
  const auto grid = make_grid(sc.grid.n_samples, sc.grid.t_span_ps);
  const auto input = build_pump(sc.pump, grid);
  std::vector<PropagationRecord> records(lengths.size());
  parallel_for(lengths.size(), jobs, [&](std::size_t i) {
    FiberParams f = sc.fiber;
    f.length = lengths[i];
    SolverSettings s = file.solver;
    s.store_snapshots = false;
    records[i] = propagate_pump(input, f, s);
  });

  StudyResult r;
  Table profile{"pump_broadening.csv", {"t_ps", "P_in_W"}, {}};
  for (double l : lengths) profile.columns.push_back("P_" + format_number(l) + "m_W");
  const auto p_in = input.total_power();
  std::vector<std::vector<double>> p_out;
  for (const auto& rec : records) p_out.push_back(rec.final_envelope.total_power());
  const auto t = grid->t();
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::vector<double> row{t[k], p_in[k]};
    for (const auto& p : p_out) row.push_back(p[k]);
    profile.rows.push_back(std::move(row));
  }

  Table summary{"pump_broadening_summary.csv",
                {"length_m", "fwhm_ps", "multimodal", "peak_power_W", "rms_width_ps", "energy_pJ", "steps"},
                {}};
  auto rms = [&](const std::vector<double>& p) {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      m0 += p[k];
      m1 += p[k] * t[k];
      m2 += p[k] * t[k] * t[k];
    }
    const double mean = m1 / m0;
    return std::sqrt(std::max(0.0, m2 / m0 - mean * mean));
  };
  const auto w_in = measure_fwhm(t, p_in);
  summary.rows.push_back({0.0, w_in.width, w_in.multimodal ? 1.0 : 0.0,
                          *std::max_element(p_in.begin(), p_in.end()), rms(p_in),
                          measure_energy(input), 0.0});
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const auto w = measure_fwhm(t, p_out[i]);
    summary.rows.push_back({lengths[i], w.width, w.multimodal ? 1.0 : 0.0,
                            *std::max_element(p_out[i].begin(), p_out[i].end()), rms(p_out[i]),
                            records[i].energies.back(), static_cast<double>(records[i].step_count)});
  }
  r.tables.push_back(std::move(summary));
  r.tables.push_back(std::move(profile));
  r.summary["pump_energy_pj"] = sc.pump.energy();
  r.summary["beta2_ps2_per_m"] = sc.fiber.beta2_pump;
  double edge = 0.0;
  double spectral = 0.0;
  for (const auto& rec : records) {
    edge = std::max(edge, rec.edge_power_fraction);
    spectral = std::max(spectral, rec.spectral_edge_fraction);
  }
  r.summary["edge_power_fraction"] = edge;
  r.summary["spectral_edge_fraction"] = spectral;
  return r;
}

StudyResult noise_curve_study(const ScenarioFile& file) {
  const auto& sc = file.scenario;
  const auto& st = file.study;
  StudyResult r;
  Table t{"noise_curve.csv",
          {"signal_nm", "detuning_THz", "n_th", "g_a", "g_b", "B_tau_w", "N_R", "fidelity"},
          {}};
  for (double nm : st.signal_wavelengths_nm) {
    const double omega = units::detuning(nm, sc.pump.wavelength_nm);
    const auto spec = raman_spectrum(sc.fiber, std::abs(omega));
    const double nth = thermal_occupancy(omega, sc.temperature_k);
    const double per_bt = raman_photons_per_bt(sc.fiber, nm, sc.pump.wavelength_nm, sc.temperature_k);
    for (double bt : st.bt_products) {
      const double n = per_bt * bt;
      t.rows.push_back({nm, omega / (2.0 * units::pi), nth, spec.g_a, spec.g_b, bt, n,
                        entanglement_fidelity(n)});
    }
  }
  r.tables.push_back(std::move(t));
  const auto m = window_metrics(sc.fiber, sc.pump, signal_xpm(sc));
  if (m.walk_through_ok) {
    const auto rep = raman_photon_number(sc);
    r.summary["signal_nm"] = sc.signal_wavelength_nm;
    r.summary["bandwidth_ghz"] = sc.bandwidth_ghz;
    r.summary["tau_w_ps"] = rep.window.tau_w;
    r.summary["n_th"] = rep.n_th;
    r.summary["N_R"] = rep.n_r;
    r.summary["fidelity"] = rep.fidelity;
  } else {
    r.summary["N_R"] = nullptr;
  }
  return r;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

}  // namespace

StudyResult run_study(const ScenarioFile& file, unsigned jobs) {
  switch (file.study.kind) {
    case StudyKind::energy_sweep: return energy_sweep_study(file, jobs);
    case StudyKind::window_trace: return window_trace_study(file, jobs);
    case StudyKind::delay_scan: return delay_scan_study(file, jobs);
    case StudyKind::pump_broadening: return pump_broadening_study(file, jobs);
    case StudyKind::noise_curve: return noise_curve_study(file);
  }
  throw ValidationError("unknown study kind");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string tool_version() { return SAGNAC_VERSION; }

void write_results(const std::filesystem::path& out_dir, const ScenarioFile& file,
                   const StudyResult& result, double wall_time_s, bool json_mirror) {
  std::filesystem::create_directories(out_dir);
  ordered_json meta;
  meta["scenario"] = file.name;
  meta["scenario_hash"] = "fnv1a64:" + hex64(file.hash);
  meta["tool"] = "sagnac-sim";
  meta["tool_version"] = tool_version();
  meta["study"] = study_name(file.study.kind);
  meta["figure"] = study_figure(file.study.kind);
  meta["pump_energy_from_switching_condition"] = file.energy_from_switching_condition;
  ordered_json files = ordered_json::array();
  for (const auto& t : result.tables) {
    write_file(out_dir / t.file, to_csv(t));
    files.push_back(t.file);
  }
  meta["tables"] = files;
  meta["summary"] = result.summary;
  meta["wall_time_s"] = wall_time_s;
  write_file(out_dir / "metadata.json", meta.dump(2) + "\n");

  if (json_mirror) {
    ordered_json mirror;
    for (const auto& t : result.tables) {
      ordered_json tab;
      tab["columns"] = t.columns;
      ordered_json rows = ordered_json::array();
      for (const auto& row : t.rows) {
        ordered_json jr = ordered_json::array();
        for (double v : row) jr.push_back(std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr));
        rows.push_back(std::move(jr));
      }
      tab["rows"] = std::move(rows);
      mirror[t.file] = std::move(tab);
    }
    write_file(out_dir / "results.json", mirror.dump() + "\n");
  }
}

}  // namespace sagnac
