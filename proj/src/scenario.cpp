#include "sagnac/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sagnac/error.hpp"
#include "sagnac/phase.hpp"
#include "sagnac/pipeline.hpp"

namespace sagnac {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Tracks which keys of one JSON object were consumed so leftovers can be
// reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  std::optional<double> opt_number(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(join(path_, key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) fail(join(path_, key), "must be finite");
    return d;
  }

  double number(const std::string& key) {
    auto v = opt_number(key);
    if (!v) fail(join(path_, key), "required key missing");
    return *v;
  }

  double number_or(const std::string& key, double fallback) {
    return opt_number(key).value_or(fallback);
  }

  std::optional<std::string> opt_string(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(join(path_, key), "expected a string");
    return v->get<std::string>();
  }

  std::optional<std::size_t> opt_count(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned()) fail(join(path_, key), "expected a non-negative integer");
    return v->get<std::size_t>();
  }

  std::optional<std::vector<double>> opt_numbers(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_array()) fail(join(path_, key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      if (!e.is_number()) fail(join(path_, key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::optional<Section> child(const std::string& key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    return Section(*v, join(path_, key));
  }

  /// Either an explicit list under `list_key` or {start, stop, count}
  /// (inclusive, evenly spaced) under `range_key`.
  std::optional<std::vector<double>> list_or_range(const std::string& list_key,
                                                   const std::string& range_key) {
    auto list = opt_numbers(list_key);
    auto range = child(range_key);
    if (list && range) {
      fail(join(path_, range_key), "give either " + list_key + " or " + range_key + ", not both");
    }
    if (list) return list;
    if (!range) return std::nullopt;
    const double start = range->number("start");
    const double stop = range->number("stop");
    const auto count = range->opt_count("count");
    range->finish();
    if (!count || *count < 1) fail(join(path_, range_key) + ".count", "required, >= 1");
    std::vector<double> out(*count);
    for (std::size_t i = 0; i < *count; ++i) {
      out[i] = *count == 1 ? start
                           : start + (stop - start) * static_cast<double>(i) /
                                         static_cast<double>(*count - 1);
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) fail(join(path_, it.key()), "unknown key");
    }
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
  }

 private:
  const json* take(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

StudyKind parse_kind(const std::string& s) {
  for (auto k : all_studies) {
    if (study_name(k) == s) return k;
  }
  Section::fail("study.kind", "unknown study '" + s +
                                  "' (energy_sweep, window_trace, delay_scan, pump_broadening, "
                                  "noise_curve)");
}

StudyMode parse_mode(const std::string& s) {
  if (s == "analytic") return StudyMode::analytic;
  if (s == "numeric") return StudyMode::numeric;
  if (s == "both") return StudyMode::both;
  Section::fail("study.mode", "expected analytic, numeric or both");
}

void read_fiber(Section& s, FiberParams& f, double pump_nm) {
  f.length = s.number("length_m");
  f.alpha = s.number_or("alpha_per_m", 0.0);
  f.beta_plus = s.number_or("beta_plus_ps_per_m", f.beta_plus);
  f.beta_minus = s.number_or("beta_minus_ps_per_m", f.beta_minus);
  f.beta2_pump = s.number_or("beta2_ps2_per_m", f.beta2_pump);
  f.mode_field_diameter_um = s.number_or("mode_field_diameter_um", f.mode_field_diameter_um);
  const double n2 = s.number_or("n2_m2_per_w", silica_n2);
  const auto gamma = s.opt_number("gamma_per_w_per_m");
  if (!(f.mode_field_diameter_um > 0)) Section::fail("fiber.mode_field_diameter_um", "must be > 0");
  f.gamma = gamma ? *gamma : gamma_from_mode_field(n2, pump_nm, f.mode_field_diameter_um);
  f.f_raman = s.number_or("raman_fraction", f.f_raman);
  if (auto m = s.child("raman_model")) {
    auto& r = f.raman_model;
    r.tau1_fs = m->number_or("tau1_fs", r.tau1_fs);
    r.tau2_fs = m->number_or("tau2_fs", r.tau2_fs);
    r.tau_b_fs = m->number_or("tau_b_fs", r.tau_b_fs);
    r.f_a = m->number_or("f_a", r.f_a);
    r.f_b = m->number_or("f_b", r.f_b);
    m->finish();
  }
  s.finish();
}

}  // namespace

std::string_view study_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::energy_sweep: return "energy_sweep";
    case StudyKind::window_trace: return "window_trace";
    case StudyKind::delay_scan: return "delay_scan";
    case StudyKind::pump_broadening: return "pump_broadening";
    case StudyKind::noise_curve: return "noise_curve";
  }
  return "";
}

std::string_view study_figure(StudyKind kind) {
  switch (kind) {
    case StudyKind::energy_sweep: return "2";
    case StudyKind::window_trace: return "4a";
    case StudyKind::delay_scan: return "4b";
    case StudyKind::pump_broadening: return "5";
    case StudyKind::noise_curve: return "3";
  }
  return "";
}

std::string_view study_summary(StudyKind kind) {
  switch (kind) {
    case StudyKind::energy_sweep: return "peak transmission/reflection versus pump energy";
    case StudyKind::window_trace: return "switching window T(t) at one pump energy";
    case StudyKind::delay_scan: return "switching probability of a finite signal pulse versus delay";
    case StudyKind::pump_broadening: return "pump intensity profile after propagation";
    case StudyKind::noise_curve: return "Raman noise photons versus bandwidth-window product";
  }
  return "";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ScenarioFile parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }

  ScenarioFile out;
  out.canonical_json = root.dump();
  out.hash = fnv1a64(out.canonical_json);

  Section top(root, "");
  out.name = top.opt_string("name").value_or("unnamed");
  (void)top.opt_string("description");

  SwitchScenario& sc = out.scenario;

  auto pump = top.child("pump");
  if (!pump) Section::fail("pump", "required section missing");
  if (auto shape = pump->opt_string("shape")) {
    if (*shape == "gaussian") {
      sc.pump.shape = PulseShape::gaussian;
    } else if (*shape == "sech2") {
      sc.pump.shape = PulseShape::sech2;
    } else {
      Section::fail("pump.shape", "expected gaussian or sech2");
    }
  }
  sc.pump.energy_pj = pump->opt_number("energy_pj");
  sc.pump.peak_power_w = pump->opt_number("peak_power_w");
  sc.pump.intensity_fwhm_ps = pump->opt_number("fwhm_ps");
  sc.pump.sigma_ps = pump->opt_number("sigma_ps");
  sc.pump.wavelength_nm = pump->number_or("wavelength_nm", sc.pump.wavelength_nm);
  pump->finish();

  auto fiber = top.child("fiber");
  if (!fiber) Section::fail("fiber", "required section missing");
  read_fiber(*fiber, sc.fiber, sc.pump.wavelength_nm);

  if (auto sig = top.child("signal")) {
    sc.signal_wavelength_nm = sig->number_or("wavelength_nm", sc.signal_wavelength_nm);
    sc.signal_fwhm_ps = sig->opt_number("fwhm_ps");
    sig->finish();
  }

  if (auto env = top.child("environment")) {
    sc.temperature_k = env->number_or("temperature_k", sc.temperature_k);
    sc.bandwidth_ghz = env->number_or("bandwidth_ghz", sc.bandwidth_ghz);
    sc.loss_signal = env->number_or("loss_signal", sc.loss_signal);
    sc.loss_raman = env->opt_number("loss_raman");
    env->finish();
  }

  if (auto grid = top.child("grid")) {
    if (auto n = grid->opt_count("samples")) sc.grid.n_samples = *n;
    sc.grid.t_span_ps = grid->number_or("span_ps", sc.grid.t_span_ps);
    grid->finish();
  }

  if (auto solver = top.child("solver")) {
    if (auto mode = solver->opt_string("step_mode")) {
      if (*mode == "fixed") {
        out.solver.step_mode = StepMode::fixed;
      } else if (*mode == "phase_bounded") {
        out.solver.step_mode = StepMode::phase_bounded;
      } else {
        Section::fail("solver.step_mode", "expected fixed or phase_bounded");
      }
    }
    out.solver.dz_fixed = solver->number_or("dz_m", out.solver.dz_fixed);
    out.solver.max_phase_step = solver->number_or("max_phase_step_rad", out.solver.max_phase_step);
    if (auto n = solver->opt_count("snapshot_slices")) out.solver.snapshot_slices = *n;
    solver->finish();
  }

  auto study = top.child("study");
  if (!study) Section::fail("study", "required section missing");
  StudySpec& st = out.study;
  const auto kind = study->opt_string("kind");
  if (!kind) Section::fail("study.kind", "required key missing");
  st.kind = parse_kind(*kind);
  if (auto mode = study->opt_string("mode")) st.mode = parse_mode(*mode);

  switch (st.kind) {
    case StudyKind::energy_sweep: {
      auto e = study->list_or_range("energies_pj", "energy_range_pj");
      if (!e || e->empty()) Section::fail("study.energies_pj", "required (or energy_range_pj)");
      st.energies_pj = *e;
      if (st.mode == StudyMode::both) Section::fail("study.mode", "energy_sweep takes analytic or numeric");
      break;
    }
    case StudyKind::delay_scan: {
      auto d = study->list_or_range("delays_ps", "delay_range_ps");
      if (!d || d->empty()) Section::fail("study.delays_ps", "required (or delay_range_ps)");
      st.delays_ps = *d;
      [[fallthrough]];
    }
    case StudyKind::window_trace:
      st.dt_ps = study->number_or("dt_ps", st.dt_ps);
      st.margin_ps = study->number_or("margin_ps", st.margin_ps);
      if (!(st.dt_ps > 0)) Section::fail("study.dt_ps", "must be > 0");
      if (!(st.margin_ps >= 0)) Section::fail("study.margin_ps", "must be >= 0");
      break;
    case StudyKind::pump_broadening: {
      auto l = study->opt_numbers("lengths_m");
      st.lengths_m = l ? *l : std::vector<double>{sc.fiber.length};
      if (st.lengths_m.empty()) Section::fail("study.lengths_m", "must not be empty");
      for (double v : st.lengths_m) {
        if (!(v > 0)) Section::fail("study.lengths_m", "lengths must be > 0");
      }
      break;
    }
    case StudyKind::noise_curve: {
      auto w = study->list_or_range("signal_wavelengths_nm", "signal_wavelength_range_nm");
      st.signal_wavelengths_nm = w ? *w : std::vector<double>{sc.signal_wavelength_nm};
      auto bt = study->list_or_range("bt_products", "bt_range");
      st.bt_products = bt ? *bt : std::vector<double>{1.0};
      for (double v : st.signal_wavelengths_nm) {
        if (!(v > 0) || v == sc.pump.wavelength_nm) {
          Section::fail("study.signal_wavelengths_nm", "wavelengths must be > 0 and differ from the pump");
        }
      }
      for (double v : st.bt_products) {
        if (!(v >= 0)) Section::fail("study.bt_products", "must be >= 0");
      }
      break;
    }
  }
  study->finish();
  top.finish();

  // a pump given by width only runs at the total-switching energy
  if (!sc.pump.energy_pj && !sc.pump.peak_power_w) {
    sc.fiber.validate();
    if (sc.fiber.beta_plus == 0.0) {
      Section::fail("pump.energy_pj", "required when beta_plus = 0 (no switching energy)");
    }
    sc.pump.energy_pj = total_switch_energy(sc.fiber, signal_xpm(sc));
    out.energy_from_switching_condition = true;
  }

  sc.validate();
  out.solver.validate(sc.fiber.length);
  for (double len : st.lengths_m) {
    SolverSettings probe = out.solver;
    probe.validate(len);
  }
  if (st.kind == StudyKind::delay_scan && !sc.signal_fwhm_ps) {
    Section::fail("signal.fwhm_ps", "required by delay_scan");
  }
  (void)make_grid(sc.grid.n_samples, sc.grid.t_span_ps);
  return out;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<Precondition> check_preconditions(const ScenarioFile& file) {
  std::vector<Precondition> out;
  const auto& sc = file.scenario;
  const auto& f = sc.fiber;
  const double sigma = sc.pump.sigma();
  const double dt = sc.grid.t_span_ps / static_cast<double>(sc.grid.n_samples);

  if (dt > sigma / 3.0) {
    out.push_back({"grid_resolution",
                   "grid step " + std::to_string(dt) + " ps exceeds sigma/3 = " +
                       std::to_string(sigma / 3.0) + " ps",
                   true});
  }

  // the solver runs in the pump frame, so walk-off costs no grid; what must
  // fit is the pump itself after its longest propagation
  double longest = f.length;
  for (double l : file.study.lengths_m) longest = std::max(longest, l);
  const double r = f.beta2_pump * longest / (sigma * sigma);
  const double spread = sigma * std::sqrt(1.0 + r * r);
  const double needed = 20.0 * spread;
  if (sc.grid.t_span_ps < needed) {
    out.push_back({"grid_span",
                   "grid span " + std::to_string(sc.grid.t_span_ps) + " ps is narrower than 20 x the "
                   "dispersed pump width at " + std::to_string(longest) + " m (" +
                       std::to_string(needed) + " ps)",
                   true});
  }

  if (f.beta_plus == 0.0 || f.length <= 2.0 * sigma / std::abs(f.beta_plus)) {
    out.push_back({"walk_through",
                   "L <= 2 sigma / |beta_plus|: the signal never fully walks through the pump, "
                   "switching is partial and tau_w / N_R are undefined",
                   false});
  }

  if (file.study.kind == StudyKind::noise_curve || file.study.kind == StudyKind::energy_sweep) {
    return out;
  }
  if (file.study.kind == StudyKind::delay_scan && sc.signal_fwhm_ps) {
    const double window = f.length * std::abs(f.beta_plus);
    for (double d : file.study.delays_ps) {
      if (std::abs(d) > 10.0 * (window + *sc.signal_fwhm_ps)) {
        out.push_back({"delay_range", "delay " + std::to_string(d) + " ps lies far outside the window",
                       false});
        break;
      }
    }
  }
  return out;
}

}  // namespace sagnac
