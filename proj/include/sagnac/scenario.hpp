#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sagnac/params.hpp"
#include "sagnac/propagator.hpp"

namespace sagnac {

enum class StudyKind { energy_sweep, window_trace, delay_scan, pump_broadening, noise_curve };

/// Which phase model a study evaluates; `both` is accepted by the
/// time-resolved studies only.
enum class StudyMode { analytic, numeric, both };

struct StudySpec {
  StudyKind kind = StudyKind::energy_sweep;
  StudyMode mode = StudyMode::analytic;
  std::vector<double> energies_pj;            // energy_sweep
  double dt_ps = 1.0;                         // window_trace, delay_scan
  double margin_ps = 50.0;
  std::vector<double> delays_ps;              // delay_scan, relative to the window center
  std::vector<double> lengths_m;              // pump_broadening
  std::vector<double> signal_wavelengths_nm;  // noise_curve
  std::vector<double> bt_products;            // noise_curve
};

/// A parsed and validated scenario file.
struct ScenarioFile {
  std::string name;
  SwitchScenario scenario;
  SolverSettings solver;
  StudySpec study;
  bool energy_from_switching_condition = false;  // pump energy was left to E*
  std::string canonical_json;                    // sorted-key dump of the input
  std::uint64_t hash = 0;                        // FNV-1a 64 of canonical_json
};

/// Strict parse: unknown keys, wrong types and missing required keys throw
/// ValidationError with a dotted path ("fiber.length_m: ...").
ScenarioFile parse_scenario(std::string_view json_text);
ScenarioFile load_scenario(const std::filesystem::path& path);

std::string_view study_name(StudyKind kind);
/// Figure number the study reproduces ("2", "4a", ...).
std::string_view study_figure(StudyKind kind);
std::string_view study_summary(StudyKind kind);
inline constexpr StudyKind all_studies[] = {StudyKind::energy_sweep, StudyKind::window_trace,
                                            StudyKind::delay_scan, StudyKind::pump_broadening,
                                            StudyKind::noise_curve};

std::uint64_t fnv1a64(std::string_view bytes);

struct Precondition {
  std::string name;
  std::string message;
  bool fatal = true;
};

/// Physics checks that do not need a solver run. Non-fatal entries are
/// warnings.
std::vector<Precondition> check_preconditions(const ScenarioFile& file);

}  // namespace sagnac
