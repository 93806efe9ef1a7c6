#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "zeno/generator.hpp"
#include "zeno/landau_zener.hpp"
#include "zeno/propagation.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Declarative run description parsed from JSON. Complex entries are
/// [real, imag] pairs throughout; no complex-literal strings.
struct ScenarioConfig {
  std::size_t dimension = 0;

  enum class GeneratorKind { hamiltonian, dissipative, composite, lz };
  GeneratorKind generator_kind = GeneratorKind::hamiltonian;
  ComplexMatrix hamiltonian;  // used by hamiltonian/composite kinds
  struct Jump {
    ComplexMatrix op;
    double rate = 0.0;
  };
  std::vector<Jump> jumps;
  std::optional<LZParams> lz;  // used by the lz kind

  enum class MeasurementKind { fixed, instantaneous_eigenbasis };
  MeasurementKind measurement_kind = MeasurementKind::fixed;
  ComplexMatrix fixed_basis_columns;  // columns are the basis vectors

  enum class ScheduleKind { none, explicit_times, uniform, adapted };
  ScheduleKind schedule_kind = ScheduleKind::none;
  std::vector<double> schedule_times;
  int schedule_n = 0;

  // Initial diagonal state: a mixture of the fixed measurement-basis
  // projectors, or a computational-basis diagonal for the
  // instantaneous-eigenbasis kind. Defaults to the first basis state.
  std::vector<double> initial_populations;
  double tolerance = tol::integrator;

  /// Parse; errors carry the JSON pointer of the offending field.
  static ScenarioConfig from_json_text(const std::string& text);
  static ScenarioConfig from_file(const std::string& path);
  std::string to_json_text() const;

  GeneratorSpec build_generator() const;
  OrthonormalBasis build_measurement_basis(double t = 0.0) const;
  BasisSource build_basis_source() const;
  DensityOperator build_initial_state() const;
};

/// One output row of a run. `diagnostics` is free-form (warnings, step
/// counts) and travels in JSON summaries; the CSV schema stays fixed.
struct ResultRecord {
  std::string scenario_id;
  std::string scheme;  // exact | effective | closed-form
  double time = 0.0;
  std::vector<double> populations;
  double offdiag_norm = 0.0;
  std::string diagnostics;
};

/// CSV with header `t,scheme,p0,...,p{d-1},offdiag_norm`; numbers printed
/// with 17 significant digits, locale independent, so output is
/// byte-reproducible.
void write_csv(std::ostream& os, const std::vector<ResultRecord>& records,
               std::size_t dimension);
void write_csv_file(const std::string& path,
                    const std::vector<ResultRecord>& records,
                    std::size_t dimension);

/// Shortest-exact decimal form used in the CSV writer.
std::string format_double(double v);

}  // namespace zeno
