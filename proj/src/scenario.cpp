#include "zeno/scenario.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace zeno {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& where,
                              const std::string& what) {
  throw ValidationError("config field '" + where + "': " + what);
}

ComplexMatrix parse_matrix(const ordered_json& j, const std::string& where,
                           std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    field_error(where, "expected " + std::to_string(rows) + " rows");
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      field_error(where + "/" + std::to_string(r),
                  "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number())
        field_error(where + "/" + std::to_string(r) + "/" + std::to_string(c),
                    "expected a [real, imag] pair");
      m(r, c) = complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }

  ScenarioConfig cfg;
  if (!j.contains("dimension") || !j["dimension"].is_number_unsigned())
    field_error("/dimension", "required positive integer");
  cfg.dimension = j["dimension"].get<std::size_t>();
  if (cfg.dimension < 1 || cfg.dimension > 64)
    field_error("/dimension", "must be in [1, 64]");
  const std::size_t d = cfg.dimension;

  if (!j.contains("generator") || !j["generator"].is_object())
    field_error("/generator", "required object");
  const auto& gen = j["generator"];
  const std::string kind = gen.value("kind", "");
  if (kind == "hamiltonian" || kind == "composite") {
    cfg.generator_kind = kind == "hamiltonian" ? GeneratorKind::hamiltonian
                                               : GeneratorKind::composite;
    if (!gen.contains("hamiltonian"))
      field_error("/generator/hamiltonian", "required matrix");
    cfg.hamiltonian =
        parse_matrix(gen["hamiltonian"], "/generator/hamiltonian", d, d);
    if (!cfg.hamiltonian.is_hermitian(1e-10))
      field_error("/generator/hamiltonian", "matrix is not Hermitian");
  } else if (kind == "dissipative") {
    cfg.generator_kind = GeneratorKind::dissipative;
  } else if (kind == "lz") {
    cfg.generator_kind = GeneratorKind::lz;
    if (d != 2) field_error("/dimension", "the lz generator needs dimension 2");
    if (!gen.contains("delta") || !gen["delta"].is_number())
      field_error("/generator/delta", "required number");
    if (!gen.contains("epsilon") || !gen["epsilon"].is_number())
      field_error("/generator/epsilon", "required number");
    try {
      cfg.lz = LZParams(gen["delta"].get<double>(),
                        gen["epsilon"].get<double>());
    } catch (const ValidationError& e) {
      field_error("/generator", e.what());
    }
  } else {
    field_error("/generator/kind",
                "must be hamiltonian, dissipative, composite or lz");
  }
  if (kind == "dissipative" || kind == "composite") {
    if (!gen.contains("jump_operators") || !gen["jump_operators"].is_array() ||
        gen["jump_operators"].empty())
      field_error("/generator/jump_operators", "required non-empty array");
    std::size_t idx = 0;
    for (const auto& jj : gen["jump_operators"]) {
      const std::string where =
          "/generator/jump_operators/" + std::to_string(idx++);
      if (!jj.is_object() || !jj.contains("matrix") || !jj.contains("rate"))
        field_error(where, "expected {matrix, rate}");
      Jump jump;
      jump.op = parse_matrix(jj["matrix"], where + "/matrix", d, d);
      if (!jj["rate"].is_number() || jj["rate"].get<double>() < 0.0)
        field_error(where + "/rate", "must be a nonnegative number");
      jump.rate = jj["rate"].get<double>();
      cfg.jumps.push_back(std::move(jump));
    }
  }

  if (!j.contains("measurement") || !j["measurement"].is_object())
    field_error("/measurement", "required object");
  const auto& meas = j["measurement"];
  const std::string mkind = meas.value("kind", "");
  if (mkind == "fixed") {
    cfg.measurement_kind = MeasurementKind::fixed;
    if (!meas.contains("basis"))
      field_error("/measurement/basis", "required matrix of basis columns");
    cfg.fixed_basis_columns =
        parse_matrix(meas["basis"], "/measurement/basis", d, d);
    try {
      (void)OrthonormalBasis::from_columns(cfg.fixed_basis_columns);
    } catch (const ValidationError& e) {
      field_error("/measurement/basis", e.what());
    }
  } else if (mkind == "instantaneous-eigenbasis") {
    cfg.measurement_kind = MeasurementKind::instantaneous_eigenbasis;
  } else {
    field_error("/measurement/kind",
                "must be fixed or instantaneous-eigenbasis");
  }

  if (j.contains("schedule")) {
    const auto& sched = j["schedule"];
    const std::string skind = sched.value("kind", "");
    if (skind == "none") {
      cfg.schedule_kind = ScheduleKind::none;
    } else if (skind == "times") {
      cfg.schedule_kind = ScheduleKind::explicit_times;
      if (!sched.contains("times") || !sched["times"].is_array())
        field_error("/schedule/times", "required array of numbers");
      for (const auto& t : sched["times"]) {
        if (!t.is_number()) field_error("/schedule/times", "non-numeric entry");
        cfg.schedule_times.push_back(t.get<double>());
      }
    } else if (skind == "uniform" || skind == "adapted") {
      cfg.schedule_kind = skind == "uniform" ? ScheduleKind::uniform
                                             : ScheduleKind::adapted;
      if (!sched.contains("N") || !sched["N"].is_number_integer() ||
          sched["N"].get<int>() < 1)
        field_error("/schedule/N", "required integer >= 1");
      cfg.schedule_n = sched["N"].get<int>();
    } else {
      field_error("/schedule/kind", "must be none, times, uniform or adapted");
    }
  }

  if (j.contains("initial_populations")) {
    const auto& pops = j["initial_populations"];
    if (!pops.is_array() || pops.size() != d)
      field_error("/initial_populations", "expected " + std::to_string(d) +
                                              " numbers");
    double sum = 0.0;
    for (const auto& v : pops) {
      if (!v.is_number() || v.get<double>() < 0.0)
        field_error("/initial_populations", "entries must be >= 0");
      cfg.initial_populations.push_back(v.get<double>());
      sum += v.get<double>();
    }
    if (std::abs(sum - 1.0) > 1e-9)
      field_error("/initial_populations", "must sum to 1");
  }

  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || j["tolerance"].get<double>() <= 0.0)
      field_error("/tolerance", "must be a positive number");
    cfg.tolerance = j["tolerance"].get<double>();
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string ScenarioConfig::to_json_text() const {
  ordered_json j;
  j["dimension"] = dimension;
  ordered_json gen;
  switch (generator_kind) {
    case GeneratorKind::hamiltonian:
      gen["kind"] = "hamiltonian";
      gen["hamiltonian"] = matrix_to_json(hamiltonian);
      break;
    case GeneratorKind::composite:
      gen["kind"] = "composite";
      gen["hamiltonian"] = matrix_to_json(hamiltonian);
      break;
    case GeneratorKind::dissipative:
      gen["kind"] = "dissipative";
      break;
    case GeneratorKind::lz:
      gen["kind"] = "lz";
      gen["delta"] = lz->delta;
      gen["epsilon"] = lz->eps;
      break;
  }
  if (generator_kind == GeneratorKind::dissipative ||
      generator_kind == GeneratorKind::composite) {
    ordered_json jumps_json = ordered_json::array();
    for (const auto& jump : jumps) {
      ordered_json jj;
      jj["matrix"] = matrix_to_json(jump.op);
      jj["rate"] = jump.rate;
      jumps_json.push_back(std::move(jj));
    }
    gen["jump_operators"] = std::move(jumps_json);
  }
  j["generator"] = std::move(gen);

  ordered_json meas;
  if (measurement_kind == MeasurementKind::fixed) {
    meas["kind"] = "fixed";
    meas["basis"] = matrix_to_json(fixed_basis_columns);
  } else {
    meas["kind"] = "instantaneous-eigenbasis";
  }
  j["measurement"] = std::move(meas);

  ordered_json sched;
  switch (schedule_kind) {
    case ScheduleKind::none:
      sched["kind"] = "none";
      break;
    case ScheduleKind::explicit_times:
      sched["kind"] = "times";
      sched["times"] = schedule_times;
      break;
    case ScheduleKind::uniform:
      sched["kind"] = "uniform";
      sched["N"] = schedule_n;
      break;
    case ScheduleKind::adapted:
      sched["kind"] = "adapted";
      sched["N"] = schedule_n;
      break;
  }
  j["schedule"] = std::move(sched);

  if (!initial_populations.empty())
    j["initial_populations"] = initial_populations;
  j["tolerance"] = tolerance;
  return j.dump(2) + "\n";
}

GeneratorSpec ScenarioConfig::build_generator() const {
  switch (generator_kind) {
    case GeneratorKind::hamiltonian:
      return GeneratorSpec::hamiltonian(hamiltonian);
    case GeneratorKind::lz:
      return lz_generator(*lz);
    case GeneratorKind::dissipative: {
      std::vector<GeneratorSpec::JumpTerm> terms;
      for (const auto& jump : jumps) {
        const ComplexMatrix op = jump.op;
        const double rate = jump.rate;
        terms.push_back({[op](double) { return op; },
                         [rate](double) { return rate; }});
      }
      return GeneratorSpec::composite(std::nullopt, std::move(terms), false);
    }
    case GeneratorKind::composite: {
      std::vector<GeneratorSpec::JumpTerm> terms;
      for (const auto& jump : jumps) {
        const ComplexMatrix op = jump.op;
        const double rate = jump.rate;
        terms.push_back({[op](double) { return op; },
                         [rate](double) { return rate; }});
      }
      const ComplexMatrix h = hamiltonian;
      return GeneratorSpec::composite(MatrixFn([h](double) { return h; }),
                                      std::move(terms), false);
    }
  }
  throw ValidationError("unreachable generator kind");
}

OrthonormalBasis ScenarioConfig::build_measurement_basis(double t) const {
  if (measurement_kind == MeasurementKind::fixed)
    return OrthonormalBasis::from_columns(fixed_basis_columns);
  return eigenbasis_of(build_generator().hamiltonian_at(t));
}

BasisSource ScenarioConfig::build_basis_source() const {
  if (measurement_kind == MeasurementKind::fixed)
    return BasisSource::fixed(OrthonormalBasis::from_columns(
        fixed_basis_columns));
  return BasisSource::instantaneous_eigenbasis();
}

DensityOperator ScenarioConfig::build_initial_state() const {
  std::vector<double> pops = initial_populations;
  if (pops.empty()) {
    pops.assign(dimension, 0.0);
    pops[0] = 1.0;
  }
  if (measurement_kind == MeasurementKind::fixed) {
    const OrthonormalBasis basis =
        OrthonormalBasis::from_columns(fixed_basis_columns);
    ComplexMatrix rho(dimension, dimension);
    for (std::size_t k = 0; k < dimension; ++k)
      rho += basis.projector(k) * complex(pops[k], 0.0);
    return DensityOperator(rho);
  }
  return DensityOperator::diagonal(pops);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<ResultRecord>& records,
               std::size_t dimension) {
  os << "t,scheme";
  for (std::size_t k = 0; k < dimension; ++k) os << ",p" << k;
  os << ",offdiag_norm\n";
  for (const auto& rec : records) {
    if (rec.populations.size() != dimension)
      throw ValidationError("ResultRecord has wrong population count");
    double sum = 0.0;
    for (double p : rec.populations) sum += p;
    if (std::abs(sum - 1.0) > 1e-8)
      throw ValidationError("ResultRecord populations do not sum to 1");
    os << format_double(rec.time) << ',' << rec.scheme;
    for (double p : rec.populations) os << ',' << format_double(p);
    os << ',' << format_double(rec.offdiag_norm) << '\n';
  }
}

void write_csv_file(const std::string& path,
                    const std::vector<ResultRecord>& records,
                    std::size_t dimension) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + path);
  write_csv(out, records, dimension);
}

}  // namespace zeno
