#ifndef EIK_IO_HPP
#define EIK_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eik/analysis.hpp"
#include "eik/solve.hpp"

namespace eik {

/// Shortest round-trip-exact decimal form (17 significant digits).
std::string format_g17(double x);

const char* label_name(Label l);

/// Everything that determines a run; echoed into every JSON artifact so a
/// run can be reproduced byte-for-byte. schema_version gates downstream
/// tooling.
struct RunManifest {
  int schema_version = 1;
  std::string command;
  std::string benchmark;
  std::vector<double> h_values;  // one entry for single-h commands
  double margin = 0.0;
  std::string minimizer_method;
  double angle_tolerance = 0.0;
  std::uint64_t seed = 0;
  long long samples = 0;
  double min_order = 0.0;
  std::string out_dir;
};

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const SolveReport& r);

/// Node-per-row field dump: axis indices, coordinates, Kruzkov value v,
/// time T = -log(1-v), and the marching label.
void write_value_field_csv(std::ostream& os, const ValueField& field);

void write_convergence_csv(std::ostream& os, const ConvergenceRecord& rec);
void write_semiconcavity_csv(std::ostream& os, const SemiconcavityProbe& probe);
void write_complexity_csv(std::ostream& os, const std::vector<ComplexityPoint>& points);

}  // namespace eik

#endif  // EIK_IO_HPP
