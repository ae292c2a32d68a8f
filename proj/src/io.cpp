#include "eik/io.hpp"

#include <cinttypes>
#include <cstdio>

namespace eik {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* label_name(Label l) {
  switch (l) {
    case Label::Far:
      return "Far";
    case Label::Narrow:
      return "Narrow";
    case Label::Accepted:
      return "Accepted";
  }
  return "?";
}

nlohmann::json to_json(const RunManifest& m) {
  return nlohmann::json{{"schema_version", m.schema_version},
                        {"command", m.command},
                        {"benchmark", m.benchmark},
                        {"h_values", m.h_values},
                        {"margin", m.margin},
                        {"minimizer_method", m.minimizer_method},
                        {"angle_tolerance", m.angle_tolerance},
                        {"seed", m.seed},
                        {"samples", m.samples},
                        {"min_order", m.min_order},
                        {"out_dir", m.out_dir}};
}

nlohmann::json to_json(const SolveReport& r) {
  return nlohmann::json{{"iterations_or_pops", r.iterations_or_pops},
                        {"heap_ops", r.heap_ops},
                        {"objective_evals", r.objective_evals},
                        {"residual", r.residual},
                        {"wall_time_s", r.wall_time_s},
                        {"converged", r.converged}};
}

void write_value_field_csv(std::ostream& os, const ValueField& field) {
  const Grid& g = field.grid;
  for (int a = 0; a < g.dim(); ++a) os << "i" << a << ",";
  for (int a = 0; a < g.dim(); ++a) os << "x" << a << ",";
  os << "v,t,label\n";
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const MultiIndex m = g.to_multi(NodeId{i});
    const Vec p = g.node_coord(NodeId{i});
    for (int a = 0; a < g.dim(); ++a) os << m[a] << ",";
    for (int a = 0; a < g.dim(); ++a) os << format_g17(p[a]) << ",";
    const double v = field.values[static_cast<std::size_t>(i)];
    os << format_g17(v) << "," << format_g17(kruzkov_inverse(v)) << ","
       << label_name(field.labels[static_cast<std::size_t>(i)]) << "\n";
  }
}

void write_convergence_csv(std::ostream& os, const ConvergenceRecord& rec) {
  os << "h,sup_error\n";
  for (std::size_t i = 0; i < rec.h_values.size(); ++i) {
    os << format_g17(rec.h_values[i]) << "," << format_g17(rec.sup_errors[i]) << "\n";
  }
}

void write_semiconcavity_csv(std::ostream& os, const SemiconcavityProbe& probe) {
  os << "z,max_ratio\n";
  for (std::size_t i = 0; i < probe.z_magnitudes.size(); ++i) {
    os << format_g17(probe.z_magnitudes[i]) << "," << format_g17(probe.max_ratio[i]) << "\n";
  }
}

void write_complexity_csv(std::ostream& os, const std::vector<ComplexityPoint>& points) {
  os << "per_axis,m_nodes,pops,heap_ops,reachable\n";
  for (const auto& p : points) {
    os << p.per_axis << "," << p.m_nodes << "," << p.pops << "," << p.heap_ops << ","
       << p.reachable << "\n";
  }
}

}  // namespace eik
