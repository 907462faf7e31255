#include "ballspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ballspec {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string eigs_csv(const std::vector<MultiIndex>& indices,
                     const BallDomain& domain) {
  std::ostringstream os;
  os << "operator,n,m,k,sign,eigenvalue\n";
  for (const MultiIndex& idx : indices) {
    os << to_string(idx.op) << ',' << idx.n << ',' << idx.m << ',' << idx.k
       << ',' << to_string(idx.sign) << ','
       << format_double(eigenvalue_of(idx, domain)) << '\n';
  }
  return os.str();
}

std::string eigs_json(const std::vector<MultiIndex>& indices,
                      const BallDomain& domain) {
  json rows = json::array();
  for (const MultiIndex& idx : indices)
    rows.push_back(json{{"operator", to_string(idx.op)},
                        {"n", idx.n},
                        {"m", idx.m},
                        {"k", idx.k},
                        {"sign", to_string(idx.sign)},
                        {"eigenvalue", eigenvalue_of(idx, domain)}});
  const json doc{{"schema_version", kSchemaVersion},
                 {"radius", domain.radius},
                 {"eigenvalues", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string field_csv(const std::vector<FieldSample>& samples) {
  std::ostringstream os;
  os << "x,y,z,ux,uy,uz\n";
  for (const FieldSample& s : samples) {
    os << format_double(s.x.x) << ',' << format_double(s.x.y) << ','
       << format_double(s.x.z) << ',' << format_double(s.u.x) << ','
       << format_double(s.u.y) << ',' << format_double(s.u.z) << '\n';
  }
  return os.str();
}

std::string field_json(const std::vector<FieldSample>& samples) {
  json rows = json::array();
  for (const FieldSample& s : samples)
    rows.push_back(json{{"x", s.x.x},
                        {"y", s.x.y},
                        {"z", s.x.z},
                        {"ux", s.u.x},
                        {"uy", s.u.y},
                        {"uz", s.u.z}});
  const json doc{{"schema_version", kSchemaVersion},
                 {"samples", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string zero_table_csv(ZeroTable::Kind kind, int n_max, int m_max) {
  std::ostringstream os;
  os << "kind,n,m,value\n";
  const char* tag =
      kind == ZeroTable::Kind::function_zero ? "rho" : "alpha";
  for (const auto& [nm, value] : zero_table_snapshot(kind, n_max, m_max))
    os << tag << ',' << nm.first << ',' << nm.second << ','
       << format_double(value) << '\n';
  return os.str();
}

std::string zero_table_json(ZeroTable::Kind kind, int n_max, int m_max) {
  json rows = json::array();
  const char* tag = kind == ZeroTable::Kind::function_zero ? "rho" : "alpha";
  for (const auto& [nm, value] : zero_table_snapshot(kind, n_max, m_max))
    rows.push_back(json{
        {"kind", tag}, {"n", nm.first}, {"m", nm.second}, {"value", value}});
  const json doc{{"schema_version", kSchemaVersion}, {"zeros", std::move(rows)}};
  return doc.dump(2) + "\n";
}

namespace {

json index_json(const MultiIndex& idx) {
  return json{{"operator", to_string(idx.op)},
              {"n", idx.n},
              {"m", idx.m},
              {"k", idx.k},
              {"sign", to_string(idx.sign)}};
}

MultiIndex index_from_json(const json& j) {
  MultiIndex idx;
  idx.op = j.at("operator").get<std::string>() == "curl" ? OperatorKind::curl
                                                         : OperatorKind::graddiv;
  idx.n = j.at("n").get<int>();
  idx.m = j.at("m").get<int>();
  idx.k = j.at("k").get<int>();
  idx.sign = j.at("sign").get<std::string>() == "-" ? BranchSign::minus
                                                    : BranchSign::plus;
  return idx;
}

}  // namespace

std::string coefficients_csv(const SpectralCoefficients& c) {
  std::ostringstream os;
  os << "operator,n,m,k,sign,value\n";
  for (size_t i = 0; i < c.a.size(); ++i) {
    const MultiIndex& idx = c.a_indices[i];
    os << "graddiv," << idx.n << ',' << idx.m << ',' << idx.k << ",+,"
       << format_double(c.a[i]) << '\n';
  }
  for (size_t i = 0; i < c.b.size(); ++i) {
    const MultiIndex& idx = c.b_indices[i];
    os << "curl," << idx.n << ',' << idx.m << ',' << idx.k << ','
       << to_string(idx.sign) << ',' << format_double(c.b[i]) << '\n';
  }
  return os.str();
}

std::string coefficients_json(const SpectralCoefficients& c) {
  json records = json::array();
  for (size_t i = 0; i < c.a.size(); ++i) {
    json r = index_json(c.a_indices[i]);
    r["value"] = c.a[i];
    records.push_back(std::move(r));
  }
  for (size_t i = 0; i < c.b.size(); ++i) {
    json r = index_json(c.b_indices[i]);
    r["value"] = c.b[i];
    records.push_back(std::move(r));
  }
  const json doc{{"schema_version", kSchemaVersion},
                 {"radius", c.domain.radius},
                 {"truncation", {{"n_max", c.trunc.n_max}, {"m_max", c.trunc.m_max}}},
                 {"coefficients", std::move(records)}};
  return doc.dump(2) + "\n";
}

SpectralCoefficients coefficients_from_json(const std::string& text) {
  const json doc = json::parse(text);
  Truncation trunc{doc.at("truncation").at("n_max").get<int>(),
                   doc.at("truncation").at("m_max").get<int>()};
  BallDomain domain{doc.at("radius").get<double>()};
  SpectralCoefficients c = zero_coefficients(trunc, domain);
  for (const json& r : doc.at("coefficients")) {
    const MultiIndex idx = index_from_json(r);
    const double value = r.at("value").get<double>();
    auto& indices = idx.op == OperatorKind::curl ? c.b_indices : c.a_indices;
    auto& values = idx.op == OperatorKind::curl ? c.b : c.a;
    bool placed = false;
    for (size_t i = 0; i < indices.size(); ++i)
      if (indices[i] == idx) {
        values[i] = value;
        placed = true;
        break;
      }
    if (!placed)
      throw IndexError("coefficients_from_json: index " + to_string(idx) +
                       " outside the stated truncation");
  }
  return c;
}

std::string scale_norm_json(const ScaleNorm& norm) {
  const json doc{{"schema_version", kSchemaVersion},
                 {"scale", norm.scale == Scale::A ? "A" : "W"},
                 {"order", norm.order},
                 {"value", norm.value}};
  return doc.dump(2) + "\n";
}

std::string residual_report_json(const ResidualReport& rep) {
  const json doc{{"schema_version", kSchemaVersion},
                 {"eigen_residual", rep.eigen_residual},
                 {"div_residual", rep.div_residual},
                 {"boundary_flux", rep.boundary_flux},
                 {"gram_defect", rep.gram_defect},
                 {"index", index_json(rep.index)},
                 {"h", rep.h},
                 {"seed", rep.seed},
                 {"sample_budget", rep.sample_budget},
                 {"boundary_samples", rep.boundary_samples},
                 {"fd_order", rep.fd_order}};
  return doc.dump(2) + "\n";
}

std::string traces_csv(const std::vector<Trace>& traces) {
  std::ostringstream os;
  os << "trace_id,s,x,y,z\n";
  for (const Trace& tr : traces)
    for (const TracePoint& p : tr.points)
      os << tr.id << ',' << format_double(p.s) << ',' << format_double(p.x.x)
         << ',' << format_double(p.x.y) << ',' << format_double(p.x.z) << '\n';
  return os.str();
}

std::string trace_diagnostics_json(const std::vector<Trace>& traces,
                                   const TraceConfig& config) {
  json arr = json::array();
  for (const Trace& tr : traces) {
    const char* stop = tr.stop == StopReason::max_steps    ? "max_steps"
                       : tr.stop == StopReason::left_ball ? "left_ball"
                                                          : "stagnation";
    arr.push_back(json{{"trace_id", tr.id},
                       {"steps", tr.points.size() - 1},
                       {"stop", stop},
                       {"psi_initial", tr.psi_initial},
                       {"psi_max_drift", tr.psi_max_drift},
                       {"psi_relative_drift", tr.psi_relative_drift}});
  }
  const json doc{{"schema_version", kSchemaVersion},
                 {"index", index_json(config.index)},
                 {"step", config.step},
                 {"max_steps", config.max_steps},
                 {"traces", std::move(arr)}};
  return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ballspec
