#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "ballspec/io.hpp"

using namespace ballspec;

namespace {
const BallDomain kUnit{1.0};

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}
}  // namespace

TEST_CASE("format_double: 17 significant digits, point decimal, round trip") {
  const double v = 4.4934094579090641;
  const std::string s = format_double(v);
  CHECK(s.find(',') == std::string::npos);
  CHECK(std::strtod(s.c_str(), nullptr) == v);
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("eigs_csv: header, rows, determinism") {
  const auto idx = enumerate_indices(OperatorKind::curl, 1, 1, kUnit);
  const std::string csv = eigs_csv(idx, kUnit);
  CHECK(csv.rfind("operator,n,m,k,sign,eigenvalue\n", 0) == 0);
  CHECK(line_count(csv) == 7);  // header + 6 rows
  CHECK(csv == eigs_csv(idx, kUnit));
  CHECK(csv.find("curl,1,1,-1,+,") != std::string::npos);
}

TEST_CASE("zero table CSV carries both kinds") {
  const std::string rho = zero_table_csv(ZeroTable::Kind::function_zero, 1, 2);
  CHECK(rho.rfind("kind,n,m,value\n", 0) == 0);
  CHECK(rho.find("rho,0,1,3.14159265358979") != std::string::npos);
  const std::string alpha =
      zero_table_csv(ZeroTable::Kind::derivative_zero, 1, 1);
  CHECK(alpha.find("alpha,1,1,2.08157597781810") != std::string::npos);
}

TEST_CASE("coefficients JSON round trip") {
  SpectralCoefficients c = zero_coefficients(Truncation{2, 1}, kUnit);
  c.a[1] = 0.25;
  c.b[3] = -1.5e-7;
  const std::string text = coefficients_json(c);
  const SpectralCoefficients back = coefficients_from_json(text);
  REQUIRE(back.a.size() == c.a.size());
  REQUIRE(back.b.size() == c.b.size());
  for (size_t i = 0; i < c.a.size(); ++i) CHECK(back.a[i] == c.a[i]);
  for (size_t i = 0; i < c.b.size(); ++i) CHECK(back.b[i] == c.b[i]);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.at("schema_version").get<int>() == kSchemaVersion);
}

TEST_CASE("coefficients CSV layout") {
  SpectralCoefficients c = zero_coefficients(Truncation{1, 1}, kUnit);
  const std::string csv = coefficients_csv(c);
  CHECK(csv.rfind("operator,n,m,k,sign,value\n", 0) == 0);
  CHECK(line_count(csv) ==
        1 + static_cast<int>(c.a.size() + c.b.size()));
}

TEST_CASE("residual report JSON schema") {
  ResidualReport rep;
  rep.index = {1, 1, 0, OperatorKind::curl, BranchSign::plus};
  rep.eigen_residual = 1e-4;
  const auto doc = nlohmann::json::parse(residual_report_json(rep));
  for (const char* key : {"schema_version", "eigen_residual", "div_residual",
                          "boundary_flux", "gram_defect", "index", "h", "seed",
                          "sample_budget"})
    CHECK(doc.contains(key));
  CHECK(doc.at("index").at("operator") == "curl");
}

TEST_CASE("trace CSV and diagnostics") {
  TraceConfig cfg;
  cfg.seeds = {{0.0, 0.0, 0.5}};
  cfg.step = 1e-2;
  cfg.max_steps = 5;
  const auto traces = trace_field_lines(cfg, kUnit);
  const std::string csv = traces_csv(traces);
  CHECK(csv.rfind("trace_id,s,x,y,z\n", 0) == 0);
  CHECK(line_count(csv) == 1 + static_cast<int>(traces[0].points.size()));
  const auto doc =
      nlohmann::json::parse(trace_diagnostics_json(traces, cfg));
  CHECK(doc.at("traces").size() == 1);
  CHECK(doc.at("traces")[0].contains("psi_relative_drift"));
}

TEST_CASE("scale norm JSON") {
  const auto doc = nlohmann::json::parse(
      scale_norm_json(ScaleNorm{Scale::A, -2, 0.125}));
  CHECK(doc.at("scale") == "A");
  CHECK(doc.at("order") == -2);
  CHECK(doc.at("value") == 0.125);
}
