// ballspec command-line tool: eigenvalue tables, field sampling, numerical
// verification suites, Helmholtz-Weyl projection, diagonal solves, field-line
// tracing, and zero-table export. Exit codes: 0 success / all checks pass,
// 1 verification failure, 2 usage or domain error, 3 I/O error.

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ballspec/ballcalc.hpp"
#include "ballspec/core.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/io.hpp"
#include "ballspec/spectral.hpp"
#include "ballspec/trace.hpp"

using namespace ballspec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

OperatorKind parse_operator(const std::string& s) {
  if (s == "curl") return OperatorKind::curl;
  if (s == "graddiv") return OperatorKind::graddiv;
  throw CLI::ValidationError("--operator must be curl or graddiv");
}

// "op:n,m,k[,sign]", e.g. "curl:1,1,0,+" or "graddiv:0,1,0"
MultiIndex parse_index(const std::string& s) {
  MultiIndex idx;
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("index must look like curl:n,m,k[,+|-]");
  idx.op = parse_operator(s.substr(0, colon));
  std::istringstream rest(s.substr(colon + 1));
  char comma;
  if (!(rest >> idx.n >> comma >> idx.m >> comma >> idx.k))
    throw CLI::ValidationError("index must look like curl:n,m,k[,+|-]");
  idx.sign = BranchSign::plus;
  if (rest >> comma) {
    char sign_char;
    if (rest >> sign_char && sign_char == '-') idx.sign = BranchSign::minus;
  }
  return idx;
}

Vec3 parse_triple(const std::string& s) {
  Vec3 v;
  char comma;
  std::istringstream is(s);
  if (!(is >> v.x >> comma >> v.y >> comma >> v.z))
    throw CLI::ValidationError("expected a comma-separated triple x,y,z");
  return v;
}

// Built-in test fields (version 1):
//   rigid_rotation   (-y, x, 0); solenoidal, zero normal trace
//   radial_gradient  grad(x^2+y^2+z^2) = 2x; potential class
//   grad_x2          grad(x^2) = (2x, 0, 0)
//   composite        grad(x^2) + rigid rotation (the decomposition benchmark)
//   eigen:<index>    one normalized eigenfield
VectorField make_test_field(const std::string& spec, const BallDomain& domain) {
  if (spec == "rigid_rotation")
    return field_from_cartesian([](const Vec3& q) { return Vec3{-q.y, q.x, 0.0}; });
  if (spec == "radial_gradient")
    return field_from_cartesian([](const Vec3& q) { return 2.0 * q; });
  if (spec == "grad_x2")
    return field_from_cartesian(
        [](const Vec3& q) { return Vec3{2.0 * q.x, 0.0, 0.0}; });
  if (spec == "composite")
    return field_from_cartesian(
        [](const Vec3& q) { return Vec3{2.0 * q.x - q.y, q.x, 0.0}; });
  if (spec.rfind("eigen:", 0) == 0) {
    const MultiIndex idx = parse_index(spec.substr(6));
    const EigenRecord rec =
        normalize_radial(make_record(idx, domain), domain);
    return spherical_field(rec, domain);
  }
  throw CLI::ValidationError("unknown field spec: " + spec);
}

struct CheckRow {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

json rows_to_json(const std::vector<CheckRow>& rows) {
  json arr = json::array();
  for (const CheckRow& r : rows)
    arr.push_back(json{{"check", r.name},
                       {"value", r.value},
                       {"threshold", r.threshold},
                       {"pass", r.pass}});
  return arr;
}

int run_verify(const std::string& suite, double radius, int nmax, int mmax,
               std::uint64_t seed, double sabotage,
               const std::string& out_path) {
  const BallDomain domain{radius};
  std::vector<CheckRow> rows;
  auto add = [&](const std::string& name, double value, double threshold) {
    rows.push_back({name, value, threshold, value <= threshold});
  };

  if (suite == "eigen" || suite == "all") {
    VerifyConfig cfg;
    cfg.seed = seed;
    cfg.fd_order = 4;
    for (OperatorKind op : {OperatorKind::curl, OperatorKind::graddiv}) {
      for (const MultiIndex& idx :
           enumerate_indices(op, nmax, mmax, domain)) {
        if (idx.k != 0 && idx.k != idx.n) continue;  // one per azimuthal type
        if (op == OperatorKind::curl && idx.sign == BranchSign::minus &&
            idx.k != 0)
          continue;
        EigenRecord rec =
            normalize_radial(make_record(idx, domain), domain);
        rec.eigenvalue *= sabotage;  // fault injection hook (default 1.0)
        const ResidualReport rep = verify_eigenpair(rec, domain, cfg);
        add("eigen_residual " + to_string(idx), rep.eigen_residual, 1e-3);
        add("annihilator_residual " + to_string(idx), rep.div_residual, 1e-3);
        add("boundary_flux " + to_string(idx), rep.boundary_flux, 1e-8);
        add("norm_defect " + to_string(idx), rep.gram_defect, 1e-6);
      }
    }
  }
  if (suite == "basis" || suite == "all") {
    const QuadratureGrid grid(domain);
    std::vector<MultiIndex> mixed = enumerate_mixed(nmax, mmax, domain);
    if (mixed.size() > 20) mixed.resize(20);
    std::vector<EigenRecord> recs;
    for (const MultiIndex& idx : mixed)
      recs.push_back(normalize_radial(make_record(idx, domain), domain));
    const std::vector<double> gram = gram_matrix(recs, domain, grid);
    add("gram_defect_first_" + std::to_string(recs.size()),
        gram_defect(gram, static_cast<int>(recs.size())), 1e-6);
    add("adjointness_defect",
        verify_adjointness(recs[0], recs[std::min<size_t>(3, recs.size() - 1)],
                           domain, grid),
        1e-6);
  }
  if (suite == "operators" || suite == "all") {
    const Truncation trunc{std::min(nmax, 3), std::min(mmax, 3)};
    SpectralCoefficients c = zero_coefficients(trunc, domain);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (double& v : c.a) v = uni(rng);
    SpectralCoefficients cv = zero_coefficients(trunc, domain);
    for (double& v : cv.b) v = uni(rng);
    // round trips
    const SpectralCoefficients rt = apply_Nd(apply_Nd_inverse(c, 2), 2);
    double defect = 0.0;
    for (size_t i = 0; i < c.a.size(); ++i)
      defect = std::max(defect, std::abs(rt.a[i] - c.a[i]));
    add("Nd_roundtrip", defect, 1e-12);
    const SpectralCoefficients rts = apply_S(apply_S_inverse(cv, 2), 2);
    defect = 0.0;
    for (size_t i = 0; i < cv.b.size(); ++i)
      defect = std::max(defect, std::abs(rts.b[i] - cv.b[i]));
    add("S_roundtrip", defect, 1e-12);
    add("graddiv_power_solve", solve_graddiv_power(c, 1).roundtrip_residual,
        1e-12);
    add("curl_power_solve", solve_curl_power(cv, 1).roundtrip_residual, 1e-12);
    // Parseval on a synthesized field
    const auto basis = std::make_shared<BasisSet>(trunc, domain);
    SpectralCoefficients mixed = c;
    mixed.b = cv.b;
    const QuadratureGrid grid(domain);
    const double norm = l2_norm(synthesize(mixed, basis), grid);
    const double par = std::sqrt(mixed.a_norm2() + mixed.b_norm2());
    add("parseval_relative", std::abs(norm - par) / par, 1e-5);
  }

  bool all_pass = true;
  for (const CheckRow& r : rows) all_pass &= r.pass;
  const json doc{{"schema_version", kSchemaVersion},
                 {"suite", suite},
                 {"radius", radius},
                 {"n_max", nmax},
                 {"m_max", mmax},
                 {"seed", seed},
                 {"all_pass", all_pass},
                 {"checks", rows_to_json(rows)}};
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  for (const CheckRow& r : rows)
    if (!r.pass)
      std::cerr << "FAIL " << r.name << ": " << format_double(r.value)
                << " > " << format_double(r.threshold) << "\n";
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral toolkit for the curl and grad-div operators on a ball: exact "
      "spectra, orthonormal eigenbases, Helmholtz-Weyl projection, diagonal "
      "operator calculus, verification suites, and field-line tracing"};
  app.require_subcommand(1);

  double radius = 1.0;
  app.add_option("--radius", radius, "Ball radius R")->capture_default_str();

  // --- eigs
  auto* eigs = app.add_subcommand("eigs", "Eigenvalue table (CSV)");
  std::string eigs_op = "curl";
  int nmax = 4, mmax = 4;
  std::string out_path;
  std::string format = "csv";
  eigs->add_option("--operator", eigs_op, "curl | graddiv")
      ->capture_default_str();
  eigs->add_option("--nmax", nmax, "max degree n")->capture_default_str();
  eigs->add_option("--mmax", mmax, "max radial index m")->capture_default_str();
  eigs->add_option("--out", out_path, "output path (default stdout)");
  eigs->add_option("--format", format, "csv | json")->capture_default_str();

  // --- zeros
  auto* zeros = app.add_subcommand("zeros", "Bessel zero table (CSV)");
  std::string zeros_kind = "rho";
  zeros->add_option("--kind", zeros_kind, "rho (psi zeros) | alpha (psi' zeros)")
      ->capture_default_str();
  zeros->add_option("--nmax", nmax, "max order n")->capture_default_str();
  zeros->add_option("--mmax", mmax, "max index m")->capture_default_str();
  zeros->add_option("--out", out_path, "output path (default stdout)");
  zeros->add_option("--format", format, "csv | json")->capture_default_str();

  // --- field
  auto* field_cmd = app.add_subcommand("field", "Sample one eigenfield on a lattice (CSV)");
  std::string index_spec = "curl:1,1,0,+";
  int lattice = 21;
  field_cmd->add_option("--index", index_spec, "op:n,m,k[,sign]")
      ->capture_default_str();
  field_cmd->add_option("--grid", lattice, "points per axis of the cube lattice")
      ->capture_default_str();
  field_cmd->add_option("--out", out_path, "output path (default stdout)");
  field_cmd->add_option("--format", format, "csv | json")
      ->capture_default_str();

  // --- verify
  auto* verify = app.add_subcommand("verify", "Numerical verification suites (JSON report)");
  std::string suite = "all";
  std::uint64_t seed = 20240901;
  double sabotage = 1.0;
  verify->add_option("--suite", suite, "eigen | basis | operators | all")
      ->capture_default_str();
  verify->add_option("--nmax", nmax, "max degree n")->capture_default_str();
  verify->add_option("--mmax", mmax, "max radial index m")->capture_default_str();
  verify->add_option("--seed", seed, "RNG seed for sample points")
      ->capture_default_str();
  verify
      ->add_option("--sabotage", sabotage,
                   "fault injection: scale eigenvalues by this factor before "
                   "checking (CI hook)")
      ->capture_default_str();
  verify->add_option("--out", out_path, "report path (default stdout)");

  // --- project
  auto* project = app.add_subcommand(
      "project", "Helmholtz-Weyl projection of a test field (coefficients JSON)");
  std::string input_spec = "composite";
  int trunc_n = 4, trunc_m = 4;
  project
      ->add_option("--input", input_spec,
                   "rigid_rotation | radial_gradient | grad_x2 | composite | "
                   "eigen:<index>")
      ->capture_default_str();
  project->add_option("--trunc", trunc_n, "truncation n_max = m_max")
      ->capture_default_str();
  project->add_option("--out", out_path, "output path (default stdout)");
  std::string project_format = "json";
  project->add_option("--format", project_format,
                      "json (report) | csv (coefficient table only)")
      ->capture_default_str();

  // --- solve
  auto* solve = app.add_subcommand("solve", "Solve (grad div)^{2k} u = v or rot^{2m} u = v");
  std::string equation = "graddiv_power";
  int power = 1;
  std::string rhs_spec;
  solve->add_option("--equation", equation, "graddiv_power | curl_power")
      ->capture_default_str();
  solve->add_option("--power", power, "k (resp. m) >= 1")->capture_default_str();
  solve
      ->add_option("--rhs", rhs_spec,
                   "basis:<index> for a unit basis coefficient, or a "
                   "coefficients JSON file")
      ->required();
  solve->add_option("--trunc", trunc_n, "truncation n_max = m_max")
      ->capture_default_str();
  solve->add_option("--out", out_path, "output path (default stdout)");

  // --- trace
  auto* trace_cmd = app.add_subcommand("trace", "Field-line tracing (CSV polylines + diagnostics)");
  std::vector<std::string> seed_points;
  double step = 1e-3;
  int max_steps = 10000;
  std::string diag_path;
  trace_cmd->add_option("--seed", seed_points, "seed point x,y,z (repeatable)")
      ->required();
  trace_cmd->add_option("--step", step, "arc-length step")->capture_default_str();
  trace_cmd->add_option("--max-steps", max_steps, "step budget per trace")
      ->capture_default_str();
  trace_cmd->add_option("--index", index_spec, "op:n,m,k[,sign]")
      ->capture_default_str();
  trace_cmd->add_option("--out", out_path, "polyline CSV path (default stdout)");
  trace_cmd->add_option("--report", diag_path,
                        "diagnostics JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const BallDomain domain{radius};
  try {
    auto emit = [&](const std::string& text) {
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
    };

    if (format != "csv" && format != "json")
      throw CLI::ValidationError("--format must be csv or json");
    const bool as_json = format == "json";

    if (*eigs) {
      const auto indices =
          enumerate_indices(parse_operator(eigs_op), nmax, mmax, domain);
      emit(as_json ? eigs_json(indices, domain) : eigs_csv(indices, domain));
    } else if (*zeros) {
      if (zeros_kind != "rho" && zeros_kind != "alpha")
        throw CLI::ValidationError("--kind must be rho or alpha");
      const ZeroTable::Kind kind = zeros_kind == "rho"
                                       ? ZeroTable::Kind::function_zero
                                       : ZeroTable::Kind::derivative_zero;
      emit(as_json ? zero_table_json(kind, nmax, mmax)
                   : zero_table_csv(kind, nmax, mmax));
    } else if (*field_cmd) {
      const MultiIndex idx = parse_index(index_spec);
      const EigenRecord rec =
          normalize_radial(make_record(idx, domain), domain);
      std::vector<FieldSample> samples;
      const auto f = cartesian_field(rec, domain);
      for (int i = 0; i < lattice; ++i)
        for (int j = 0; j < lattice; ++j)
          for (int l = 0; l < lattice; ++l) {
            const auto coord = [&](int t) {
              return lattice == 1 ? 0.0
                                  : radius * (2.0 * t / (lattice - 1.0) - 1.0);
            };
            const Vec3 x{coord(i), coord(j), coord(l)};
            if (x.norm() <= radius) samples.push_back({x, f(x)});
          }
      emit(as_json ? field_json(samples) : field_csv(samples));
    } else if (*verify) {
      return run_verify(suite, radius, nmax, mmax, seed, sabotage, out_path);
    } else if (*project) {
      const Truncation trunc{trunc_n, trunc_n};
      const auto basis = std::make_shared<BasisSet>(trunc, domain);
      const QuadratureGrid grid(domain);
      const VectorField f = make_test_field(input_spec, domain);
      const SpectralCoefficients c = analyze(f, *basis, grid);
      if (project_format == "csv") {
        emit(coefficients_csv(c));
      } else if (project_format == "json") {
        const double recon = reconstruction_error(f, c, *basis, grid);
        const double total = l2_norm(f, grid);
        json doc = json::parse(coefficients_json(c));
        doc["input"] = input_spec;
        doc["l2_input_norm"] = total;
        doc["l2_reconstruction_error"] = recon;
        doc["potential_energy_fraction"] = c.a_norm2() / (total * total);
        doc["vortex_energy_fraction"] = c.b_norm2() / (total * total);
        emit(doc.dump(2) + "\n");
      } else {
        throw CLI::ValidationError("--format must be json or csv");
      }
    } else if (*solve) {
      const Truncation trunc{trunc_n, trunc_n};
      SpectralCoefficients rhs = zero_coefficients(trunc, domain);
      if (rhs_spec.rfind("basis:", 0) == 0) {
        const MultiIndex idx = parse_index(rhs_spec.substr(6));
        bool placed = false;
        auto& indices = idx.op == OperatorKind::curl ? rhs.b_indices
                                                     : rhs.a_indices;
        auto& values = idx.op == OperatorKind::curl ? rhs.b : rhs.a;
        for (size_t i = 0; i < indices.size(); ++i)
          if (indices[i] == idx) {
            values[i] = 1.0;
            placed = true;
          }
        if (!placed)
          throw IndexError("solve: rhs index outside the truncation");
      } else {
        std::ifstream in(rhs_spec);
        if (!in) throw std::runtime_error("cannot read rhs file: " + rhs_spec);
        std::stringstream buf;
        buf << in.rdbuf();
        rhs = coefficients_from_json(buf.str());
      }
      SolveReport rep = equation == "curl_power"
                            ? solve_curl_power(rhs, power)
                            : solve_graddiv_power(rhs, power);
      json doc = json::parse(coefficients_json(rep.solution));
      doc["equation"] = equation;
      doc["power"] = power;
      doc["dual_norm"] = rep.rhs_dual_norm.value;
      doc["dual_norm_order"] = rep.rhs_dual_norm.order;
      doc["roundtrip_residual"] = rep.roundtrip_residual;
      emit(doc.dump(2) + "\n");
      if (rep.roundtrip_residual > 1e-12) return kExitVerifyFailed;
    } else if (*trace_cmd) {
      TraceConfig cfg;
      cfg.step = step;
      cfg.max_steps = max_steps;
      cfg.index = parse_index(index_spec);
      for (const std::string& s : seed_points)
        cfg.seeds.push_back(parse_triple(s));
      const std::vector<Trace> traces = trace_field_lines(cfg, domain);
      emit(traces_csv(traces));
      const std::string diag = trace_diagnostics_json(traces, cfg);
      if (diag_path.empty())
        std::cout << diag;
      else
        write_file(diag_path, diag);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SubspaceError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IndexError& e) {
    std::cerr << "index error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const KindError& e) {
    std::cerr << "kind error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string what = e.what();
    return what.find("cannot") != std::string::npos ||
                   what.find("write failed") != std::string::npos
               ? kExitIo
               : kExitVerifyFailed;
  }
  return kExitOk;
}
