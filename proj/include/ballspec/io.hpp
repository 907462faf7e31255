#pragma once

// Deterministic CSV/JSON emitters: '.' decimal point, 17 significant digits,
// '\n' line ends, header rows; JSON reports carry a schema_version field.
// Byte-identical output for identical inputs.

#include <string>
#include <vector>

#include "ballspec/ballcalc.hpp"
#include "ballspec/core.hpp"
#include "ballspec/spectral.hpp"
#include "ballspec/specfun.hpp"
#include "ballspec/trace.hpp"

namespace ballspec {

inline constexpr int kSchemaVersion = 1;

/// "%.17g" with classic-locale decimal point.
std::string format_double(double v);

std::string eigs_csv(const std::vector<MultiIndex>& indices,
                     const BallDomain& domain);
std::string eigs_json(const std::vector<MultiIndex>& indices,
                      const BallDomain& domain);

struct FieldSample {
  Vec3 x;
  Vec3 u;
};
std::string field_csv(const std::vector<FieldSample>& samples);
std::string field_json(const std::vector<FieldSample>& samples);

std::string zero_table_csv(ZeroTable::Kind kind, int n_max, int m_max);
std::string zero_table_json(ZeroTable::Kind kind, int n_max, int m_max);

std::string coefficients_csv(const SpectralCoefficients& c);
std::string coefficients_json(const SpectralCoefficients& c);
/// Parses the JSON produced by coefficients_json.
SpectralCoefficients coefficients_from_json(const std::string& text);

std::string scale_norm_json(const ScaleNorm& norm);

std::string residual_report_json(const ResidualReport& rep);

std::string traces_csv(const std::vector<Trace>& traces);
std::string trace_diagnostics_json(const std::vector<Trace>& traces,
                                   const TraceConfig& config);

void write_file(const std::string& path, const std::string& content);

}  // namespace ballspec
