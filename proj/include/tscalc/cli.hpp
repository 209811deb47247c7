#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tscalc/catalog.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

enum class OutFormat { Human, Json, Csv };

// Each command renders one record per unit of work (point, table row,
// identity sample) to `out` and returns the process exit code: 0 when no
// record carries an error and no gap exceeds its tolerance.

int cmd_scale(const TimeScale& ts, const std::string& scale_echo,
              const std::vector<double>& points, OutFormat fmt, std::ostream& out);

int cmd_diff(const TimeScale& ts, const std::string& scale_echo, const std::string& expr_text,
             const std::vector<double>& points, bool nabla, const std::string& method, double tol,
             bool parallel, OutFormat fmt, std::ostream& out);

// diff with every available path per point: catalog closed form (when the
// expression matches), engine quotient, and quadrature.
int cmd_oracle(const TimeScale& ts, const std::string& scale_echo, const std::string& expr_text,
               const std::vector<double>& points, double tol, bool parallel, OutFormat fmt,
               std::ostream& out);

int cmd_integrate(const TimeScale& ts, const std::string& scale_echo,
                  const std::string& expr_text, double a, double b, double max_step, double tol,
                  bool check_ftc, OutFormat fmt, std::ostream& out);

int cmd_table(const TimeScale& ts, const std::string& scale_echo,
              const std::vector<double>& points, const CatalogParams& params, double tol,
              bool parallel, OutFormat fmt, std::ostream& out);

int cmd_identity_check(const TimeScale& ts, const std::string& scale_echo, double a, double b,
                       double max_step, double tol, OutFormat fmt, std::ostream& out);

// Argument-vector entry point used by the tscalc binary (argv without the
// program name). Usage errors return 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tscalc
