#include "bernlab/gauss_rules.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>

namespace bernlab {

namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

QuadRule make_rule(const gsl_integration_fixed_type* type, int n, double a, double b,
                   double alpha, double beta) {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
  if (n < 1) throw ParameterError("quadrature rule needs at least one node");
  if (!(b > a)) throw ParameterError("quadrature interval is empty");
  std::unique_ptr<gsl_integration_fixed_workspace, WorkspaceDeleter> ws(
      gsl_integration_fixed_alloc(type, static_cast<std::size_t>(n), a, b, alpha, beta));
  if (!ws) throw NumericalError("gauss rule construction failed");
  QuadRule rule;
  rule.x.assign(gsl_integration_fixed_nodes(ws.get()),
                gsl_integration_fixed_nodes(ws.get()) + n);
  rule.w.assign(gsl_integration_fixed_weights(ws.get()),
                gsl_integration_fixed_weights(ws.get()) + n);
  return rule;
}

}  // namespace

QuadRule gauss_legendre(int n, double a, double b) {
  return make_rule(gsl_integration_fixed_legendre, n, a, b, 0.0, 0.0);
}

QuadRule gauss_jacobi(int n, double a, double b, double alpha, double beta) {
  if (alpha <= -1.0 || beta <= -1.0)
    throw ParameterError("gauss-jacobi exponents must be > -1");
  return make_rule(gsl_integration_fixed_jacobi, n, a, b, alpha, beta);
}

}  // namespace bernlab
