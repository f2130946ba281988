#include "builders.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace ermat {

namespace {

void require_order(std::size_t n, std::size_t cap) {
  if (n > cap) {
    fail(ErrorCode::Capacity, "matrix order " + std::to_string(n) +
                                  " exceeds the configured cap of " +
                                  std::to_string(cap));
  }
}

[[noreturn]] void entry_error(const char* matrix, std::size_t i, std::size_t j) {
  fail(ErrorCode::Domain, std::string("non-finite entry of ") + matrix +
                              " at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
}

double eval_checked(const Kernel& kernel, double x, const char* matrix,
                    std::size_t i, std::size_t j) {
  try {
    return kernel.evaluate(x);
  } catch (const Error& e) {
    fail(ErrorCode::Domain, std::string(matrix) + " entry (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                "): " + e.what());
  }
}

// Off-diagonal of M. D reuses this expression verbatim so that when all
// z_i vanish (sphere data) the two matrices agree bit for bit.
inline double linearized_offdiag(double f2, double df2, double g) {
  return f2 - 2.0 * df2 * g;
}

// f'(2) s + f''(2)/2 s^2 + f'''(2)/6 s^3, arranged so that poly(0) == 0.0
// exactly whatever the coefficients.
inline double taylor_poly(double df2, double d2f2, double d3f2, double s) {
  return s * (df2 + s * (0.5 * d2f2 + s * (d3f2 / 6.0)));
}

}  // namespace

std::vector<double> column_norms_sq(const DataMatrix& x) {
  std::vector<double> norms(x.n());
  for (std::size_t i = 0; i < x.n(); ++i) norms[i] = norm_sq(x.col(i));
  return norms;
}

SymmetricMatrix pairwise_sq_dists(const DataMatrix& x, std::size_t order_cap) {
  const std::size_t n = x.n();
  require_order(n, order_cap);
  SymmetricMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = x.col(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto cj = x.col(j);
      double s = 0.0;
      for (std::size_t k = 0; k < ci.size(); ++k) {
        const double diff = ci[k] - cj[k];
        s += diff * diff;
      }
      d.set(i, j, s);
    }
  }
  return d;
}

SymmetricMatrix apply_kernel_to_dists(const SymmetricMatrix& dists,
                                      const Kernel& kernel) {
  const std::size_t n = dists.order();
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, kernel.f0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = eval_checked(kernel, dists(i, j), "A", i, j);
      if (!std::isfinite(v)) entry_error("A", i, j);
      a.set(i, j, v);
    }
  }
  return a;
}

SymmetricMatrix build_euclidean(const DataMatrix& x, const Kernel& kernel,
                                std::size_t order_cap) {
  return apply_kernel_to_dists(pairwise_sq_dists(x, order_cap), kernel);
}

SymmetricMatrix build_gram(const DataMatrix& x, std::size_t order_cap) {
  const std::size_t n = x.n();
  require_order(n, order_cap);
  SymmetricMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g.set(i, j, dot(x.col(i), x.col(j)));
    }
  }
  return g;
}

SymmetricMatrix build_linearized_from_gram(const SymmetricMatrix& gram,
                                           const Kernel& kernel) {
  const std::size_t n = gram.order();
  const double c0 = kernel.f0 - kernel.f2 + 2.0 * kernel.df2;
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, c0 + linearized_offdiag(kernel.f2, kernel.df2, gram(i, i)));
    for (std::size_t j = i + 1; j < n; ++j) {
      m.set(i, j, linearized_offdiag(kernel.f2, kernel.df2, gram(i, j)));
    }
  }
  return m;
}

SymmetricMatrix build_linearized(const DataMatrix& x, const Kernel& kernel,
                                 std::size_t order_cap) {
  return build_linearized_from_gram(build_gram(x, order_cap), kernel);
}

ProofChain build_proof_chain_from_gram(const SymmetricMatrix& gram,
                                       const std::vector<double>& norms_sq,
                                       const Kernel& kernel) {
  if (kernel.smoothness_order < 3) {
    fail(ErrorCode::Unsupported,
         "proof chain needs a kernel with derivatives up to order 3 at 2");
  }
  const std::size_t n = gram.order();
  ProofChain chain{std::nullopt, SymmetricMatrix(n), SymmetricMatrix(n),
                   SymmetricMatrix(n)};
  if (kernel.has_derivative()) chain.b.emplace(n);

  const SymmetricMatrix m = build_linearized_from_gram(gram, kernel);

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = norms_sq[i] - 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    if (chain.b) chain.b->set(i, i, kernel.f0);
    chain.c.set(i, i, kernel.f0);
    chain.d.set(i, i, kernel.f0);
    // E has no special diagonal: E_ij = M_ij + sum c_kl z_i^k z_j^l
    // everywhere, which on the diagonal is the one-variable polynomial
    // at 2 z_i.
    chain.e.set(i, i,
                m(i, i) + taylor_poly(kernel.df2, kernel.d2f2, kernel.d3f2,
                                      2.0 * z[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double g = gram(i, j);
      const double s = norms_sq[i] + norms_sq[j];  // ||X_i||^2 + ||X_j||^2
      const double s2 = z[i] + z[j];               // s - 2 without cancellation

      if (chain.b) {
        const double fb = eval_checked(kernel, s, "B", i, j);
        const double dfb = kernel.derivative(s);
        const double vb = fb - 2.0 * dfb * g;
        if (!std::isfinite(vb)) entry_error("B", i, j);
        chain.b->set(i, j, vb);
      }

      const double vc =
          eval_checked(kernel, s, "C", i, j) - 2.0 * kernel.df2 * g;
      if (!std::isfinite(vc)) entry_error("C", i, j);
      chain.c.set(i, j, vc);

      const double vd =
          linearized_offdiag(kernel.f2, kernel.df2, g) +
          taylor_poly(kernel.df2, kernel.d2f2, kernel.d3f2, s2);
      if (!std::isfinite(vd)) entry_error("D", i, j);
      chain.d.set(i, j, vd);
      chain.e.set(i, j, vd);  // D and E agree off the diagonal, bit for bit
    }
  }
  return chain;
}

ProofChain build_proof_chain(const DataMatrix& x, const Kernel& kernel,
                             std::size_t order_cap) {
  require_order(x.n(), order_cap);
  return build_proof_chain_from_gram(build_gram(x, order_cap),
                                     column_norms_sq(x), kernel);
}

NormDeviations norm_deviations(const DataMatrix& x) {
  NormDeviations dev;
  dev.z.resize(x.n());
  for (std::size_t i = 0; i < x.n(); ++i) dev.z[i] = norm_sq(x.col(i)) - 1.0;
  return dev;
}

EventEResult check_event_from_dists(const SymmetricMatrix& dists,
                                    const std::vector<double>& norms_sq,
                                    double epsilon) {
  if (std::isnan(epsilon) || epsilon < 0.0) {
    fail(ErrorCode::InvalidArgument, "event threshold epsilon must be >= 0");
  }
  EventEResult r;
  r.epsilon = epsilon;
  const std::size_t n = dists.order();
  for (std::size_t i = 0; i < n; ++i) {
    r.max_norm_dev = std::max(r.max_norm_dev, std::fabs(norms_sq[i] - 1.0));
    for (std::size_t j = i + 1; j < n; ++j) {
      r.max_pair_dev = std::max(r.max_pair_dev, std::fabs(dists(i, j) - 2.0));
    }
  }
  r.holds = std::max(r.max_pair_dev, r.max_norm_dev) <= epsilon;
  return r;
}

EventEResult check_event(const DataMatrix& x, double epsilon) {
  return check_event_from_dists(pairwise_sq_dists(x, x.n()),
                                column_norms_sq(x), epsilon);
}

}  // namespace ermat
