#include <cmath>
#include <sstream>

#include "krl/errors.hpp"
#include "krl/instances.hpp"

namespace krl {
namespace {

std::string fmt_label(const char* kind, double p, const Grid& grid) {
    std::ostringstream os;
    os << kind << "(p=" << p << ", n=" << grid.n << ")";
    return os.str();
}

}  // namespace

MonotoneOperator build_matrix_operator(const Matrix& A, double eta) {
    if (A.rows() != A.cols() || A.rows() == 0) throw ConfigError("matrix operator needs a nonempty square matrix");
    for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < A.cols(); ++j) {
            if (!std::isfinite(A(i, j))) throw ConfigError("matrix operator: non-finite entry");
            if (A(i, j) < 0.0)
                throw NegativeEntry("matrix operator: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") = " + std::to_string(A(i, j)) + " is negative");
        }
    return MonotoneOperator::from_matrix("matrix(n=" + std::to_string(A.rows()) + ")",
                                         ConeSpec::orthant(A.rows(), eta), A);
}

MonotoneOperator build_inverse_operator(const PLaplaceSpec& spec, double eta) {
    spec.validate();
    const ConeSpec K = ConeSpec::discrete_interior(spec.grid.n, spec.grid.spacing(), eta);
    return MonotoneOperator(fmt_label("plaplace", spec.p, spec.grid), K, [spec](const Vector& f) -> Vector {
        GridFunction g{spec.grid, f.unaryExpr([p = spec.p](double s) { return phi(s, p); })};
        return plaplace_dirichlet_solve(spec, g).values;
    });
}

MonotoneOperator build_inverse_operator(const HardySobolevSpec& spec, double eta) {
    spec.validate();
    const ConeSpec K = ConeSpec::discrete_interior(spec.grid.n, spec.grid.spacing(), eta);
    Vector V(spec.grid.n);
    for (Index i = 0; i < spec.grid.n; ++i) V(i) = spec.weight(spec.grid.node(i));
    std::ostringstream label;
    label << "hardy_sobolev(p=" << spec.p << ", n_dim=" << spec.n_dim << ", mu=" << spec.mu << ", n=" << spec.grid.n
          << ")";
    return MonotoneOperator(label.str(), K, [spec, V](const Vector& f) -> Vector {
        GridFunction g{spec.grid, Vector(f.size())};
        for (Index i = 0; i < f.size(); ++i) g.values(i) = V(i) * phi(f(i), spec.p);
        return hardy_sobolev_dirichlet_solve(spec, g).values;
    });
}

MonotoneOperator build_inverse_operator(const PucciSpec& spec, double eta) {
    spec.validate();
    const ConeSpec K = ConeSpec::discrete_interior(spec.grid.n, spec.grid.spacing(), eta);
    std::ostringstream label;
    label << "pucci" << (spec.variant == PucciVariant::Plus ? "+" : "-") << "(" << spec.lambda_p << ", "
          << spec.big_lambda << ", n=" << spec.grid.n << ")";
    return MonotoneOperator(label.str(), K, [spec](const Vector& f) -> Vector {
        return pucci_dirichlet_solve(spec, GridFunction{spec.grid, f}).values;
    });
}

double pde_eigenvalue(double lambda0, double p) { return std::pow(lambda0, p - 1.0); }

}  // namespace krl
