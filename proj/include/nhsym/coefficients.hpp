#pragma once

#include "nhsym/common.hpp"
#include "nhsym/expression.hpp"

#include <string>
#include <vector>

namespace nhsym {

enum class FieldKind { Constant, TimePolynomial, TabulatedGrid, ExpressionTree };

// What a field evaluates to. Entry counts: scalar 1, vector d, matrix d*d
// (row-major).
enum class FieldShape { Scalar, Vector, Matrix };

// A tabulated coefficient over an axis-aligned grid in (s, x0, .., x{d-1}).
// Values are interpolated multilinearly; querying outside the grid is an
// error (extrapolation would break the continuity the evaluator relies on).
struct TabulatedGrid {
    struct Axis {
        std::string name;  // "s" or "x<i>"
        std::vector<double> knots;  // strictly increasing, >= 2 entries
    };
    std::vector<Axis> axes;
    // Flattened per-entry tables, row-major over the axes in order:
    // values[entry][i0*n1*..*n_{k-1} + ... + i_{k-1}].
    std::vector<std::vector<double>> values;
};

class CoefficientField {
  public:
    CoefficientField() = default;

    static CoefficientField constant(FieldShape shape, int dim, std::vector<double> values);
    // One coefficient list per entry; entry(s) = sum_k coeffs[k] * s^k.
    static CoefficientField time_polynomial(FieldShape shape, int dim,
                                            std::vector<std::vector<double>> coeffs);
    static CoefficientField tabulated(FieldShape shape, int dim, TabulatedGrid grid);
    static CoefficientField expression(FieldShape shape, int dim,
                                       std::vector<std::string> entries);

    static CoefficientField zero(FieldShape shape, int dim);

    double eval_scalar(double s, const Vector& x) const;
    Vector eval_vector(double s, const Vector& x) const;
    Matrix eval_matrix(double s, const Vector& x) const;

    FieldKind kind() const { return kind_; }
    FieldShape shape() const { return shape_; }
    int dim() const { return dim_; }
    int entry_count() const;

    bool state_dependent() const;
    bool time_dependent() const;
    bool is_zero() const;  // structurally zero (all constants 0)

    // Serialization payload accessors (model_io).
    const std::vector<double>& constant_values() const { return constants_; }
    const std::vector<std::vector<double>>& polynomial_coefficients() const { return poly_; }
    const TabulatedGrid& grid() const { return grid_; }
    std::vector<std::string> expression_sources() const;

    bool operator==(const CoefficientField& other) const;

  private:
    double eval_entry(int entry, double s, const Vector& x) const;
    double eval_tabulated(int entry, double s, const Vector& x) const;

    FieldKind kind_ = FieldKind::Constant;
    FieldShape shape_ = FieldShape::Scalar;
    int dim_ = 1;
    std::vector<double> constants_;
    std::vector<std::vector<double>> poly_;
    TabulatedGrid grid_;
    std::vector<expr::Expression> exprs_;
};

}  // namespace nhsym
