#include "nhsym/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace nhsym {

namespace {

int shape_entries(FieldShape shape, int dim) {
    switch (shape) {
        case FieldShape::Scalar: return 1;
        case FieldShape::Vector: return dim;
        case FieldShape::Matrix: return dim * dim;
    }
    return 1;
}

void check_dim(int dim) {
    if (dim < 1) throw ParseError("coefficient field dimension must be >= 1");
}

}  // namespace

int CoefficientField::entry_count() const { return shape_entries(shape_, dim_); }

CoefficientField CoefficientField::constant(FieldShape shape, int dim,
                                            std::vector<double> values) {
    check_dim(dim);
    CoefficientField f;
    f.kind_ = FieldKind::Constant;
    f.shape_ = shape;
    f.dim_ = dim;
    if (static_cast<int>(values.size()) != f.entry_count())
        throw ParseError("constant field needs " + std::to_string(f.entry_count()) +
                         " values, got " + std::to_string(values.size()));
    f.constants_ = std::move(values);
    return f;
}

CoefficientField CoefficientField::zero(FieldShape shape, int dim) {
    return constant(shape, dim, std::vector<double>(shape_entries(shape, dim), 0.0));
}

CoefficientField CoefficientField::time_polynomial(FieldShape shape, int dim,
                                                   std::vector<std::vector<double>> coeffs) {
    check_dim(dim);
    CoefficientField f;
    f.kind_ = FieldKind::TimePolynomial;
    f.shape_ = shape;
    f.dim_ = dim;
    if (static_cast<int>(coeffs.size()) != f.entry_count())
        throw ParseError("time-polynomial field needs " + std::to_string(f.entry_count()) +
                         " coefficient lists, got " + std::to_string(coeffs.size()));
    for (const auto& c : coeffs)
        if (c.empty()) throw ParseError("time-polynomial entry has no coefficients");
    f.poly_ = std::move(coeffs);
    return f;
}

CoefficientField CoefficientField::tabulated(FieldShape shape, int dim, TabulatedGrid grid) {
    check_dim(dim);
    CoefficientField f;
    f.kind_ = FieldKind::TabulatedGrid;
    f.shape_ = shape;
    f.dim_ = dim;
    if (grid.axes.empty()) throw ParseError("tabulated-grid field needs at least one axis");
    size_t total = 1;
    for (const auto& ax : grid.axes) {
        if (ax.knots.size() < 2) throw ParseError("tabulated axis '" + ax.name + "' needs >= 2 knots");
        if (!std::is_sorted(ax.knots.begin(), ax.knots.end()) ||
            std::adjacent_find(ax.knots.begin(), ax.knots.end()) != ax.knots.end())
            throw ParseError("tabulated axis '" + ax.name + "' knots must be strictly increasing");
        if (ax.name != "s") {
            if (ax.name.size() < 2 || ax.name[0] != 'x')
                throw ParseError("tabulated axis name must be 's' or 'x<i>', got '" + ax.name + "'");
            const int coord = std::stoi(ax.name.substr(1));
            if (coord < 0 || coord >= dim)
                throw ParseError("tabulated axis '" + ax.name + "' out of range for dimension " +
                                 std::to_string(dim));
        }
        total *= ax.knots.size();
    }
    if (static_cast<int>(grid.values.size()) != f.entry_count())
        throw ParseError("tabulated-grid field needs " + std::to_string(f.entry_count()) +
                         " value tables, got " + std::to_string(grid.values.size()));
    for (const auto& v : grid.values)
        if (v.size() != total)
            throw ParseError("tabulated-grid table size mismatch: expected " +
                             std::to_string(total) + ", got " + std::to_string(v.size()));
    f.grid_ = std::move(grid);
    return f;
}

CoefficientField CoefficientField::expression(FieldShape shape, int dim,
                                              std::vector<std::string> entries) {
    check_dim(dim);
    CoefficientField f;
    f.kind_ = FieldKind::ExpressionTree;
    f.shape_ = shape;
    f.dim_ = dim;
    if (static_cast<int>(entries.size()) != f.entry_count())
        throw ParseError("expression field needs " + std::to_string(f.entry_count()) +
                         " entries, got " + std::to_string(entries.size()));
    f.exprs_.reserve(entries.size());
    for (const auto& src : entries) f.exprs_.push_back(expr::Expression::parse(src, dim));
    return f;
}

std::vector<std::string> CoefficientField::expression_sources() const {
    std::vector<std::string> out;
    out.reserve(exprs_.size());
    for (const auto& e : exprs_) out.push_back(e.source());
    return out;
}

double CoefficientField::eval_tabulated(int entry, double s, const Vector& x) const {
    const auto& axes = grid_.axes;
    const int n_axes = static_cast<int>(axes.size());
    // Locate the cell and barycentric weight along every axis.
    std::vector<int> lo(n_axes);
    std::vector<double> w(n_axes);
    for (int a = 0; a < n_axes; ++a) {
        const auto& knots = axes[a].knots;
        const double q = axes[a].name == "s" ? s : x[std::stoi(axes[a].name.substr(1))];
        if (q < knots.front() || q > knots.back())
            throw NumericalError("tabulated-grid evaluation out of domain: axis '" + axes[a].name +
                                 "' value " + std::to_string(q) + " outside [" +
                                 std::to_string(knots.front()) + ", " +
                                 std::to_string(knots.back()) + "]");
        auto it = std::upper_bound(knots.begin(), knots.end(), q);
        int hi = static_cast<int>(it - knots.begin());
        hi = std::clamp(hi, 1, static_cast<int>(knots.size()) - 1);
        lo[a] = hi - 1;
        w[a] = (q - knots[lo[a]]) / (knots[hi] - knots[lo[a]]);
    }
    // Multilinear blend over 2^n_axes corners.
    const auto& table = grid_.values[entry];
    double acc = 0.0;
    for (int corner = 0; corner < (1 << n_axes); ++corner) {
        double weight = 1.0;
        size_t index = 0;
        for (int a = 0; a < n_axes; ++a) {
            const bool upper = (corner >> a) & 1;
            weight *= upper ? w[a] : (1.0 - w[a]);
            index = index * axes[a].knots.size() + (lo[a] + (upper ? 1 : 0));
        }
        acc += weight * table[index];
    }
    return acc;
}

double CoefficientField::eval_entry(int entry, double s, const Vector& x) const {
    switch (kind_) {
        case FieldKind::Constant:
            return constants_[entry];
        case FieldKind::TimePolynomial: {
            const auto& c = poly_[entry];
            double acc = 0.0;
            for (size_t k = c.size(); k-- > 0;) acc = acc * s + c[k];  // Horner
            return acc;
        }
        case FieldKind::TabulatedGrid:
            return eval_tabulated(entry, s, x);
        case FieldKind::ExpressionTree:
            return exprs_[entry].eval(s, x);
    }
    return 0.0;
}

double CoefficientField::eval_scalar(double s, const Vector& x) const {
    return eval_entry(0, s, x);
}

Vector CoefficientField::eval_vector(double s, const Vector& x) const {
    Vector v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = eval_entry(i, s, x);
    return v;
}

Matrix CoefficientField::eval_matrix(double s, const Vector& x) const {
    Matrix m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = eval_entry(i * dim_ + j, s, x);
    return m;
}

bool CoefficientField::state_dependent() const {
    switch (kind_) {
        case FieldKind::Constant:
        case FieldKind::TimePolynomial:
            return false;
        case FieldKind::TabulatedGrid:
            for (const auto& ax : grid_.axes)
                if (ax.name != "s") return true;
            return false;
        case FieldKind::ExpressionTree:
            for (const auto& e : exprs_)
                if (e.uses_state()) return true;
            return false;
    }
    return false;
}

bool CoefficientField::time_dependent() const {
    switch (kind_) {
        case FieldKind::Constant:
            return false;
        case FieldKind::TimePolynomial:
            for (const auto& c : poly_)
                if (c.size() > 1) return true;
            return false;
        case FieldKind::TabulatedGrid:
            for (const auto& ax : grid_.axes)
                if (ax.name == "s") return true;
            return false;
        case FieldKind::ExpressionTree:
            for (const auto& e : exprs_)
                if (e.uses_time()) return true;
            return false;
    }
    return false;
}

bool CoefficientField::is_zero() const {
    if (kind_ == FieldKind::Constant)
        return std::all_of(constants_.begin(), constants_.end(),
                           [](double v) { return v == 0.0; });
    if (kind_ == FieldKind::TimePolynomial) {
        for (const auto& c : poly_)
            for (double v : c)
                if (v != 0.0) return false;
        return true;
    }
    return false;
}

bool CoefficientField::operator==(const CoefficientField& other) const {
    if (kind_ != other.kind_ || shape_ != other.shape_ || dim_ != other.dim_) return false;
    switch (kind_) {
        case FieldKind::Constant:
            return constants_ == other.constants_;
        case FieldKind::TimePolynomial:
            return poly_ == other.poly_;
        case FieldKind::TabulatedGrid: {
            if (grid_.values != other.grid_.values) return false;
            if (grid_.axes.size() != other.grid_.axes.size()) return false;
            for (size_t i = 0; i < grid_.axes.size(); ++i)
                if (grid_.axes[i].name != other.grid_.axes[i].name ||
                    grid_.axes[i].knots != other.grid_.axes[i].knots)
                    return false;
            return true;
        }
        case FieldKind::ExpressionTree:
            return expression_sources() == other.expression_sources();
    }
    return false;
}

}  // namespace nhsym
