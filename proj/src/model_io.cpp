#include "nhsym/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nhsym {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError("model spec error at " + path + ": " + what);
}

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

const json& require_key(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing required key");
    return j.at(key);
}

std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) out.push_back(require_number(j[i], path));
    return out;
}

// ---- coefficient fields ----

CoefficientField parse_field(const json& j, FieldShape shape, int dim, const std::string& path) {
    if (j.is_number()) {
        // Shorthand: a bare number is a constant field (diagonal for matrices).
        const double v = j.get<double>();
        const int n = shape == FieldShape::Scalar ? 1 : (shape == FieldShape::Vector ? dim : dim * dim);
        std::vector<double> values(n, 0.0);
        if (shape == FieldShape::Matrix)
            for (int i = 0; i < dim; ++i) values[i * dim + i] = v;
        else
            std::fill(values.begin(), values.end(), v);
        return CoefficientField::constant(shape, dim, std::move(values));
    }
    const std::string kind = require_string(require_key(j, "kind", path), path + ".kind");
    if (kind == "constant") {
        return CoefficientField::constant(
            shape, dim, number_list(require_key(j, "values", path), path + ".values"));
    }
    if (kind == "time-polynomial") {
        const json& c = require_key(j, "coefficients", path);
        if (!c.is_array()) fail(path + ".coefficients", "expected an array of arrays");
        std::vector<std::vector<double>> coeffs;
        for (size_t i = 0; i < c.size(); ++i)
            coeffs.push_back(number_list(c[i], path + ".coefficients[" + std::to_string(i) + "]"));
        return CoefficientField::time_polynomial(shape, dim, std::move(coeffs));
    }
    if (kind == "tabulated-grid") {
        TabulatedGrid grid;
        const json& axes = require_key(j, "axes", path);
        if (!axes.is_array()) fail(path + ".axes", "expected an array");
        for (size_t i = 0; i < axes.size(); ++i) {
            const std::string apath = path + ".axes[" + std::to_string(i) + "]";
            TabulatedGrid::Axis ax;
            ax.name = require_string(require_key(axes[i], "name", apath), apath + ".name");
            ax.knots = number_list(require_key(axes[i], "knots", apath), apath + ".knots");
            grid.axes.push_back(std::move(ax));
        }
        const json& values = require_key(j, "values", path);
        if (!values.is_array()) fail(path + ".values", "expected an array of arrays");
        for (size_t i = 0; i < values.size(); ++i)
            grid.values.push_back(number_list(values[i], path + ".values[" + std::to_string(i) + "]"));
        return CoefficientField::tabulated(shape, dim, std::move(grid));
    }
    if (kind == "expression") {
        const json& e = require_key(j, "entries", path);
        if (!e.is_array()) fail(path + ".entries", "expected an array of strings");
        std::vector<std::string> entries;
        for (size_t i = 0; i < e.size(); ++i)
            entries.push_back(require_string(e[i], path + ".entries[" + std::to_string(i) + "]"));
        return CoefficientField::expression(shape, dim, std::move(entries));
    }
    fail(path + ".kind", "unknown field kind '" + kind + "'");
}

json field_to_json(const CoefficientField& f) {
    json j;
    switch (f.kind()) {
        case FieldKind::Constant:
            j["kind"] = "constant";
            j["values"] = f.constant_values();
            break;
        case FieldKind::TimePolynomial:
            j["kind"] = "time-polynomial";
            j["coefficients"] = f.polynomial_coefficients();
            break;
        case FieldKind::TabulatedGrid: {
            j["kind"] = "tabulated-grid";
            json axes = json::array();
            for (const auto& ax : f.grid().axes) axes.push_back({{"name", ax.name}, {"knots", ax.knots}});
            j["axes"] = std::move(axes);
            j["values"] = f.grid().values;
            break;
        }
        case FieldKind::ExpressionTree:
            j["kind"] = "expression";
            j["entries"] = f.expression_sources();
            break;
    }
    return j;
}

// ---- jump kernels ----

JumpKernelSpec parse_jumps(const json& j, int dim, const std::string& path) {
    JumpKernelSpec spec;
    if (j.is_null()) return spec;
    const std::string family = require_string(require_key(j, "family", path), path + ".family");
    if (family == "none") {
        spec.family = JumpFamily::None;
        return spec;
    }
    if (family == "compound-poisson") {
        spec.family = JumpFamily::CompoundPoisson;
        spec.intensity =
            parse_field(require_key(j, "intensity", path), FieldShape::Scalar, dim, path + ".intensity");
        const json& law = require_key(j, "law", path);
        const std::string lpath = path + ".law";
        const std::string kind = require_string(require_key(law, "kind", lpath), lpath + ".kind");
        if (kind == "gaussian") {
            spec.law.kind = JumpLawKind::Gaussian;
            spec.law.mean = require_number(require_key(law, "mean", lpath), lpath + ".mean");
            spec.law.sigma = require_number(require_key(law, "sigma", lpath), lpath + ".sigma");
        } else if (kind == "two-point") {
            spec.law.kind = JumpLawKind::TwoPoint;
            spec.law.size = require_number(require_key(law, "size", lpath), lpath + ".size");
        } else if (kind == "two-sided-exponential") {
            spec.law.kind = JumpLawKind::TwoSidedExponential;
            spec.law.rate = require_number(require_key(law, "rate", lpath), lpath + ".rate");
        } else {
            fail(lpath + ".kind", "unknown jump law '" + kind + "'");
        }
        spec.law.validate();
        return spec;
    }
    if (family == "symmetric-alpha-stable") {
        spec.family = JumpFamily::SymmetricAlphaStable;
        spec.alpha = require_number(require_key(j, "alpha", path), path + ".alpha");
        if (!(spec.alpha > 0.0 && spec.alpha < 2.0)) fail(path + ".alpha", "alpha outside (0,2)");
        spec.scale =
            parse_field(require_key(j, "scale", path), FieldShape::Scalar, dim, path + ".scale");
        return spec;
    }
    fail(path + ".family", "unknown jump family '" + family + "'");
}

json jumps_to_json(const JumpKernelSpec& spec) {
    json j;
    switch (spec.family) {
        case JumpFamily::None:
            j["family"] = "none";
            break;
        case JumpFamily::CompoundPoisson: {
            j["family"] = "compound-poisson";
            j["intensity"] = field_to_json(spec.intensity);
            json law;
            switch (spec.law.kind) {
                case JumpLawKind::Gaussian:
                    law["kind"] = "gaussian";
                    law["mean"] = spec.law.mean;
                    law["sigma"] = spec.law.sigma;
                    break;
                case JumpLawKind::TwoPoint:
                    law["kind"] = "two-point";
                    law["size"] = spec.law.size;
                    break;
                case JumpLawKind::TwoSidedExponential:
                    law["kind"] = "two-sided-exponential";
                    law["rate"] = spec.law.rate;
                    break;
            }
            j["law"] = std::move(law);
            break;
        }
        case JumpFamily::SymmetricAlphaStable:
            j["family"] = "symmetric-alpha-stable";
            j["alpha"] = spec.alpha;
            j["scale"] = field_to_json(spec.scale);
            break;
    }
    return j;
}

// ---- truncation ----

TruncationSpec parse_truncation(const json& j, const std::string& path) {
    TruncationSpec spec;
    if (j.is_null()) return spec;
    const std::string shape = require_string(require_key(j, "shape", path), path + ".shape");
    if (shape == "piecewise-linear") spec.shape = TruncationShape::PiecewiseLinear;
    else if (shape == "smooth-bump") spec.shape = TruncationShape::SmoothBump;
    else if (shape == "zero") spec.shape = TruncationShape::Zero;
    else fail(path + ".shape", "unknown truncation shape '" + shape + "'");
    if (j.contains("inner-radius"))
        spec.inner_radius = require_number(j.at("inner-radius"), path + ".inner-radius");
    if (j.contains("outer-half-radius"))
        spec.outer_half_radius = require_number(j.at("outer-half-radius"), path + ".outer-half-radius");
    return spec;
}

json truncation_to_json(const TruncationSpec& spec) {
    json j;
    switch (spec.shape) {
        case TruncationShape::PiecewiseLinear: j["shape"] = "piecewise-linear"; break;
        case TruncationShape::SmoothBump: j["shape"] = "smooth-bump"; break;
        case TruncationShape::Zero: j["shape"] = "zero"; break;
    }
    j["inner-radius"] = spec.inner_radius;
    j["outer-half-radius"] = spec.outer_half_radius;
    return j;
}

}  // namespace

ProcessModel parse_model_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("model spec must be a JSON object");

    ProcessModel m;
    const json& dim = require_key(j, "dimension", "$");
    if (!dim.is_number_integer() || dim.get<int>() < 1)
        fail("$.dimension", "expected a positive integer");
    m.dim = dim.get<int>();

    if (j.contains("catalog") && !j.at("catalog").is_null()) {
        const std::string name = require_string(j.at("catalog"), "$.catalog");
        const auto tag = catalog_tag_from_name(name);
        if (!tag) fail("$.catalog", "unknown catalog tag '" + name + "'");
        m.tag = *tag;
    }

    if (j.contains("drift") && !j.at("drift").is_null())
        m.drift = parse_field(j.at("drift"), FieldShape::Vector, m.dim, "$.drift");
    else
        m.drift = CoefficientField::zero(FieldShape::Vector, m.dim);

    if (j.contains("diffusion") && !j.at("diffusion").is_null())
        m.diffusion = parse_field(j.at("diffusion"), FieldShape::Matrix, m.dim, "$.diffusion");
    else
        m.diffusion = CoefficientField::zero(FieldShape::Matrix, m.dim);

    m.jumps = parse_jumps(j.contains("jumps") ? j.at("jumps") : json(nullptr), m.dim, "$.jumps");
    m.truncation =
        parse_truncation(j.contains("truncation") ? j.at("truncation") : json(nullptr), "$.truncation");

    m.validate_structure();
    return m;
}

std::string serialize_model_spec(const ProcessModel& model) {
    if (model.is_lifted())
        throw ParseError("space-time lifted models are in-memory objects and not serializable");
    json j;
    j["dimension"] = model.dim;
    j["drift"] = field_to_json(model.drift);
    j["diffusion"] = field_to_json(model.diffusion);
    j["jumps"] = jumps_to_json(model.jumps);
    j["truncation"] = truncation_to_json(model.truncation);
    if (model.tag != CatalogTag::None) j["catalog"] = catalog_tag_name(model.tag);
    return j.dump(2) + "\n";
}

ProcessModel load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_spec(buffer.str());
}

}  // namespace nhsym
