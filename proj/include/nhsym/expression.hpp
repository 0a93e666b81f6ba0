#pragma once

#include "nhsym/common.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nhsym::expr {

// Minimal arithmetic expression over the evaluation point (s, x).
// Variables: s, x0..x15, normx (= Euclidean norm of x).
// Functions: sin cos tan exp log sqrt abs atan, min(a,b) max(a,b) pow(a,b).
// Operators: + - * / ^ and unary minus; ^ is right-associative.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

class Expression {
  public:
    Expression() = default;

    // Throws ParseError with the offending position on malformed input or on
    // references to coordinates beyond `dim`.
    static Expression parse(const std::string& text, int dim);

    double eval(double s, const Vector& x) const;

    // The verbatim source text; serialization preserves it so parse/serialize
    // round trips are the identity.
    const std::string& source() const { return source_; }

    bool uses_state() const { return uses_state_; }
    bool uses_time() const { return uses_time_; }
    bool empty() const { return root_ == nullptr; }

  private:
    std::string source_;
    NodePtr root_;
    bool uses_state_ = false;
    bool uses_time_ = false;
};

}  // namespace nhsym::expr
