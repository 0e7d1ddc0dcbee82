#pragma once

// Node hierarchy behind FunctionSpec. Internal: included by function_spec.cpp
// (construction, math) and io.cpp (serialization).

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "stablelat/function_spec.hpp"
#include "stablelat/quadrature.hpp"
#include "stablelat/types.hpp"

namespace stablelat {
namespace detail {

using OptBound = std::optional<double>;

class Node {
  public:
    virtual ~Node() = default;

    virtual int dim() const = 0;
    virtual double eval(const double* x) const = 0;
    virtual bool smooth() const = 0;
    virtual bool structurally_zero() const { return false; }

    // d = 1 derivatives; only called when smooth() holds
    virtual double deriv(double x) const;
    virtual double deriv2(double x) const;

    /// Exact integral over an axis-aligned box.
    virtual double box_integral(const Box& box) const = 0;

    virtual void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const = 0;
    /// Points that must lie inside any integration window (seed the doubling).
    virtual void collect_features(int axis, std::vector<double>& out) const = 0;
    virtual std::pair<OptBound, OptBound> support(int axis) const = 0;
};

using NodePtr = std::shared_ptr<const Node>;

class IndicatorBoxNode final : public Node {
  public:
    IndicatorBoxNode(std::vector<double> lo, std::vector<double> hi);

    int dim() const override { return static_cast<int>(lo_.size()); }
    double eval(const double* x) const override;
    bool smooth() const override { return false; }
    double box_integral(const Box& box) const override;
    void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const override;
    void collect_features(int axis, std::vector<double>& out) const override;
    std::pair<OptBound, OptBound> support(int axis) const override;

    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }

  private:
    std::vector<double> lo_, hi_;
};

class GaussBumpNode final : public Node {
  public:
    GaussBumpNode(std::vector<double> center, double width);

    int dim() const override { return static_cast<int>(center_.size()); }
    double eval(const double* x) const override;
    bool smooth() const override { return true; }
    double deriv(double x) const override;
    double deriv2(double x) const override;
    double box_integral(const Box& box) const override;
    void collect_breakpoints(int, std::vector<quadrature::Breakpoint>&) const override {}
    void collect_features(int axis, std::vector<double>& out) const override;
    std::pair<OptBound, OptBound> support(int) const override { return {}; }

    const std::vector<double>& center() const { return center_; }
    double width() const { return width_; }

  private:
    std::vector<double> center_;
    double width_;
};

class PowerTailNode final : public Node {
  public:
    PowerTailNode(double delta, double cutoff);

    int dim() const override { return 1; }
    double eval(const double* x) const override;
    bool smooth() const override { return false; }
    double box_integral(const Box& box) const override;
    void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const override;
    void collect_features(int axis, std::vector<double>& out) const override;
    std::pair<OptBound, OptBound> support(int) const override { return {}; }

    double delta() const { return delta_; }
    double cutoff() const { return cutoff_; }

  private:
    double delta_, cutoff_;
};

class LfsmKernelNode final : public Node {
  public:
    LfsmKernelNode(double t, double H, double alpha, double a, double b);

    int dim() const override { return 1; }
    double eval(const double* x) const override;
    bool smooth() const override { return false; }
    bool structurally_zero() const override { return t_ == 0.0 || (a_ == 0.0 && b_ == 0.0); }
    double box_integral(const Box& box) const override;
    void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const override;
    void collect_features(int axis, std::vector<double>& out) const override;
    std::pair<OptBound, OptBound> support(int axis) const override;

    double t() const { return t_; }
    double H() const { return H_; }
    double alpha() const { return alpha_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double exponent() const { return gamma_; }

  private:
    double t_, H_, alpha_, a_, b_, gamma_;
};

class ZeroNode final : public Node {
  public:
    explicit ZeroNode(int d);

    int dim() const override { return dim_; }
    double eval(const double*) const override { return 0.0; }
    bool smooth() const override { return true; }
    bool structurally_zero() const override { return true; }
    double deriv(double) const override { return 0.0; }
    double deriv2(double) const override { return 0.0; }
    double box_integral(const Box&) const override { return 0.0; }
    void collect_breakpoints(int, std::vector<quadrature::Breakpoint>&) const override {}
    void collect_features(int, std::vector<double>&) const override {}
    std::pair<OptBound, OptBound> support(int) const override { return {{0.0}, {0.0}}; }

  private:
    int dim_;
};

class LinearCombinationNode final : public Node {
  public:
    explicit LinearCombinationNode(std::vector<std::pair<double, NodePtr>> terms, int dim_hint);

    int dim() const override { return dim_; }
    double eval(const double* x) const override;
    bool smooth() const override;
    bool structurally_zero() const override;
    double deriv(double x) const override;
    double deriv2(double x) const override;
    double box_integral(const Box& box) const override;
    void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const override;
    void collect_features(int axis, std::vector<double>& out) const override;
    std::pair<OptBound, OptBound> support(int axis) const override;

    const std::vector<std::pair<double, NodePtr>>& terms() const { return terms_; }

  private:
    std::vector<std::pair<double, NodePtr>> terms_;
    int dim_;
};

class ShiftNode final : public Node {
  public:
    ShiftNode(NodePtr inner, std::vector<double> offset);

    int dim() const override { return static_cast<int>(offset_.size()); }
    double eval(const double* x) const override;
    bool smooth() const override { return inner_->smooth(); }
    bool structurally_zero() const override { return inner_->structurally_zero(); }
    double deriv(double x) const override { return inner_->deriv(x - offset_[0]); }
    double deriv2(double x) const override { return inner_->deriv2(x - offset_[0]); }
    double box_integral(const Box& box) const override;
    void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const override;
    void collect_features(int axis, std::vector<double>& out) const override;
    std::pair<OptBound, OptBound> support(int axis) const override;

    const NodePtr& inner() const { return inner_; }
    const std::vector<double>& offset() const { return offset_; }

  private:
    NodePtr inner_;
    std::vector<double> offset_;
};

class ScaleNode final : public Node {
  public:
    ScaleNode(NodePtr inner, double factor);

    int dim() const override { return inner_->dim(); }
    double eval(const double* x) const override { return factor_ * inner_->eval(x); }
    bool smooth() const override { return inner_->smooth(); }
    bool structurally_zero() const override {
        return factor_ == 0.0 || inner_->structurally_zero();
    }
    double deriv(double x) const override { return factor_ * inner_->deriv(x); }
    double deriv2(double x) const override { return factor_ * inner_->deriv2(x); }
    double box_integral(const Box& box) const override {
        return factor_ * inner_->box_integral(box);
    }
    void collect_breakpoints(int axis, std::vector<quadrature::Breakpoint>& out) const override {
        inner_->collect_breakpoints(axis, out);
    }
    void collect_features(int axis, std::vector<double>& out) const override {
        inner_->collect_features(axis, out);
    }
    std::pair<OptBound, OptBound> support(int axis) const override {
        return inner_->support(axis);
    }

    const NodePtr& inner() const { return inner_; }
    double factor() const { return factor_; }

  private:
    NodePtr inner_;
    double factor_;
};

}  // namespace detail
}  // namespace stablelat
