#pragma once

#include "pdp/cylinder.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pdp {

/// Scalar field on a tensor space-time grid over a Cylinder.
///
/// Nodes: nx per spatial axis (including both faces), nt time slices.
/// Storage is row-major with time slowest and the last spatial axis
/// fastest; spacing is dx = 2 radius / (nx-1), dt = time_length / (nt-1).
/// Fields are immutable in all library operations; mutation is only used
/// while filling values.
class GridField {
public:
    using PointFn = std::function<double(std::span<const double>, double)>;

    GridField(Cylinder domain, int nx, int nt);

    /// Evaluate f at every node.
    static GridField sample(const Cylinder& domain, int nx, int nt, const PointFn& f);

    int dim() const { return domain_.dim(); }
    int nx() const { return nx_; }
    int nt() const { return nt_; }
    double dx() const { return dx_; }
    double dt() const { return dt_; }
    const Cylinder& domain() const { return domain_; }

    std::size_t spatial_size() const { return spatial_size_; }
    std::size_t size() const { return values_.size(); }

    double value(std::size_t sp, int k) const { return values_[static_cast<std::size_t>(k) * spatial_size_ + sp]; }
    double& value(std::size_t sp, int k) { return values_[static_cast<std::size_t>(k) * spatial_size_ + sp]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    std::span<const double> slice(int k) const {
        return std::span<const double>(values_).subspan(static_cast<std::size_t>(k) * spatial_size_, spatial_size_);
    }

    /// Stride of one step along `axis` in the flat spatial index.
    std::size_t spatial_stride(int axis) const { return strides_[axis]; }
    int spatial_index(std::size_t sp, int axis) const {
        return static_cast<int>((sp / strides_[axis]) % static_cast<std::size_t>(nx_));
    }
    double coord(int axis, int i) const { return domain_.center()[axis] - domain_.radius() + i * dx_; }
    double time(int k) const { return domain_.t_lo() + k * dt_; }
    void point_at(std::size_t sp, std::span<double> x) const;

    bool all_finite() const;

private:
    Cylinder domain_;
    int nx_, nt_;
    double dx_, dt_;
    std::size_t spatial_size_;
    std::vector<std::size_t> strides_;
    std::vector<double> values_;
};

/// Index window of a sub-cylinder snapped onto a field's lattice.
/// The window is a square spatial box [i_lo, i_lo + count - 1] per axis
/// and the time slices [k_lo, k_lo + tcount - 1].
struct GridWindow {
    std::vector<int> i_lo;
    int count = 0;
    int k_lo = 0;
    int tcount = 0;
};

/// Snap Q onto f's lattice (largest window of nodes inside Q). Throws if
/// Q leaves fewer than two nodes per axis or the window is not square.
GridWindow snap_window(const GridField& f, const Cylinder& q);

/// Extract the sub-field over the snapped window of Q. The result's domain
/// is the exact extent of the selected nodes (a sub-cylinder of Q).
GridField restrict_to(const GridField& f, const Cylinder& q);

/// Discrete spatial gradient, one component field per axis. Central
/// differences at interior nodes, one-sided 3-point second-order stencils
/// on the spatial faces. No time differencing. Requires nx >= 3.
std::vector<GridField> gradient(const GridField& w);

/// Euclidean norm of the gradient vector at every node.
GridField gradient_norm(const std::vector<GridField>& grad);

/// Per-axis trapezoid weights: step/2 at the two ends, step inside.
std::vector<double> trapezoid_weights(int count, double step);

/// Tensor-product trapezoid weights over the spatial lattice.
std::vector<double> spatial_quadrature_weights(const GridField& f);

/// Trapezoid quadrature of one time slice over the field's spatial box.
double integrate_space(const GridField& f, int t_index);
double integrate_space(const GridField& f, int t_index, std::span<const double> weights);

/// Space-time trapezoid quadrature over the field's whole cylinder.
double integrate_spacetime(const GridField& f);

/// Nodewise combinations; grids must match exactly.
GridField operator+(const GridField& a, const GridField& b);
GridField operator-(const GridField& a, const GridField& b);
GridField operator*(double s, const GridField& a);

double max_abs(const GridField& f);

} // namespace pdp
