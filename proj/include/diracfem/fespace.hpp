#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "diracfem/mesh.hpp"

namespace diracfem {

/// Lagrange basis of degree k (1..4) on the reference triangle, with nodes on
/// the equispaced lattice. Local ordering: the three vertices, then the edge
/// nodes (edge v0v1, v1v2, v2v0, each walked from its first vertex), then the
/// interior nodes in a fixed lexicographic order.
class ReferenceBasis {
  public:
    explicit ReferenceBasis(int order);

    int order() const { return order_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    /// Integer lattice triple (a, b, c), a + b + c = order, per local node.
    const std::vector<std::array<int, 3>>& nodes() const { return nodes_; }
    /// Barycentric coordinates of a local node.
    std::array<double, 3> node_bary(int local) const;

    /// Cardinal basis values at barycentric coordinates.
    void eval(const std::array<double, 3>& bary, std::span<double> values) const;
    /// Derivatives with respect to the three barycentric coordinates.
    void eval_grad(const std::array<double, 3>& bary,
                   std::span<std::array<double, 3>> grads) const;

  private:
    int order_;
    std::vector<std::array<int, 3>> nodes_;
};

/// Continuous piecewise-polynomial space on a mesh. Global dof order:
/// vertex dofs, then (k-1) dofs per mesh edge (walked from the lower to the
/// higher endpoint index), then the per-element interior dofs.
///
/// Holds a pointer to the mesh it was built on: the mesh must outlive the
/// space (do not pass a temporary to build_space).
struct FeSpace {
    const Mesh* mesh = nullptr;
    int order = 0;
    int n_dofs = 0;
    std::vector<Point2> dof_coords;
    std::vector<int> element_dofs;  // flattened, stride dofs_per_element()
    std::vector<int> boundary_dofs;  // sorted ascending
    std::shared_ptr<const ReferenceBasis> basis_ptr;

    int dofs_per_element() const { return basis_ptr->size(); }
    std::span<const int> dofs_of(int t) const {
        const int stride = dofs_per_element();
        return {element_dofs.data() + static_cast<size_t>(t) * stride,
                static_cast<size_t>(stride)};
    }
    const ReferenceBasis& basis() const { return *basis_ptr; }
};

FeSpace build_space(const Mesh& mesh, int order);

/// Constant barycentric gradients and area of an element.
struct ElementGeometry {
    std::array<Point2, 3> grad_lambda;
    double area = 0.0;
};

ElementGeometry element_geometry(const Mesh& mesh, int t);

/// Physical position of a barycentric point inside an element.
Point2 map_to_physical(const Mesh& mesh, int t, const std::array<double, 3>& bary);

/// Point evaluation of an FE function (locates the element first).
double eval_fe(const FeSpace& space, std::span<const double> coeffs, Point2 p);
Point2 eval_fe_gradient(const FeSpace& space, std::span<const double> coeffs, Point2 p);

}  // namespace diracfem
