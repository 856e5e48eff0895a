#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "diracfem/exact.hpp"
#include "diracfem/fespace.hpp"

namespace diracfem {

enum class NormKind { L2, H1Semi, H1, W1p };

struct NormTag {
    NormKind kind = NormKind::L2;
    double p = 2.0;  // only meaningful for W1p

    std::string key() const;
    static NormTag parse(const std::string& text);
};

/// Error norms of u_h against a closed-form solution over the elements fully
/// inside the subdomain (all vertices and the barycenter). Refuses to measure
/// across the singular point. Per-element accumulation is compensated and
/// reduced in element order.
struct ErrorReport {
    std::vector<int> included_elements;
    std::map<std::string, double> values;           // keyed by NormTag::key()
    std::vector<double> element_l2;                 // filled when requested:
                                                    // sqrt of each element's L2 integral
    double value(const NormTag& tag) const;
};

ErrorReport error_norms(const FeSpace& space, std::span<const double> u,
                        const ExactSolution& exact, const SubdomainSpec& subdomain,
                        std::span<const NormTag> tags, bool per_element = false,
                        int quad_degree = -1);

/// Per-element L2 error contributions over the whole mesh. Elements whose
/// closure contains the singular point are flagged and carry no value.
struct FieldEntry {
    int element = -1;
    Point2 barycenter{};
    double l2_error = 0.0;
    bool singular = false;
};

std::vector<FieldEntry> error_field(const FeSpace& space, std::span<const double> u,
                                    const ExactSolution& exact, int quad_degree = -1);

/// CSV dump of an error field: elem,xc,yc,err2 (singular elements skipped).
void write_error_field_csv(std::span<const FieldEntry> field, std::ostream& out);

/// L2 norm aggregated over the non-singular entries of an error field.
double field_l2(std::span<const FieldEntry> field);

/// L2 norm and H1 seminorm of an FE function itself.
struct FeNorms {
    double l2 = 0.0;
    double h1semi = 0.0;
};
FeNorms fe_function_norms(const FeSpace& space, std::span<const double> u);

/// Scale-free inverse-inequality quantity |u_h|_1 h_min / ||u_h||_0.
double inverse_ratio(const FeSpace& space, std::span<const double> u);

}  // namespace diracfem
