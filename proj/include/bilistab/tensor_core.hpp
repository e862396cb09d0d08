#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bilistab/exact_scalar.hpp"

namespace bilistab {

using CoeffVector = std::vector<ExactScalar>;

/// One rank-1 term (u, v, w) of a decomposition. u and v are the Riesz
/// coefficient vectors of the linear functionals, w the output vector.
struct Term {
    CoeffVector u;
    CoeffVector v;
    CoeffVector w;
};

/// Norm choice per space. Only the Euclidean norm (Frobenius on flattened
/// matrix spaces) is supported; it is self-dual, so dual norms of the
/// functionals are plain 2-norms of their coefficient vectors.
enum class NormSpec { euclidean };

/// 3-tensor with exact Q(sqrt 3) entries, row-major over (j, k, l).
class DenseTensor3 {
public:
    DenseTensor3(int m, int n, int p);

    const std::array<int, 3>& dims() const { return dims_; }
    ExactScalar& at(int j, int k, int l) {
        return entries_[(static_cast<size_t>(j) * dims_[1] + k) * dims_[2] + l];
    }
    const ExactScalar& at(int j, int k, int l) const {
        return entries_[(static_cast<size_t>(j) * dims_[1] + k) * dims_[2] + l];
    }
    size_t size() const { return entries_.size(); }

    friend bool operator==(const DenseTensor3& x, const DenseTensor3& y) {
        return x.dims_ == y.dims_ && x.entries_ == y.entries_;
    }

private:
    std::array<int, 3> dims_;
    std::vector<ExactScalar> entries_;
};

/// A bilinear algorithm beta = sum_i u_i (x) v_i (x) w_i, stored with exact
/// coefficients. dims = (m, n, p) are the dimensions of the three spaces;
/// the term count r is the algorithm's bilinear complexity.
///
/// Immutable after construction; construction validates shape, rejects zero
/// triples and caches the nearest-double view of every coefficient (the view
/// used by all floating-point execution paths).
class BilinearDecomposition {
public:
    BilinearDecomposition(std::string name, std::array<int, 3> dims, std::vector<Term> terms,
                          std::optional<double> known_nuclear_norm = std::nullopt,
                          std::optional<std::string> growth_closed_form = std::nullopt);

    const std::string& name() const { return name_; }
    const std::array<int, 3>& dims() const { return dims_; }
    const std::vector<Term>& terms() const { return terms_; }
    int rank_bound() const { return static_cast<int>(terms_.size()); }
    const std::optional<double>& known_nuclear_norm() const { return known_nuclear_norm_; }
    const std::optional<std::string>& growth_closed_form() const { return growth_closed_form_; }

    /// Nearest-double copy of term i, as three flat arrays.
    struct TermView {
        std::vector<double> u;
        std::vector<double> v;
        std::vector<double> w;
    };
    const std::vector<TermView>& term_views() const { return views_; }

private:
    std::string name_;
    std::array<int, 3> dims_;
    std::vector<Term> terms_;
    std::optional<double> known_nuclear_norm_;
    std::optional<std::string> growth_closed_form_;
    std::vector<TermView> views_;
};

/// gamma(D) = sum_i |u_i|_2 |v_i|_2 |w_i|_2, evaluated in double precision
/// term by term, summed left to right.
double growth_factor(const BilinearDecomposition& d, NormSpec norms = NormSpec::euclidean);

/// Runs the algorithm in double precision: computes the functionals as
/// left-to-right dot products, forms c_i = phi_i(u) psi_i(v), and accumulates
/// sum_i c_i w_i strictly left to right over i.
std::vector<double> evaluate(const BilinearDecomposition& d, std::span<const double> u,
                             std::span<const double> v);

/// T[j,k,l] = sum_i u_i[j] v_i[k] w_i[l], computed exactly over Q(sqrt 3).
DenseTensor3 materialize_tensor(const BilinearDecomposition& d);

/// Exact entrywise equality of materialize_tensor(d) with the reference; no
/// tolerance anywhere.
bool verify_decomposition(const BilinearDecomposition& d, const DenseTensor3& reference);

/// The tensor of the matrix-multiplication map (A, B) -> AB for
/// A in R^{m x n}, B in R^{n x p}, spaces flattened row-major.
DenseTensor3 matmul_tensor(int m, int n, int p);

/// The tensor of complex multiplication C x C -> C over R^2 (1, i basis).
DenseTensor3 complex_mult_tensor();

/// JSON form:
///   {"name": ..., "dims": [m,n,p],
///    "terms": [{"u": [coef,...], "v": [...], "w": [...]}]}
/// where coef is a JSON number (parsed as an exact decimal) or
/// {"a": [p,q], "b": [r,s]} meaning p/q + (r/s)*sqrt(3).
nlohmann::json decomposition_to_json(const BilinearDecomposition& d);
BilinearDecomposition decomposition_from_json(const nlohmann::json& j);

/// File round trips are exact: numeric tokens are captured as text before
/// JSON number conversion can round them.
BilinearDecomposition load_decomposition(const std::string& path);
void save_decomposition(const BilinearDecomposition& d, const std::string& path);
BilinearDecomposition parse_decomposition_text(const std::string& json_text);

}  // namespace bilistab
