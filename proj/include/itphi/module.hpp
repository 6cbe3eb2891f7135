#pragma once

#include "itphi/algebra.hpp"

#include <memory>
#include <mutex>
#include <random>
#include <vector>

namespace itphi {

struct ProjectivePresentation;

/// Left module: one action matrix per algebra basis element. Copies share
/// the underlying data.
class Module {
 public:
  Module() = default;
  /// Throws std::invalid_argument on a shape mismatch. The module axioms are
  /// checked separately by `check_module`.
  Module(AlgebraPtr algebra, Index dim, std::vector<FpMatrix> action);

  static Module zero(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return data_->algebra; }
  std::uint32_t prime() const { return data_->algebra->prime(); }
  Index dim() const { return data_->dim; }
  bool is_zero() const { return data_->dim == 0; }
  /// Shared by copies of the same module object.
  const void* identity() const { return data_.get(); }
  const FpMatrix& action(Index basis_element) const {
    return data_->action[static_cast<std::size_t>(basis_element)];
  }
  const std::vector<FpMatrix>& actions() const { return data_->action; }
  /// Action of an algebra element given by coordinates.
  FpMatrix act(const FpMatrix& x) const;
  /// Projection onto e_v M.
  const FpMatrix& idempotent_action(int v) const;
  std::vector<Index> dimension_vector() const;

  /// Minimal projective presentation, computed once and cached.
  const ProjectivePresentation& presentation() const;

 private:
  struct Data {
    AlgebraPtr algebra;
    Index dim = 0;
    std::vector<FpMatrix> action;
    std::vector<FpMatrix> idempotent_action;
    mutable std::once_flag cover_once;
    mutable std::shared_ptr<const ProjectivePresentation> cover;
  };
  std::shared_ptr<const Data> data_;
};

struct ModuleMap {
  Module source;
  Module target;
  FpMatrix matrix;  // target.dim() x source.dim()
};

/// P0(M) = direct sum of A e_{vertices[k]}, with epimorphism onto M and the
/// syzygy as the kernel.
struct ProjectivePresentation {
  Module cover;
  std::vector<int> vertices;
  std::vector<Index> offsets;  // start of summand k in cover coordinates
  FpMatrix generators;         // dim M x #summands: image of e_{v_k}
  FpMatrix epimorphism;        // dim M x dim P0
  FpMatrix section;            // dim P0 x dim M, epimorphism * section = 1
  FpMatrix kernel;             // dim P0 x dim Omega M
  Module syzygy;
};

struct ModuleCheck {
  bool valid = true;
  std::string problem;
};

/// Unit acts as the identity and rho(b_i) rho(b_j) = rho(b_i b_j).
ModuleCheck check_module(const Module& m);

bool same_algebra(const Module& a, const Module& b);
void require_same_algebra(const Module& a, const Module& b, const char* where);

Module regular_module(const AlgebraPtr& a);
/// P(v) = A e_v with the left regular action; throws std::out_of_range.
Module projective_module(const AlgebraPtr& a, int v);
/// Top of P(v).
Module simple_module(const AlgebraPtr& a, int v);

Module direct_sum(const Module& a, const Module& b);
Module direct_sum(const std::vector<Module>& parts, const AlgebraPtr& a);
Module power(const Module& m, int k);

/// Submodule spanned by the columns of `basis` (which must be independent and
/// invariant; throws std::invalid_argument otherwise).
Module submodule(const Module& m, const FpMatrix& basis);
/// Submodule generated by the columns of `generators`: its basis as columns.
FpMatrix generated_submodule(const Module& m, const FpMatrix& generators);

struct Quotient {
  Module module;
  FpMatrix projection;  // quotient.dim x m.dim
};
Quotient quotient(const Module& m, const FpMatrix& sub_basis);

/// Module transported along an invertible change of basis g: rho'(x) = g rho(x) g^-1.
Module conjugate(const Module& m, const FpMatrix& g);

/// True when `f` (target.dim x source.dim) intertwines the actions.
bool is_homomorphism(const Module& source, const Module& target, const FpMatrix& f);

std::vector<FpMatrix> hom_matrices(const Module& m, const Module& n);
std::vector<ModuleMap> hom_basis(const Module& m, const Module& n);
/// Direct solution of the intertwining system over every basis element.
std::vector<FpMatrix> hom_matrices_direct(const Module& m, const Module& n);

struct TopAndRadical {
  FpMatrix radical_basis;  // columns spanning J M
  Module radical;
  Module top;
  /// Multiplicity of the simple at each class representative, indexed by vertex
  /// (zero off representatives).
  std::vector<int> top_multiplicities;
};
TopAndRadical top_and_radical(const Module& m);

const ProjectivePresentation& projective_cover(const Module& m);
Module syzygy(const Module& m);
Module syzygy_iter(const Module& m, int n);
bool is_projective(const Module& m);

struct ProjDim {
  bool finite = false;
  int value = 0;  // pd when finite, else the cutoff
};
ProjDim pd_bounded(const Module& m, int n_max);

/// One step of a minimal projective resolution: P_i = sum_k A e_{vertices[k]};
/// for i >= 1, d_i sends generator k to sum_j z[k][j] placed in summand j of
/// P_{i-1}; z[k][j] are algebra coordinates of an element of e_w A e_v.
struct ResolutionStep {
  std::vector<int> vertices;
  std::vector<std::vector<FpMatrix>> z;
};
std::vector<ResolutionStep> minimal_resolution(const Module& m, int length);

Index ext_dim(const Module& m, const Module& n, int i);

/// D(M) over the opposite algebra `op`.
Module dual_module(const Module& m, const AlgebraPtr& op);
Module dual_module(const Module& m);

/// True when b carries the opposite multiplication of a.
bool is_opposite(const AlgebraPresentation& a, const AlgebraPresentation& b);

/// Tor_i^A(X, N) with X a module over the opposite algebra.
Index tor_dim(const Module& x, const Module& n, int i);

/// P/U for a random sum P of indecomposable projectives and U generated by up
/// to `max_generators` random elements of rad P.
Module random_quotient_module(const AlgebraPtr& a, std::mt19937_64& rng, int max_summands, int max_generators);

}  // namespace itphi
