#pragma once

#include <array>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperkin/error.hpp"

namespace hyperkin {

class VariableSet;
using VarsPtr = std::shared_ptr<const VariableSet>;

/// Ordered set of named independent variables. All jets over the same set
/// share its canonical multi-index tables, so the set also owns the flat
/// coefficient layout and the precomputed Leibniz expansion used by products.
///
/// Layout: offset 0 is the value, offsets 1..k the first partials, then all
/// sorted pairs (i<=j) in lexicographic order, then all sorted triples.
class VariableSet {
 public:
  static constexpr int kMaxVariables = 8;
  static constexpr int kDegree = 3;

  /// Validates the names (1..8, distinct, non-empty) and builds the tables.
  static VarsPtr make(std::vector<std::string> names);

  int count() const { return k_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  /// Index of a named variable, -1 when absent.
  int index_of(std::string_view name) const;

  int coeff_count() const { return total_; }

  int offset1(int i) const { return 1 + i; }
  int offset2(int i, int j) const;  // sorted internally
  int offset3(int i, int j, int k) const;
  /// Offset of an arbitrary multi-index of order 0..3 (sorted internally).
  int offset(std::span<const int> idx) const;

  struct IndexEntry {
    int len;
    std::array<int, 3> var;
  };
  const std::vector<IndexEntry>& index_table() const { return table_; }

  /// Leibniz expansion of coefficient f of a product: sum of a[lhs]*b[rhs]
  /// over every subset of the derivative positions of entry f. Subset
  /// multiplicity is encoded by repetition, so the sum needs no weights.
  struct ProductTerm {
    int lhs;
    int rhs;
  };
  const std::vector<ProductTerm>& product_plan(int f) const {
    return plan_[static_cast<std::size_t>(f)];
  }

  bool same_as(const VariableSet& other) const;

  explicit VariableSet(std::vector<std::string> names);

 private:
  std::vector<std::string> names_;
  int k_ = 0;
  int total_ = 0;
  std::vector<int> pair_base_;
  std::vector<int> triple_offset_;  // dense k^3 lookup, sorted triples only
  std::vector<IndexEntry> table_;
  std::vector<std::vector<ProductTerm>> plan_;
};

/// Truncated multivariate Taylor expansion of a scalar function, to total
/// degree 3, over a shared VariableSet. Storage is derivative-valued: the
/// coefficient at a multi-index is the raw partial derivative (so the
/// coefficient of (u,u) for f = u^2 is 2, not 1).
///
/// Derived jets (results of partial()) lose one order of trustworthy
/// coefficients; valid_degree() tracks that and extraction past it throws.
class Jet {
 public:
  Jet() = default;

  static Jet constant(const VarsPtr& vars, double value);
  /// Jet of the i-th coordinate function at the given value.
  static Jet variable(const VarsPtr& vars, int var, double value);
  /// Seeds every variable at the given point; pre: point.size() == count().
  static std::vector<Jet> seed(const VarsPtr& vars, std::span<const double> point);

  bool empty() const { return vars_ == nullptr; }
  const VarsPtr& vars() const { return vars_; }
  int valid_degree() const { return degree_; }

  double value() const { return coeff_.empty() ? 0.0 : coeff_[0]; }
  /// Partial derivative for a multi-index of order 0..3 (order may not exceed
  /// valid_degree()). The index is sorted internally.
  double deriv(std::span<const int> idx) const;
  double deriv(std::initializer_list<int> idx) const {
    return deriv(std::span<const int>(idx.begin(), idx.size()));
  }

  /// Jet of the partial derivative along one variable. Costs one order of
  /// valid degree; throws when none is left.
  Jet partial(int var) const;

  const std::vector<double>& coeffs() const { return coeff_; }

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(double s);
  Jet& operator+=(double s);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);

  friend Jet operator+(const Jet& a, double b);
  friend Jet operator+(double a, const Jet& b);
  friend Jet operator-(const Jet& a, double b);
  friend Jet operator-(double a, const Jet& b);
  friend Jet operator*(const Jet& a, double b);
  friend Jet operator*(double a, const Jet& b);
  friend Jet operator/(const Jet& a, double b);
  friend Jet operator/(double a, const Jet& b);

  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet tan(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet pow(const Jet& a, double p);

  /// Truncated composition with a univariate function given by derivatives
  /// d0..d3 at the jet's value.
  friend Jet apply_univariate(const Jet& a, double d0, double d1, double d2, double d3);

  friend class JetComposer;

 private:
  Jet(VarsPtr vars, int degree);

  VarsPtr vars_;
  std::vector<double> coeff_;
  int degree_ = VariableSet::kDegree;
};

/// Throws unless both jets live over the same variable set.
void ensure_same_vars(const Jet& a, const Jet& b);

/// Truncated multivariate composition. Holds one outer-space jet per inner
/// variable (its value must match the expansion point of the jets being
/// composed) and caches the displacement products shared by every apply().
class JetComposer {
 public:
  /// args[i] corresponds to inner variable i; expansion_point are the values
  /// the inner-space jets were expanded at (must equal args[i].value()).
  JetComposer(VarsPtr inner_vars, std::vector<Jet> args, std::span<const double> expansion_point);

  /// Composes an inner-space jet with the stored arguments.
  Jet apply(const Jet& f) const;

 private:
  VarsPtr inner_;
  std::vector<Jet> w_;        // args with the value coefficient zeroed
  std::vector<Jet> ww_;       // products w_i*w_j, i<=j
  std::vector<Jet> www_;      // products w_i*w_j*w_k, i<=j<=k
  int args_degree_ = VariableSet::kDegree;
};

}  // namespace hyperkin
