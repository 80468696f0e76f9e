#include "hyperkin/jet.hpp"

#include <algorithm>
#include <cmath>

namespace hyperkin {

namespace {

bool is_integer(double p) { return std::floor(p) == p && std::isfinite(p); }

}  // namespace

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
  k_ = static_cast<int>(names_.size());
  if (k_ < 1 || k_ > kMaxVariables) {
    throw ValidationError("variable set must hold between 1 and 8 variables");
  }
  for (int i = 0; i < k_; ++i) {
    if (names_[static_cast<std::size_t>(i)].empty()) {
      throw ValidationError("variable names must be non-empty");
    }
    for (int j = i + 1; j < k_; ++j) {
      if (names_[static_cast<std::size_t>(i)] == names_[static_cast<std::size_t>(j)]) {
        throw ValidationError("duplicate variable name '" + names_[static_cast<std::size_t>(i)] +
                              "'");
      }
    }
  }

  const int k = k_;
  pair_base_.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    pair_base_[static_cast<std::size_t>(i)] = i * k - i * (i - 1) / 2;
  }
  const int npairs = k * (k + 1) / 2;

  // Index table: value, singles, sorted pairs, sorted triples.
  table_.push_back({0, {0, 0, 0}});
  for (int i = 0; i < k; ++i) table_.push_back({1, {i, 0, 0}});
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) table_.push_back({2, {i, j, 0}});
  triple_offset_.assign(static_cast<std::size_t>(k * k * k), -1);
  int off = 1 + k + npairs;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      for (int l = j; l < k; ++l) {
        triple_offset_[static_cast<std::size_t>((i * k + j) * k + l)] = off++;
        table_.push_back({3, {i, j, l}});
      }
  total_ = off;

  // Leibniz plan: for each entry, one (lhs, rhs) pair per subset of the
  // derivative positions. Repeated variables yield repeated subsets, which
  // is exactly the multinomial count the product rule needs.
  plan_.resize(table_.size());
  for (std::size_t f = 0; f < table_.size(); ++f) {
    const IndexEntry& e = table_[f];
    const int len = e.len;
    auto& terms = plan_[f];
    terms.reserve(static_cast<std::size_t>(1) << len);
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::array<int, 3> a{};
      std::array<int, 3> b{};
      int na = 0, nb = 0;
      for (int p = 0; p < len; ++p) {
        if (mask & (1 << p)) {
          a[static_cast<std::size_t>(na++)] = e.var[static_cast<std::size_t>(p)];
        } else {
          b[static_cast<std::size_t>(nb++)] = e.var[static_cast<std::size_t>(p)];
        }
      }
      terms.push_back({offset(std::span<const int>(a.data(), static_cast<std::size_t>(na))),
                       offset(std::span<const int>(b.data(), static_cast<std::size_t>(nb)))});
    }
  }
}

VarsPtr VariableSet::make(std::vector<std::string> names) {
  return std::make_shared<const VariableSet>(std::move(names));
}

int VariableSet::index_of(std::string_view name) const {
  for (int i = 0; i < k_; ++i) {
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  }
  return -1;
}

int VariableSet::offset2(int i, int j) const {
  if (i > j) std::swap(i, j);
  return 1 + k_ + pair_base_[static_cast<std::size_t>(i)] + (j - i);
}

int VariableSet::offset3(int i, int j, int k) const {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  return triple_offset_[static_cast<std::size_t>((i * k_ + j) * k_ + k)];
}

int VariableSet::offset(std::span<const int> idx) const {
  for (int v : idx) {
    if (v < 0 || v >= k_) throw Error("jet: variable index out of range");
  }
  switch (idx.size()) {
    case 0:
      return 0;
    case 1:
      return offset1(idx[0]);
    case 2:
      return offset2(idx[0], idx[1]);
    case 3:
      return offset3(idx[0], idx[1], idx[2]);
    default:
      throw Error("jet: multi-index order exceeds 3");
  }
}

bool VariableSet::same_as(const VariableSet& other) const {
  return this == &other || names_ == other.names_;
}

void ensure_same_vars(const Jet& a, const Jet& b) {
  if (a.empty() || b.empty()) throw Error("jet: operation on an empty jet");
  if (!a.vars()->same_as(*b.vars())) throw Error("jet: variable sets differ");
}

Jet::Jet(VarsPtr vars, int degree) : vars_(std::move(vars)), degree_(degree) {
  coeff_.assign(static_cast<std::size_t>(vars_->coeff_count()), 0.0);
}

Jet Jet::constant(const VarsPtr& vars, double value) {
  if (!std::isfinite(value)) throw DomainError("jet: non-finite constant");
  Jet r(vars, VariableSet::kDegree);
  r.coeff_[0] = value;
  return r;
}

Jet Jet::variable(const VarsPtr& vars, int var, double value) {
  if (var < 0 || var >= vars->count()) throw Error("jet: variable index out of range");
  if (!std::isfinite(value)) throw DomainError("jet: non-finite seed value");
  Jet r(vars, VariableSet::kDegree);
  r.coeff_[0] = value;
  r.coeff_[static_cast<std::size_t>(vars->offset1(var))] = 1.0;
  return r;
}

std::vector<Jet> Jet::seed(const VarsPtr& vars, std::span<const double> point) {
  if (static_cast<int>(point.size()) != vars->count()) {
    throw Error("jet: seed point dimension mismatch");
  }
  std::vector<Jet> r;
  r.reserve(point.size());
  for (int i = 0; i < vars->count(); ++i) {
    r.push_back(variable(vars, i, point[static_cast<std::size_t>(i)]));
  }
  return r;
}

double Jet::deriv(std::span<const int> idx) const {
  if (empty()) throw Error("jet: derivative of an empty jet");
  if (static_cast<int>(idx.size()) > degree_) {
    throw Error("jet: derivative order exceeds the jet's valid degree");
  }
  return coeff_[static_cast<std::size_t>(vars_->offset(idx))];
}

Jet Jet::partial(int var) const {
  if (empty()) throw Error("jet: partial of an empty jet");
  if (var < 0 || var >= vars_->count()) throw Error("jet: variable index out of range");
  if (degree_ == 0) throw Error("jet: no derivative headroom left for partial()");
  Jet r(vars_, degree_ - 1);
  const auto& table = vars_->index_table();
  for (std::size_t f = 0; f < table.size(); ++f) {
    const auto& e = table[f];
    if (e.len > 2) break;
    std::array<int, 3> parent{};
    for (int p = 0; p < e.len; ++p) parent[static_cast<std::size_t>(p)] = e.var[static_cast<std::size_t>(p)];
    parent[static_cast<std::size_t>(e.len)] = var;
    r.coeff_[f] =
        coeff_[static_cast<std::size_t>(vars_->offset(std::span<const int>(parent.data(), static_cast<std::size_t>(e.len + 1))))];
  }
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  ensure_same_vars(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
  degree_ = std::min(degree_, rhs.degree_);
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  ensure_same_vars(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
  degree_ = std::min(degree_, rhs.degree_);
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeff_) c *= s;
  return *this;
}

Jet& Jet::operator+=(double s) {
  if (empty()) throw Error("jet: operation on an empty jet");
  coeff_[0] += s;
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  r += b;
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a;
  r -= b;
  return r;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  r *= -1.0;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  ensure_same_vars(a, b);
  Jet r(a.vars_, std::min(a.degree_, b.degree_));
  const auto& table = a.vars_->index_table();
  for (std::size_t f = 0; f < table.size(); ++f) {
    double s = 0.0;
    for (const auto& term : a.vars_->product_plan(static_cast<int>(f))) {
      s += a.coeff_[static_cast<std::size_t>(term.lhs)] * b.coeff_[static_cast<std::size_t>(term.rhs)];
    }
    r.coeff_[f] = s;
  }
  return r;
}

Jet apply_univariate(const Jet& a, double d0, double d1, double d2, double d3) {
  if (a.empty()) throw Error("jet: operation on an empty jet");
  if (!std::isfinite(d0) || !std::isfinite(d1) || !std::isfinite(d2) || !std::isfinite(d3)) {
    throw DomainError("jet: non-finite derivative in univariate composition");
  }
  // Horner form of f(v + w) truncated at total degree 3; w has zero value, so
  // the truncated products reproduce the mixed-partial chain rule exactly.
  Jet w = a;
  w.coeff_[0] = 0.0;
  Jet r = w;
  r *= d3 / 6.0;
  r += d2 / 2.0;
  r = r * w;
  r += d1;
  r = r * w;
  r += d0;
  r.degree_ = a.degree_;
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  ensure_same_vars(a, b);
  const double v = b.value();
  if (v == 0.0) throw DomainError("jet: division by a jet with zero value");
  return a * apply_univariate(b, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v),
                              -6.0 / (v * v * v * v));
}

Jet operator+(const Jet& a, double b) {
  Jet r = a;
  r += b;
  return r;
}
Jet operator+(double a, const Jet& b) { return b + a; }
Jet operator-(const Jet& a, double b) { return a + (-b); }
Jet operator-(double a, const Jet& b) {
  Jet r = -b;
  r += a;
  return r;
}
Jet operator*(const Jet& a, double b) {
  Jet r = a;
  r *= b;
  return r;
}
Jet operator*(double a, const Jet& b) { return b * a; }
Jet operator/(const Jet& a, double b) {
  if (b == 0.0) throw DomainError("jet: division by zero");
  Jet r = a;
  r *= 1.0 / b;
  return r;
}
Jet operator/(double a, const Jet& b) { return Jet::constant(b.vars(), a) / b; }

Jet sin(const Jet& a) {
  const double v = a.value();
  return apply_univariate(a, std::sin(v), std::cos(v), -std::sin(v), -std::cos(v));
}

Jet cos(const Jet& a) {
  const double v = a.value();
  return apply_univariate(a, std::cos(v), -std::sin(v), -std::cos(v), std::sin(v));
}

Jet tan(const Jet& a) {
  const double v = a.value();
  const double t = std::tan(v);
  const double s = 1.0 + t * t;  // sec^2
  if (!std::isfinite(t)) throw DomainError("jet: tan at a pole");
  return apply_univariate(a, t, s, 2.0 * t * s, s * (2.0 + 6.0 * t * t));
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  if (!std::isfinite(e)) throw DomainError("jet: exp overflow");
  return apply_univariate(a, e, e, e, e);
}

Jet log(const Jet& a) {
  const double v = a.value();
  if (v <= 0.0) throw DomainError("jet: log of a non-positive value");
  return apply_univariate(a, std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet sqrt(const Jet& a) {
  const double v = a.value();
  if (v <= 0.0) throw DomainError("jet: sqrt of a non-positive value");
  const double s = std::sqrt(v);
  return apply_univariate(a, s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

Jet pow(const Jet& a, double p) {
  const double v = a.value();
  if (v < 0.0 && !is_integer(p)) {
    throw DomainError("jet: negative base with a non-integer exponent");
  }
  double d[4];
  double factor = 1.0;
  for (int k = 0; k < 4; ++k) {
    if (factor == 0.0) {
      d[k] = 0.0;
      continue;
    }
    const double e = p - k;
    if (v == 0.0 && e < 0.0) {
      throw DomainError("jet: zero base with a negative exponent in a derivative");
    }
    d[k] = factor * std::pow(v, e);
    factor *= (p - k);
  }
  return apply_univariate(a, d[0], d[1], d[2], d[3]);
}

JetComposer::JetComposer(VarsPtr inner_vars, std::vector<Jet> args,
                         std::span<const double> expansion_point)
    : inner_(std::move(inner_vars)) {
  const int n = inner_->count();
  if (static_cast<int>(args.size()) != n || static_cast<int>(expansion_point.size()) != n) {
    throw Error("jet composer: argument count mismatch");
  }
  w_.reserve(args.size());
  for (int i = 0; i < n; ++i) {
    const Jet& arg = args[static_cast<std::size_t>(i)];
    if (arg.empty()) throw Error("jet composer: empty argument");
    if (arg.value() != expansion_point[static_cast<std::size_t>(i)]) {
      throw Error("jet composer: argument value differs from the expansion point");
    }
    args_degree_ = std::min(args_degree_, arg.valid_degree());
    Jet disp = arg - arg.value();
    w_.push_back(std::move(disp));
  }
  ww_.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      ww_.push_back(w_[static_cast<std::size_t>(i)] * w_[static_cast<std::size_t>(j)]);
  auto pair_at = [&](int i, int j) -> const Jet& {
    // same enumeration order as the fill loop above
    const int base = i * n - i * (i - 1) / 2;
    return ww_[static_cast<std::size_t>(base + (j - i))];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) www_.push_back(pair_at(i, j) * w_[static_cast<std::size_t>(k)]);
}

Jet JetComposer::apply(const Jet& f) const {
  if (f.empty()) throw Error("jet composer: empty function jet");
  if (!f.vars()->same_as(*inner_)) throw Error("jet composer: variable set mismatch");
  const int n = inner_->count();
  const VarsPtr& outer = w_[0].vars();
  Jet r = Jet::constant(outer, f.value());
  std::size_t pair_idx = 0;
  std::size_t triple_idx = 0;
  for (int i = 0; i < n; ++i) {
    const double c = f.coeffs()[static_cast<std::size_t>(inner_->offset1(i))];
    if (c != 0.0) r += w_[static_cast<std::size_t>(i)] * c;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++pair_idx) {
      double c = f.coeffs()[static_cast<std::size_t>(inner_->offset2(i, j))];
      if (i == j) c *= 0.5;  // 1/alpha! for the repeated index
      if (c != 0.0) r += ww_[pair_idx] * c;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k, ++triple_idx) {
        double c = f.coeffs()[static_cast<std::size_t>(inner_->offset3(i, j, k))];
        if (i == j && j == k) {
          c /= 6.0;
        } else if (i == j || j == k) {
          c *= 0.5;
        }
        if (c != 0.0) r += www_[triple_idx] * c;
      }
  // The composed jet is only trustworthy up to the lesser of f's valid degree
  // and the arguments' valid degree: higher coefficients of f are garbage and
  // feed exactly the orders past that bound.
  r.degree_ = std::min(f.valid_degree(), args_degree_);
  return r;
}

}  // namespace hyperkin
