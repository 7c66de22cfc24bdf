#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asyncmodel {

/// Truth table of a function B^m -> B.
///
/// Row index of (a_1, ..., a_m) is sum a_p * 2^(m-p), so a_1 is the most
/// significant bit. `bits()` lists rows in index order, e.g. AND2 = "0001".
class BoolFn {
 public:
  static constexpr int max_arity = 16;

  BoolFn(int arity, std::vector<bool> table);

  static BoolFn from_bits(std::string_view bits);
  static BoolFn constant(int arity, bool value);
  static BoolFn identity();
  static BoolFn negation();
  static BoolFn and_n(int arity);
  static BoolFn or_n(int arity);
  static BoolFn xor_n(int arity);
  /// Projection onto coordinate `p` (0-based).
  static BoolFn projection(int arity, int p);

  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return table_.size(); }

  bool at(std::uint32_t row) const { return table_[row]; }
  bool operator()(const std::vector<bool>& args) const;

  std::string bits() const;

  bool is_constant() const;
  bool max_value() const;
  bool min_value() const;

  friend bool operator==(const BoolFn&, const BoolFn&) = default;

 private:
  int arity_;
  std::vector<bool> table_;
};

std::uint32_t row_of(const std::vector<bool>& args);
std::vector<bool> args_of(std::uint32_t row, int arity);

/// f o (f_1, ..., f_m) over B^(n_1 + ... + n_m), argument blocks a^1, ..., a^m in order.
BoolFn fn_compose(const BoolFn& f, std::span<const BoolFn> inner);

/// Pointwise f(a) <= g(a) for all a.
bool fn_leq(const BoolFn& f, const BoolFn& g);
/// a <= a' componentwise implies f(a) <= f(a').
bool is_monotone(const BoolFn& f);
/// Invariant under every permutation of its arguments.
bool is_permutation_invariant(const BoolFn& f);
/// not f(a) == g(not a) for all a.
bool is_rf_dual(const BoolFn& f, const BoolFn& g);

struct FnProps {
  bool leq_fg;
  bool max_f;
  bool min_g;
  bool monotone;
  bool usual_symmetric;
  bool rf_dual;

  friend bool operator==(const FnProps&, const FnProps&) = default;
};

/// Flags for the pair (f, g); `monotone` and `usual_symmetric` require both.
FnProps fn_props(const BoolFn& f, const BoolFn& g);
/// Single-function form: g is taken to be f.
FnProps fn_props(const BoolFn& f);

}  // namespace asyncmodel
