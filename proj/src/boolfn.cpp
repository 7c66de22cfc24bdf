#include "asyncmodel/boolfn.hpp"

#include "asyncmodel/error.hpp"

namespace asyncmodel {

namespace {

void check_arity(int arity) {
  if (arity < 1 || arity > BoolFn::max_arity) {
    throw model_error(errc::arity_mismatch, "arity must be in [1, 16], got " + std::to_string(arity));
  }
}

// Bit mask of argument p (0-based, a_1 is p = 0) inside a row index.
std::uint32_t arg_mask(int arity, int p) { return 1u << (arity - 1 - p); }

}  // namespace

BoolFn::BoolFn(int arity, std::vector<bool> table) : arity_(arity), table_(std::move(table)) {
  check_arity(arity);
  if (table_.size() != (std::size_t{1} << arity)) {
    throw model_error(errc::arity_mismatch, "truth table of arity " + std::to_string(arity) + " needs " +
                                                std::to_string(std::size_t{1} << arity) + " rows, got " +
                                                std::to_string(table_.size()));
  }
}

BoolFn BoolFn::from_bits(std::string_view bits) {
  int arity = 0;
  while (arity <= max_arity && (std::size_t{1} << arity) < bits.size()) ++arity;
  if (bits.empty() || (std::size_t{1} << arity) != bits.size() || arity == 0) {
    throw model_error(errc::parse_error, "truth table length must be 2^m with m >= 1: \"" + std::string(bits) + "\"");
  }
  std::vector<bool> table;
  table.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw model_error(errc::parse_error, "truth table must be a 0/1 string: \"" + std::string(bits) + "\"");
    }
    table.push_back(c == '1');
  }
  return BoolFn(arity, std::move(table));
}

BoolFn BoolFn::constant(int arity, bool value) {
  check_arity(arity);
  return BoolFn(arity, std::vector<bool>(std::size_t{1} << arity, value));
}

BoolFn BoolFn::identity() { return BoolFn(1, {false, true}); }

BoolFn BoolFn::negation() { return BoolFn(1, {true, false}); }

BoolFn BoolFn::and_n(int arity) {
  auto fn = constant(arity, false);
  fn.table_.back() = true;
  return fn;
}

BoolFn BoolFn::or_n(int arity) {
  auto fn = constant(arity, true);
  fn.table_.front() = false;
  return fn;
}

BoolFn BoolFn::xor_n(int arity) {
  auto fn = constant(arity, false);
  for (std::uint32_t row = 0; row < fn.table_.size(); ++row) fn.table_[row] = (__builtin_popcount(row) & 1) != 0;
  return fn;
}

BoolFn BoolFn::projection(int arity, int p) {
  check_arity(arity);
  if (p < 0 || p >= arity) throw model_error(errc::arity_mismatch, "projection index out of range");
  auto fn = constant(arity, false);
  for (std::uint32_t row = 0; row < fn.table_.size(); ++row) fn.table_[row] = (row & arg_mask(arity, p)) != 0;
  return fn;
}

bool BoolFn::operator()(const std::vector<bool>& args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw model_error(errc::arity_mismatch, "function of arity " + std::to_string(arity_) + " applied to " +
                                                std::to_string(args.size()) + " arguments");
  }
  return table_[row_of(args)];
}

std::string BoolFn::bits() const {
  std::string out;
  out.reserve(table_.size());
  for (bool b : table_) out.push_back(b ? '1' : '0');
  return out;
}

bool BoolFn::is_constant() const { return max_value() == min_value(); }

bool BoolFn::max_value() const {
  for (bool b : table_)
    if (b) return true;
  return false;
}

bool BoolFn::min_value() const {
  for (bool b : table_)
    if (!b) return false;
  return true;
}

std::uint32_t row_of(const std::vector<bool>& args) {
  std::uint32_t row = 0;
  for (bool a : args) row = (row << 1) | (a ? 1u : 0u);
  return row;
}

std::vector<bool> args_of(std::uint32_t row, int arity) {
  std::vector<bool> args(arity);
  for (int p = 0; p < arity; ++p) args[p] = (row & arg_mask(arity, p)) != 0;
  return args;
}

BoolFn fn_compose(const BoolFn& f, std::span<const BoolFn> inner) {
  if (static_cast<int>(inner.size()) != f.arity()) {
    throw model_error(errc::arity_mismatch, "outer function of arity " + std::to_string(f.arity()) + " composed with " +
                                                std::to_string(inner.size()) + " inner functions");
  }
  int total = 0;
  for (const auto& fp : inner) total += fp.arity();
  if (total > BoolFn::max_arity) throw model_error(errc::arity_mismatch, "composite arity exceeds 16");

  std::vector<bool> table(std::size_t{1} << total);
  std::vector<bool> outer_args(inner.size());
  for (std::uint32_t row = 0; row < table.size(); ++row) {
    int shift = total;
    for (std::size_t q = 0; q < inner.size(); ++q) {
      shift -= inner[q].arity();
      const auto block = (row >> shift) & ((1u << inner[q].arity()) - 1);
      outer_args[q] = inner[q].at(block);
    }
    table[row] = f.at(row_of(outer_args));
  }
  return BoolFn(total, std::move(table));
}

bool fn_leq(const BoolFn& f, const BoolFn& g) {
  if (f.arity() != g.arity()) throw model_error(errc::arity_mismatch, "comparing functions of different arity");
  for (std::uint32_t row = 0; row < f.size(); ++row)
    if (f.at(row) && !g.at(row)) return false;
  return true;
}

bool is_monotone(const BoolFn& f) {
  for (std::uint32_t row = 0; row < f.size(); ++row) {
    if (!f.at(row)) continue;
    for (int p = 0; p < f.arity(); ++p) {
      const auto up = row | arg_mask(f.arity(), p);
      if (!f.at(up)) return false;
    }
  }
  return true;
}

bool is_permutation_invariant(const BoolFn& f) {
  // Adjacent transpositions generate the symmetric group.
  for (int p = 0; p + 1 < f.arity(); ++p) {
    const auto lo = arg_mask(f.arity(), p + 1);
    const auto hi = arg_mask(f.arity(), p);
    for (std::uint32_t row = 0; row < f.size(); ++row) {
      const bool a = (row & hi) != 0;
      const bool b = (row & lo) != 0;
      if (a == b) continue;
      const auto swapped = row ^ hi ^ lo;
      if (f.at(row) != f.at(swapped)) return false;
    }
  }
  return true;
}

bool is_rf_dual(const BoolFn& f, const BoolFn& g) {
  if (f.arity() != g.arity()) throw model_error(errc::arity_mismatch, "comparing functions of different arity");
  const auto all = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t row = 0; row < f.size(); ++row)
    if (f.at(row) == g.at(row ^ all)) return false;
  return true;
}

FnProps fn_props(const BoolFn& f, const BoolFn& g) {
  return FnProps{
      .leq_fg = fn_leq(f, g),
      .max_f = f.max_value(),
      .min_g = g.min_value(),
      .monotone = is_monotone(f) && is_monotone(g),
      .usual_symmetric = is_permutation_invariant(f) && is_permutation_invariant(g),
      .rf_dual = is_rf_dual(f, g),
  };
}

FnProps fn_props(const BoolFn& f) { return fn_props(f, f); }

}  // namespace asyncmodel
