#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "resect/poly/ring.hpp"

namespace resect::poly {

// Block order. Each block ranks its variables most significant first and is
// compared either lexicographically or by degree reverse lexicographic rule;
// blocks are compared in sequence (a product order when there are several).
// Variables outside every block break remaining ties lexicographically in
// ascending index order.
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, Product };
  struct Block {
    Kind kind = Kind::Lex;  // Lex or GrevLex
    std::vector<Var> vars;
  };

  MonomialOrder() = default;

  static MonomialOrder lex(std::vector<Var> ranking);
  static MonomialOrder grevlex(std::vector<Var> ranking);
  // Compare by `outer` first, break ties with `inner`. Variable sets must be
  // disjoint.
  static MonomialOrder product(const MonomialOrder& outer, const MonomialOrder& inner);

  // p_{11}[1] > p_{11}[2] > p_{11}[3] > p_{12}[1] > ... over the image
  // variables, then the auxiliary variables.
  static MonomialOrder pinned_lex(const Ring& ring);
  static MonomialOrder standard_grevlex(const Ring& ring);
  // "lex" (the pinned order), "grevlex", or "elim:<base>" which puts every
  // auxiliary variable in a leading lex block ahead of <base>.
  static MonomialOrder by_name(std::string_view name, const Ring& ring);

  Kind kind() const;
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  // Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;

 private:
  std::vector<Block> blocks_;
  std::string name_;
};

}  // namespace resect::poly
