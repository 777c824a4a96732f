#pragma once

#include "lam2/syntax.hpp"

namespace lam2 {

// A type in normal form, read as  forall binders. premises -> head.
struct NfView {
  std::vector<std::string> binders;
  std::vector<Type> premises;
  std::string head;
};

NfView view(const Type& nf_type);
Type build(const NfView& v);

// Drops vacuous quantifiers and pulls quantifiers out of arrow codomains.
// Binder names are kept; clashes with free names of a premise are renamed.
Type nf(const Type& a);
bool is_nf(const Type& a);

// The ~ relation on normal forms: equal up to binder renaming and premise permutation.
bool sim(const Type& a, const Type& b);

// Decides by normal forms and by tree comparison; throws std::logic_error if they disagree.
bool iso_beta_eta(const Type& a, const Type& b);

}  // namespace lam2
