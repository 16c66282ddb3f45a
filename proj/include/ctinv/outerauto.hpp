#pragma once

#include <string>
#include <vector>

#include "ctinv/endo.hpp"

namespace ctinv {

// An outer automorphism represented by basis images; construction checks
// that the images form a basis.
class OuterAuto {
 public:
  explicit OuterAuto(Endo e);
  static OuterAuto identity(int rank);
  static OuterAuto parse(const std::string& text, int rank);

  const Endo& endo() const { return endo_; }
  int rank() const { return endo_.rank(); }

  OuterAuto compose(const OuterAuto& inner) const;
  OuterAuto inverse() const;
  Word apply(const Word& w) const { return endo_.apply(w); }
  CyclicWord apply_class(const CyclicWord& c) const;

  std::string str() const;

 private:
  Endo endo_;
};

// Equality in Out(F_n): true iff u and v differ by an inner automorphism.
bool outer_equal(const OuterAuto& u, const OuterAuto& v);

// True iff theta phi theta^-1 = psi in Out(F_n).
bool verify_conjugator(const OuterAuto& phi, const OuterAuto& psi,
                       const OuterAuto& theta);

}  // namespace ctinv
