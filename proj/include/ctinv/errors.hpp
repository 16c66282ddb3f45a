#pragma once

#include <stdexcept>
#include <string>

namespace ctinv {

enum class errc {
  invalid_generator,
  empty_word,
  broken_path,
  not_split,
  not_polynomial,
  classification_error,
  not_higher_order,
  not_growing,
  not_an_axis,
  axis_mismatch,
  invalid_total_order,
  trivial_subgroup,
  not_good_pair,
  not_automorphism,
  bad_correspondence,
  untyped,
  parse_error,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_generator: return "InvalidGenerator";
    case errc::empty_word: return "EmptyWord";
    case errc::broken_path: return "BrokenPath";
    case errc::not_split: return "NotSplit";
    case errc::not_polynomial: return "NotPolynomial";
    case errc::classification_error: return "ClassificationError";
    case errc::not_higher_order: return "NotHigherOrder";
    case errc::not_growing: return "NotGrowing";
    case errc::not_an_axis: return "NotAnAxis";
    case errc::axis_mismatch: return "AxisMismatch";
    case errc::invalid_total_order: return "InvalidTotalOrder";
    case errc::trivial_subgroup: return "TrivialSubgroup";
    case errc::not_good_pair: return "NotGoodPair";
    case errc::not_automorphism: return "NotAutomorphism";
    case errc::bad_correspondence: return "BadCorrespondence";
    case errc::untyped: return "Untyped";
    case errc::parse_error: return "ParseError";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace ctinv
