#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freecum/generating.hpp"

namespace fc {

enum class Mode { Symbolic, Specialized };

struct VerifyOptions {
  int depth = 6;
  Mode mode = Mode::Symbolic;
  std::uint64_t seed = 1;
  // fourth-order checks only: use the transcription with the original indices
  bool uncorrected = false;
};

struct IdentityReport {
  std::string name;
  int depth = 0;
  Mode mode = Mode::Symbolic;
  std::uint64_t seed = 0;
  bool conjecture = false;
  bool pass = true;
  // first failing coefficient
  std::string part;
  std::string monomial;
  std::string lhs;
  std::string rhs;
  long millis = 0;

  std::string to_json() const;
};

struct IdentityInfo {
  std::string name;
  std::string summary;
  bool conjecture = false;
  int default_depth = 6;
  int max_symbolic = 6;
  int max_specialized = 8;
};

const std::vector<IdentityInfo>& identity_registry();
const IdentityInfo& identity_info(const std::string& name);  // throws DomainError

IdentityReport verify_identity(const std::string& name, const VerifyOptions& opt);

// 0 all pass, 1 some proven identity fails, 2 only conjectures fail
int exit_status(const std::vector<IdentityReport>& reports);

// One side-by-side comparison inside an identity.
template <class R>
struct Check {
  std::string part;
  PolarSeries<R> lhs;
  PolarSeries<R> rhs;
  std::string symbol = "Y";
};

// The tree sum of one-block corrections minus the pure pole products, with the
// one-black-vertex term on the left. At p = 3 it is the first third-order cancellation
// up to the factor prod dY/dX / C1.
template <class R>
Check<R> conjecture_order1_check(const GenFun<R>& g, int p);

}  // namespace fc
