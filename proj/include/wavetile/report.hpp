#pragma once

#include <complex>
#include <string>

#include <json.hpp>

namespace wavetile {

// Outcome of one verification check. pass holds exactly when
// defect <= certified_bound + slack, where the slack is the float-level
// allowance documented by the producing check (stored under params["slack"]
// when nonzero). params carries check-specific inputs and diagnostics.
struct VerificationReport {
  std::string check;
  std::complex<double> lhs{0.0, 0.0};
  std::complex<double> rhs{0.0, 0.0};
  double defect = 0.0;
  double certified_bound = 0.0;
  bool pass = false;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

}  // namespace wavetile
