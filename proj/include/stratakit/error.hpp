#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stratakit {

// Library-wide error with a stable machine-readable code. The CLI maps codes
// to exit statuses, so codes are part of the public interface.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

inline constexpr const char* kParseError = "parse_error";
inline constexpr const char* kDimensionError = "dimension_error";
inline constexpr const char* kMembershipError = "membership_error";
inline constexpr const char* kInvertibilityError = "invertibility_error";
inline constexpr const char* kCapabilityError = "capability_error";
inline constexpr const char* kVerificationError = "verification_error";
inline constexpr const char* kInternalError = "internal_inconsistency";

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace stratakit
