#ifndef ADL_ERRORS_HPP
#define ADL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adl {

/* Library errors carry a stable machine-readable code next to the human
   message.  Codes are part of the CLI contract (they end up in diagnostic
   JSON), so they never change spelling. */
class Error : public std::runtime_error {
public:
  Error(std::string code, std::string message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        message_(std::move(message)) {}
  const std::string& code() const { return code_; }
  const std::string& message() const { return message_; }

private:
  std::string code_;
  std::string message_;
};

namespace errc {
inline constexpr const char* unknown_type = "UNKNOWN_TYPE";
inline constexpr const char* rank_out_of_range = "RANK_OUT_OF_RANGE";
inline constexpr const char* index_out_of_range = "INDEX_OUT_OF_RANGE";
inline constexpr const char* not_an_automorphism = "NOT_AN_AUTOMORPHISM";
inline constexpr const char* levi_not_sigma_stable = "LEVI_NOT_SIGMA_STABLE";
inline constexpr const char* levi_mismatch = "LEVI_MISMATCH";
inline constexpr const char* non_dominant = "NON_DOMINANT";
inline constexpr const char* budget_exceeded = "BUDGET_EXCEEDED";
inline constexpr const char* precision_exhausted = "PRECISION_EXHAUSTED";
inline constexpr const char* not_adjacent = "NOT_ADJACENT";
inline constexpr const char* hypothesis_violated = "HYPOTHESIS_VIOLATED";
inline constexpr const char* field_too_large = "FIELD_TOO_LARGE";
inline constexpr const char* field_mismatch = "FIELD_MISMATCH";
inline constexpr const char* parse_error = "PARSE_ERROR";
inline constexpr const char* singular_matrix = "SINGULAR_MATRIX";
}  // namespace errc

}  // namespace adl

#endif
