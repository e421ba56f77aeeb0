#include "curvel2/errors.hpp"

namespace curvel2 {

namespace {
std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "validation failed";
  for (const auto& s : v) out += "\n  - " + s;
  return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : InputError(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace curvel2
