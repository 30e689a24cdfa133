#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace antimagic {

// Error categories map onto the CLI exit codes: input = 2, verification
// failure = 1, construction/pipeline failure = 3.
class Error : public std::runtime_error {
  public:
    enum class Kind { input, precondition, construction, internal };

    Error(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
    throw Error(Error::Kind::input, msg);
}
[[noreturn]] inline void fail_precondition(const std::string& msg) {
    throw Error(Error::Kind::precondition, msg);
}
[[noreturn]] inline void fail_construction(const std::string& msg) {
    throw Error(Error::Kind::construction, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
    throw Error(Error::Kind::internal, msg);
}

// Postcondition checks stay on in release builds; the construction
// guarantees are part of the contract, not debug aids.
inline void require(bool cond, const std::string& what) {
    if (!cond) fail_internal("postcondition violated: " + what);
}

} // namespace antimagic
