#pragma once

#include <stdexcept>
#include <string>

namespace murphy {

// Invalid input or violated operation precondition (CLI exit code 2).
class input_error : public std::runtime_error {
  public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A deterministic search ran out of budget (CLI exit code 3).
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant (CLI exit code 4).
class internal_error : public std::logic_error {
  public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

#define MURPHY_CHECK(cond, msg)                                 \
    do {                                                        \
        if (!(cond)) throw ::murphy::internal_error(msg);       \
    } while (0)

#define MURPHY_REQUIRE(cond, msg)                               \
    do {                                                        \
        if (!(cond)) throw ::murphy::input_error(msg);          \
    } while (0)

}  // namespace murphy
