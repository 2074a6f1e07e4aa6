#pragma once
// Built-in worked examples and spec-file input/output.

#include "courant.hpp"

#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace ca {

// names accept an argument as name(arg) or name:arg
CourantSpec catalog(const std::string& name);
// the default instance of every entry, for suites
std::vector<std::string> catalog_names();
// same, plus t4-charged and the negative control
std::vector<std::string> catalog_all_names();

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// expressions: rationals p/q, the declared symbol, + - * / ^ and parentheses
Scalar parse_scalar(const std::string& text, const std::string& symbol);

CourantSpec load_spec_text(const std::string& text);
CourantSpec load_spec(const std::string& path);
std::string emit_spec(const CourantSpec& s);

// optional task section of a spec file; unset fields stay empty
struct TaskSection {
    std::optional<std::string> command;
    std::optional<int> degrees, page, truncation;
};
TaskSection load_task_text(const std::string& text);

// so3-circle style variant with a non-trivial metric B-connection, and a
// small spec carrying R, used for the class-invariance checks
CourantSpec with_nablaB(CourantSpec s, int m, const std::vector<std::vector<CharPoly>>& A);
CourantSpec charged_t4();

} // namespace ca
