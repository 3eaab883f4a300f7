#ifndef SSHYP_SYMBOLIC_IO_HPP
#define SSHYP_SYMBOLIC_IO_HPP

#include <string>
#include <vector>

#include "sshyp/symbolic/transition_matrix.hpp"

namespace sshyp {

// JSON: a list of rows, e.g. [[1,1],[1,0]].
std::vector<std::vector<int>> parse_int_matrix_json(const std::string& text);
TransitionMatrix parse_matrix_json(const std::string& text);

// Plain text: one row per line, one digit per entry; blank lines and lines
// starting with '#' are ignored; spaces between digits are allowed.
TransitionMatrix parse_matrix_text(const std::string& text);

// Dispatches on the first non-blank character ('[' selects JSON).
TransitionMatrix load_matrix(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace sshyp

#endif  // SSHYP_SYMBOLIC_IO_HPP
