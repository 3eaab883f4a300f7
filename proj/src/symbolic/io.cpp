#include "sshyp/symbolic/io.hpp"

#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace sshyp {

std::vector<std::vector<int>> parse_int_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix: malformed JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a non-empty list of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("matrix: every row must be a list");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw std::invalid_argument("matrix: entries must be integers");
      r.push_back(v.get<int>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

TransitionMatrix parse_matrix_json(const std::string& text) { return TransitionMatrix(parse_int_matrix_json(text)); }

TransitionMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    std::vector<int> row;
    bool comment = false;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '#' && row.empty()) {
        comment = true;
        break;
      }
      if (c != '0' && c != '1') throw std::invalid_argument(std::string("matrix: unexpected character '") + c + "'");
      row.push_back(c - '0');
    }
    if (!comment && !row.empty()) rows.push_back(std::move(row));
  }
  return TransitionMatrix(rows);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

TransitionMatrix load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' ? parse_matrix_json(text) : parse_matrix_text(text);
  }
  throw std::invalid_argument("matrix: empty file " + path);
}

}  // namespace sshyp
