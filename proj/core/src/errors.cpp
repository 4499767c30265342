#include "uscpol/errors.hpp"

namespace uscpol {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

GapError::GapError(double lower_edge, double upper_edge, const std::string& what)
    : DomainError(what), lower_(lower_edge), upper_(upper_edge) {}

}  // namespace uscpol
