#ifndef HOMEXPR_ERRORS_HPP
#define HOMEXPR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homexpr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an internal cross-check fails; never swallowed.
class ConsistencyError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace homexpr

#endif  // HOMEXPR_ERRORS_HPP
