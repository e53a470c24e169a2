#pragma once

#include <stdexcept>
#include <string>

namespace galelab {

enum class ErrorKind {
  Domain,      // parameter outside its mathematical domain
  Parse,       // malformed rational / config / file
  Budget,      // evaluation or enumeration budget exceeded
  Contract,    // a callback or table violated its contract
  EmptyClass,  // concept class has no valid block at some length
  Incomplete,  // gale table missing entries
  Unknown,     // unrecognized identifier
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace galelab
