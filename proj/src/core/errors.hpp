#ifndef RDB_CORE_ERRORS_HPP
#define RDB_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdb {

// Error categories map 1:1 onto C API status codes and CLI exit codes.
enum class ErrorKind {
    Domain,    // bad argument / out of the bound's validity region
    Resource,  // an exactness budget (enumeration size, convolution size) exceeded
    Numeric,   // an iterative routine failed to reach its tolerance
    Internal,  // invariant violation; indicates a bug
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_domain(const std::string& what) { throw Error(ErrorKind::Domain, what); }
[[noreturn]] inline void throw_resource(const std::string& what) { throw Error(ErrorKind::Resource, what); }
[[noreturn]] inline void throw_numeric(const std::string& what) { throw Error(ErrorKind::Numeric, what); }
[[noreturn]] inline void throw_internal(const std::string& what) { throw Error(ErrorKind::Internal, what); }

}  // namespace rdb

#endif  // RDB_CORE_ERRORS_HPP
