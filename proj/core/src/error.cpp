#include "vtorus/error.hpp"

namespace vtorus {

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace vtorus
