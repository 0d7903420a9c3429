#pragma once

#include <stdexcept>
#include <string>

namespace pflat {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SizeCapExceeded : Error {
    explicit SizeCapExceeded(const std::string& what) : Error(what) {}
};

struct NotInAlgebra : Error {
    explicit NotInAlgebra(const std::string& what) : Error(what) {}
};

struct NotAutoparallel : Error {
    explicit NotAutoparallel(const std::string& what) : Error(what) {}
};

struct RicciNotSymmetric : Error {
    explicit RicciNotSymmetric(const std::string& what) : Error(what) {}
};

struct GradationInvalid : Error {
    explicit GradationInvalid(const std::string& what) : Error(what) {}
};

struct CarrierMismatch : Error {
    explicit CarrierMismatch(const std::string& what) : Error(what) {}
};

struct NotGeneric : Error {
    explicit NotGeneric(const std::string& what) : Error(what) {}
};

struct DimensionTooSmall : Error {
    explicit DimensionTooSmall(const std::string& what) : Error(what) {}
};

} // namespace pflat
