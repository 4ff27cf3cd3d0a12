#pragma once

#include <stdexcept>
#include <string>

namespace emvs {

// Error categories map onto the CLI exit-code contract:
// Invalid -> 2 (bad arguments/data), Io -> 3, Numeric -> 4.
enum class ErrorKind { Invalid, Io, Numeric };

class Error : public std::runtime_error {
 public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

 private:
    ErrorKind kind_;
};

struct ConstantColumn : Error {
    explicit ConstantColumn(std::size_t j)
        : Error(ErrorKind::Invalid, "column " + std::to_string(j) + " has zero variance"),
          column(j) {}
    std::size_t column;
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& where)
        : Error(ErrorKind::Invalid, "non-finite value in " + where) {}
};

struct LabelCodingMismatch : Error {
    LabelCodingMismatch(std::size_t row, int value, const std::string& expected)
        : Error(ErrorKind::Invalid, "label " + std::to_string(value) + " at row " +
                                        std::to_string(row) + " not in " + expected),
          row(row) {}
    std::size_t row;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(ErrorKind::Invalid, msg) {}
};

struct SpecInvalid : Error {
    explicit SpecInvalid(const std::string& msg) : Error(ErrorKind::Invalid, msg) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg) : Error(ErrorKind::Numeric, msg) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& msg) : Error(ErrorKind::Io, msg) {}
};

}  // namespace emvs
