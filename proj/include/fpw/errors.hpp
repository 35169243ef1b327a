#pragma once
#include <stdexcept>
#include <string>

namespace fpw {

// Error taxonomy shared by all modules. The CLI maps kinds to exit codes:
// config/usage -> 2, data -> 3, numerical divergence -> 4.
enum class ErrorKind {
    InvalidField,
    GeometryError,
    CorpusError,
    ShapeError,
    ConfigError,
    DatasetError,
    DivergenceError,
    IoError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidField: return "InvalidField";
        case ErrorKind::GeometryError: return "GeometryError";
        case ErrorKind::CorpusError: return "CorpusError";
        case ErrorKind::ShapeError: return "ShapeError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::DatasetError: return "DatasetError";
        case ErrorKind::DivergenceError: return "DivergenceError";
        case ErrorKind::IoError: return "IoError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace fpw
