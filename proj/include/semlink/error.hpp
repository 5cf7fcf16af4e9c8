#ifndef SEMLINK_ERROR_HPP
#define SEMLINK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace semlink {

enum class ErrorKind {
    Range,              // index out of bounds
    Domain,             // argument outside mathematical domain
    Format,             // malformed file contents
    Framing,            // stream length inconsistent with block structure
    Config,             // invalid or inconsistent configuration
    Shape,              // tensor shape mismatch
    Contract,           // plug-in violated its interface contract
    UnsupportedRegime,  // operating point outside the defined tables
    Io,                 // file system failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace semlink

#endif
