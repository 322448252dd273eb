#pragma once

#include <stdexcept>
#include <string>

namespace hj
{
    /// Base of every exception thrown by the library.
    class Error : public std::runtime_error
    {
    public:
        explicit Error(const std::string & message) :
            std::runtime_error(message)
        {
        }
    };

    /// An argument violated an operation's precondition.
    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    /// Malformed input text (colouring files, certificates, DIMACS, reports).
    class FormatError : public Error
    {
    public:
        using Error::Error;
    };

    /// A self-check failed. Raised when an internal invariant that should be
    /// impossible to break turns out false; never caught by library code.
    class VerificationFailure : public Error
    {
    public:
        using Error::Error;
    };
}
