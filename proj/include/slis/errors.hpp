// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_ERRORS_HPP
#define SLIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slis
{
    // Base of every error raised by the library. kind() is a stable, machine-parsable tag.
    class error : public std::runtime_error
    {
    public:
        explicit error(const std::string &what) : std::runtime_error(what) {}
        virtual const char *kind() const noexcept { return "error"; }
    };

    // Argument outside the mathematical domain of an operation (e.g. tau < 1 for a sphere).
    class domain_error : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "domain"; }
    };

    // Surface point (or cap) not visible from the terminal: theta > theta0.
    class visibility_error : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "visibility"; }
    };

    // Quadrature ran out of its evaluation budget before meeting tolerance.
    class budget_exhausted : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "budget-exhausted"; }
    };

    class no_root_error : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "no-root"; }
    };

    class detection_failure : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "detection-failure"; }
    };

    // Invalid experiment specification or configuration.
    class validation_error : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "validation"; }
    };

    class io_error : public error
    {
    public:
        using error::error;
        const char *kind() const noexcept override { return "io"; }
    };
}

#endif
