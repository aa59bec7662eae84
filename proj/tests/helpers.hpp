#pragma once

#include <functional>

#include <doctest.h>

#include "hexcurv/error.hpp"

inline hexcurv::Err error_code(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const hexcurv::Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return hexcurv::Err::PreconditionViolated;
}
