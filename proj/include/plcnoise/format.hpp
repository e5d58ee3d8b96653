#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

#include "plcnoise/errors.hpp"

namespace plcnoise::detail {

// Shortest round-trip decimal form, locale independent.  Used for CSV and
// tag strings so repeated runs are byte identical.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string format_u64(unsigned long long v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline unsigned long long parse_u64(const std::string& s) {
    unsigned long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("not a non-negative integer: '" + s + "'");
    return v;
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("not a number: '" + s + "'");
    return v;
}

} // namespace plcnoise::detail
