#pragma once

// Formatting and verdict helpers shared by the report-producing modules.

#include "pgnlab/transfer.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace pgn::detail {

inline bool finite(double x) { return std::isfinite(x); }

inline nlohmann::json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline Verdict make(const std::string& name, const std::string& statement, double lhs, double rhs, double tol) {
    Verdict v;
    v.name = name;
    v.statement = statement;
    v.lhs = lhs;
    v.rhs = rhs;
    v.tol = tol;
    return v;
}

// lhs <= rhs + tol; a miss fails only on converged data.
inline Verdict leq(const std::string& name, const std::string& statement, double lhs, double rhs, double tol,
            bool converged) {
    Verdict v = make(name, statement, lhs, rhs, tol);
    if (std::isnan(lhs) || std::isnan(rhs)) {
        v.status = Status::Inconclusive;
        v.detail = "undefined estimate";
    } else if (lhs <= rhs + tol || (std::isinf(lhs) && std::isinf(rhs) && lhs > 0 && rhs > 0)) {
        v.status = Status::Pass;
    } else {
        v.status = converged ? Status::Fail : Status::Inconclusive;
        if (!converged) v.detail = "estimates not converged";
    }
    return v;
}

} // namespace pgn::detail
