#pragma once

#include "tmoment/io.hpp"

#include <cmath>
#include <string>

namespace th {

inline std::string fixture(const std::string& name) { return std::string(TMOMENT_FIXTURE_DIR) + "/" + name; }

inline tmoment::Multisequence moments(const std::string& name)
{
    return tmoment::read_moments(tmoment::load_json(fixture(name)));
}

inline tmoment::Scalar S(const char* text) { return tmoment::Scalar::parse(text); }

inline tmoment::Polynomial P(std::initializer_list<std::pair<tmoment::MultiIndex, const char*>> terms, int d = 2)
{
    tmoment::Polynomial p(d);
    for (const auto& [e, c] : terms) p.add_term(e, S(c));
    return p;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b)); }

}  // namespace th
