#include "bell/rational.hpp"

#include <cassert>

#include "bell/errors.hpp"

namespace bell {

namespace {

bool valid_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view body = trimmed(text);
    const auto slash = body.find('/');
    std::string_view num_part = body.substr(0, slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    num_part = trimmed(num_part);
    den_part = trimmed(den_part);
    if (!valid_integer_token(num_part) || !valid_integer_token(den_part)) {
        fail(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
    }
    const BigInt num{std::string(num_part)};
    const BigInt den{std::string(den_part)};
    if (den == 0) {
        fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    // Division canonicalizes sign and reduces.
    return Rational(num) / Rational(den);
}

std::string to_string(const Rational& value) {
    return value.str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

Rational dot(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
    }
    return acc;
}

Rational sum(const RatVec& values) {
    Rational acc = 0;
    for (const Rational& v : values) acc += v;
    return acc;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyParty: return "EmptyParty";
        case ErrorCode::EmptyMeasurement: return "EmptyMeasurement";
        case ErrorCode::DuplicateOutcome: return "DuplicateOutcome";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::BadNormalization: return "BadNormalization";
        case ErrorCode::MagnitudeExceedsBound: return "MagnitudeExceedsBound";
        case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IterationLimit: return "IterationLimit";
        case ErrorCode::NotOptimal: return "NotOptimal";
        case ErrorCode::InvalidCertificate: return "InvalidCertificate";
        case ErrorCode::SizeLimit: return "SizeLimit";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NotAState: return "NotAState";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace bell
