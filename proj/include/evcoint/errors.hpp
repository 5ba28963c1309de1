#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evcoint {

/// Broad failure classes; the CLI maps these onto process exit codes.
enum class ErrorClass {
    Input,    ///< malformed or unusable data (exit 2)
    Numeric,  ///< factorization / rank / eigen failures (exit 3)
    Config,   ///< invalid run configuration (exit 4)
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(ErrorClass::Numeric, "dimension mismatch: " + what) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(std::size_t col)
        : Error(ErrorClass::Numeric, "design matrix is rank deficient at column " + std::to_string(col)), column(col) {}
    std::size_t column;
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what) : Error(ErrorClass::Numeric, "matrix not positive definite: " + what) {}
};

struct EigenFailure : Error {
    explicit EigenFailure(const std::string& what) : Error(ErrorClass::Numeric, "eigenvalue computation failed: " + what) {}
};

struct DegenerateRss : Error {
    explicit DegenerateRss(double rss)
        : Error(ErrorClass::Numeric, "restricted residual sum of squares is degenerate (" + std::to_string(rss) + "); series is fit perfectly"),
          rss(rss) {}
    double rss;
};

struct NonFiniteInput : Error {
    explicit NonFiniteInput(const std::string& what) : Error(ErrorClass::Input, "non-finite input: " + what) {}
};

struct SeriesTooShort : Error {
    SeriesTooShort(std::size_t have, std::size_t need)
        : Error(ErrorClass::Input, "series too short: " + std::to_string(have) + " observations, need at least " + std::to_string(need)) {}
};

struct EmptyStream : Error {
    EmptyStream() : Error(ErrorClass::Input, "no draws remain after burn-in") {}
};

struct NonFiniteLogPosterior : Error {
    explicit NonFiniteLogPosterior(std::size_t idx)
        : Error(ErrorClass::Numeric, "non-finite log-posterior at draw " + std::to_string(idx)), index(idx) {}
    std::size_t index;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorClass::Config, what) {}
};

}  // namespace evcoint
