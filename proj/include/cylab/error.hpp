#ifndef CYLAB_ERROR_HPP
#define CYLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cylab {

// Every failure the engine can report. Bounded-search failures (the *Bound*
// kinds plus MatchingSearchExhausted) are "inconclusive" rather than
// refutations; scenario code maps them to the inconclusive-at-bound status.
enum class ErrorKind {
    DivisionByZero,
    FieldMismatch,
    AmbientMismatch,
    MissingImage,
    UnknownVariable,
    ParseError,
    ResourceBudgetExceeded,
    NotMember,
    NoPreimage,
    InconsistentPresentation,
    RelationNotPreserved,
    NotInverse,
    VariableClash,
    BoundTooSmall,
    NotEquivariant,
    NotWellDefined,
    BoundExceeded,
    NoSliceWithinBound,
    PresentationBudgetExceeded,
    NotFixedPointFree,
    MatchingSearchExhausted,
    NotClearable,
    PreimageFailure,
    InvalidParameter,
    IoError,
};

const char* error_kind_name(ErrorKind k);

// Detail strings carry the offending objects in canonical text form so they
// can be embedded verbatim into reports.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message, std::string detail = "")
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind),
          message_(std::move(message)),
          detail_(std::move(detail)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& message() const { return message_; }
    const std::string& detail() const { return detail_; }

    bool inconclusive() const {
        switch (kind_) {
            case ErrorKind::ResourceBudgetExceeded:
            case ErrorKind::BoundExceeded:
            case ErrorKind::NoSliceWithinBound:
            case ErrorKind::PresentationBudgetExceeded:
            case ErrorKind::MatchingSearchExhausted:
            case ErrorKind::NotClearable:
            case ErrorKind::BoundTooSmall:
                return true;
            default:
                return false;
        }
    }

  private:
    ErrorKind kind_;
    std::string message_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message, std::string detail = "") {
    throw Error(kind, std::move(message), std::move(detail));
}

}  // namespace cylab

#endif
