#pragma once

#include <stdexcept>
#include <string>

namespace aha {

// Dimension, range and precondition violations.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation was called on an object that is not ready for it
// (e.g. encoding with filters that were never trained or loaded).
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Loss became NaN or infinite during optimisation.
class TrainingDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Hopfield storage was asked to memorise linearly dependent patterns.
class DegeneratePattern : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Retrieval conditioning received a cue with no mass.
class DegenerateCue : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dataset files missing, unreadable or malformed.
class IngestionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace aha
