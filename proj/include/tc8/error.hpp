#pragma once

#include <stdexcept>
#include <string>

namespace tc8 {

enum class Errc {
    AsymmetricAdjacency = 1,
    LoopOrMultiEdge,
    Disconnected,
    NonPlanarEmbedding,
    UnknownVertex,
    ParseError,
    ColorOutOfRange,
    InstanceTooLarge,
    ElementAlreadyColored,
    InapplicableMove,
    NoAvailableColor,
    PreconditionViolated,
    ReducedGraphNotColorable,
    ScriptCaseMiss,
    LogMismatch,
    DeltaExceeded,
    GenerationStalled,
    UnknownPattern,
    InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg, int line = 0);
    Errc code() const { return code_; }
    // 1-based input line for parse errors, 0 otherwise.
    int line() const { return line_; }

private:
    Errc code_;
    int line_;
};

} // namespace tc8
