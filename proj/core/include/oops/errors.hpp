#pragma once

#include <stdexcept>
#include <string>

namespace oops {

// Base class for every fatal pipeline error. `stage` names the pipeline
// stage for diagnostics ("tech_analysis", "endpoint_extraction", ...).
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, const std::string& message)
        : std::runtime_error(stage.empty() ? message : "[" + stage + "] " + message),
          stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

class IoError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

class ConfigError : public PipelineError {
public:
    explicit ConfigError(const std::string& message) : PipelineError("config", message) {}
};

// HTTP failure that persisted through the retry budget.
class TransportError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// A replay-mode lookup did not find the request fingerprint. Never falls
// back to a live call.
class ReplayMiss : public PipelineError {
public:
    ReplayMiss(std::string stage, const std::string& fingerprint)
        : PipelineError(std::move(stage), "replay transcript has no entry for fingerprint " + fingerprint),
          fingerprint_(fingerprint) {}

    const std::string& fingerprint() const noexcept { return fingerprint_; }

private:
    std::string fingerprint_;
};

class MalformedBackendResponse : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// Tool loop hit max_rounds without the model emitting the output tool.
class ToolLoopExhausted : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// A tool call kept failing after its error was reported back to the model.
class ToolExecutionError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

} // namespace oops
