#pragma once

#include <stdexcept>
#include <string>

namespace vscan {

/// Bad root path, unreadable config, or bad flag value.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rule file could not be parsed or a rule is invalid.
class RuleLoadError : public std::runtime_error {
  public:
    RuleLoadError(std::string rule_id, std::size_t line, const std::string& what)
        : std::runtime_error(format(rule_id, line, what)), rule_id_(std::move(rule_id)), line_(line) {}

    const std::string& rule_id() const noexcept { return rule_id_; }
    std::size_t line() const noexcept { return line_; }

  private:
    static std::string format(const std::string& id, std::size_t line, const std::string& what) {
        std::string msg = "rule load error";
        if (!id.empty()) msg += " in rule '" + id + "'";
        if (line > 0) msg += " at line " + std::to_string(line);
        return msg + ": " + what;
    }

    std::string rule_id_;
    std::size_t line_;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BaselineError : public std::runtime_error {
  public:
    enum class Kind { Io, Format, Checksum, Incompatible };

    BaselineError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

class TriageError : public std::runtime_error {
  public:
    enum class Kind { InvalidState, InvalidTransition, Locked, Io, Format };

    TriageError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

}  // namespace vscan
