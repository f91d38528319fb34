#pragma once

#include <stdexcept>
#include <string>

namespace mbfo {

// Exit-code categories used by the CLI: 1 usage/config, 2 I/O, 3 refusal.
class Error : public std::runtime_error {
public:
  Error(std::string msg, int exit_code) : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

private:
  int exit_code_;
};

class FileNotFound : public Error {
public:
  explicit FileNotFound(const std::string& path) : Error("file not found: " + path, 2) {}
};

class UnsupportedFormat : public Error {
public:
  explicit UnsupportedFormat(const std::string& msg) : Error("unsupported format: " + msg, 2) {}
};

class CorruptFile : public Error {
public:
  explicit CorruptFile(const std::string& msg) : Error("corrupt file: " + msg, 2) {}
};

class IoFailure : public Error {
public:
  explicit IoFailure(const std::string& msg) : Error("i/o failure: " + msg, 2) {}
};

class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg, 3) {}
};

class EmptyReference : public Error {
public:
  EmptyReference() : Error("reference edge map has no edge pixels", 3) {}
};

class MTooLarge : public Error {
public:
  explicit MTooLarge(int m) : Error("exhaustive search limited to m <= 4, got m = " + std::to_string(m), 3) {}
};

class InvalidConfig : public Error {
public:
  explicit InvalidConfig(const std::string& msg) : Error("invalid config: " + msg, 1) {}
};

class UnknownKind : public Error {
public:
  explicit UnknownKind(const std::string& kind) : Error("unknown synthetic image kind: " + kind, 1) {}
};

}  // namespace mbfo
