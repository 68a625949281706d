#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexstat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition or invalid argument combination.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numeric function was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t byte_offset)
      : Error(what + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Malformed resource file (lemma map, merge rules, config, ...).
class ResourceError : public Error {
 public:
  ResourceError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), path_(path), line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexstat
