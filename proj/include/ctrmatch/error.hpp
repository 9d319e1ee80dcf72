#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctrmatch {

/// Base for every failure raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A source-located failure (lexing or parsing a contract file).
class SourceError : public Error
{
  public:
    SourceError(std::size_t line, std::size_t column, const std::string &message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

class LexError : public SourceError
{
  public:
    using SourceError::SourceError;
};

class ParseError : public SourceError
{
  public:
    ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
        : SourceError(line, column, "expected " + expected + ", found " + found), expected_(std::move(expected)),
          found_(std::move(found))
    {
    }

    const std::string &expected() const noexcept { return expected_; }
    const std::string &found() const noexcept { return found_; }

  private:
    std::string expected_;
    std::string found_;
};

class DuplicateProtocolError : public SourceError
{
  public:
    DuplicateProtocolError(std::size_t line, std::size_t column)
        : SourceError(line, column, "contract declares more than one protocol block")
    {
    }
};

class MissingProtocolError : public SourceError
{
  public:
    MissingProtocolError(std::size_t line, std::size_t column)
        : SourceError(line, column, "contract declares no protocol block")
    {
    }
};

class DuplicateComponentError : public Error
{
  public:
    explicit DuplicateComponentError(const std::string &component)
        : Error("duplicate component '" + component + "' in architecture"), component_(component)
    {
    }

    const std::string &component() const noexcept { return component_; }

  private:
    std::string component_;
};

/// GraphML document does not follow the expected schema.
class FormatError : public Error
{
  public:
    using Error::Error;
};

class ProtocolParseError : public Error
{
  public:
    using Error::Error;
};

/// Raised for protocol operators that have no assigned meaning (`^`).
class UnsupportedOperatorError : public ProtocolParseError
{
  public:
    explicit UnsupportedOperatorError(const std::string &op)
        : ProtocolParseError("unsupported protocol operator '" + op + "'")
    {
    }
};

class UnmappedSymbolError : public Error
{
  public:
    explicit UnmappedSymbolError(const std::string &symbol)
        : Error("no substitution for protocol symbol '" + symbol + "'"), symbol_(symbol)
    {
    }

    const std::string &symbol() const noexcept { return symbol_; }

  private:
    std::string symbol_;
};

class SizeError : public Error
{
  public:
    using Error::Error;
};

} // namespace ctrmatch
