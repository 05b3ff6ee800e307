#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsss_stego {

// Codes passed to a decoder or stats routine are not a valid 16-ary set.
class InvalidCodeSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A chip sequence handed to the embedder is not one of the base codes.
class InvalidCarrier : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Covert payload does not fit the slots the embedding schedule provides.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t payload_bits, std::size_t capacity_bits)
      : std::runtime_error("stego payload of " + std::to_string(payload_bits) +
                           " bits exceeds scheduled capacity of " +
                           std::to_string(capacity_bits) + " bits"),
        payload_bits_(payload_bits),
        capacity_bits_(capacity_bits) {}

  std::size_t payload_bits() const noexcept { return payload_bits_; }
  std::size_t capacity_bits() const noexcept { return capacity_bits_; }

 private:
  std::size_t payload_bits_;
  std::size_t capacity_bits_;
};

// Chip count not a whole number of 32-chip symbols.
class FramingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed chip-stream file; offset() is the byte where parsing stopped.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace dsss_stego
