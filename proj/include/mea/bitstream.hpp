#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mea/errors.hpp"

namespace mea {

// MSB-first bit packer. Multi-bit fields are big-endian; width-0 fields
// write nothing and only accept the value 0.
class BitWriter {
public:
    void write(std::uint64_t value, int bits) {
        if (bits < 0 || bits > 64) throw Error("bit width out of range");
        if (bits < 64 && value >> bits) throw Error("field overflow: value does not fit its width");
        for (int i = bits - 1; i >= 0; --i) {
            if (bit_pos_ == 0) bytes_.push_back(0);
            bytes_.back() |= static_cast<std::uint8_t>((value >> i) & 1) << (7 - bit_pos_);
            bit_pos_ = (bit_pos_ + 1) & 7;
        }
    }

    void write_byte(std::uint8_t b) { write(b, 8); }

    void write_u16(std::uint16_t v) { write(v, 16); }
    void write_u32(std::uint32_t v) { write(v, 32); }

    std::size_t bit_count() const { return bytes_.size() * 8 - (bit_pos_ ? 8 - bit_pos_ : 0); }

    // Zero-pads to a byte boundary and hands out the buffer.
    std::vector<std::uint8_t> take() {
        bit_pos_ = 0;
        return std::move(bytes_);
    }

private:
    std::vector<std::uint8_t> bytes_;
    int bit_pos_ = 0;  // bits used in the last byte, 0 = aligned
};

class BitReader {
public:
    BitReader(const std::uint8_t* data, std::size_t size) : data_(data), bit_size_(size * 8) {}
    explicit BitReader(const std::vector<std::uint8_t>& bytes) : BitReader(bytes.data(), bytes.size()) {}

    std::uint64_t read(int bits) {
        if (bits < 0 || bits > 64) throw Error("bit width out of range");
        if (pos_ + bits > bit_size_) throw ArchiveError("truncated archive");
        std::uint64_t value = 0;
        for (int i = 0; i < bits; ++i, ++pos_) {
            value = (value << 1) | ((data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1);
        }
        return value;
    }

    std::uint8_t read_byte() { return static_cast<std::uint8_t>(read(8)); }
    std::uint16_t read_u16() { return static_cast<std::uint16_t>(read(16)); }
    std::uint32_t read_u32() { return static_cast<std::uint32_t>(read(32)); }

    std::size_t bit_position() const { return pos_; }
    std::size_t bits_left() const { return bit_size_ - pos_; }

private:
    const std::uint8_t* data_;
    std::size_t bit_size_;
    std::size_t pos_ = 0;
};

}  // namespace mea
