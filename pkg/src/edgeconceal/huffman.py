"""Baseline JPEG luminance Huffman tables (ITU-T T.81 Annex K) and MSB-first bit I/O."""

from __future__ import annotations

from .errors import DecodeError

DC_LUMA_BITS = (0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0)
DC_LUMA_VALUES = tuple(range(12))

AC_LUMA_BITS = (0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D)
AC_LUMA_VALUES = (
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
    0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
    0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16, 0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
    0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
    0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
    0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
    0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
    0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
    0xF9, 0xFA,
)

EOB = 0x00
ZRL = 0xF0


class HuffmanTable:
    """Canonical code built from a (BITS, HUFFVAL) pair."""

    def __init__(self, bits, values):
        if sum(bits) != len(values):
            raise ValueError("BITS counts do not match the number of values")
        self.encode: dict[int, tuple[int, int]] = {}
        self.decode: dict[tuple[int, int], int] = {}
        code = 0
        k = 0
        for length, count in enumerate(bits, start=1):
            for _ in range(count):
                self.encode[values[k]] = (code, length)
                self.decode[(length, code)] = values[k]
                code += 1
                k += 1
            code <<= 1
        self.max_length = len(bits)


DC_LUMA = HuffmanTable(DC_LUMA_BITS, DC_LUMA_VALUES)
AC_LUMA = HuffmanTable(AC_LUMA_BITS, AC_LUMA_VALUES)


class BitWriter:
    def __init__(self):
        self._acc = 0
        self._nbits = 0

    def write(self, value: int, nbits: int) -> None:
        self._acc = (self._acc << nbits) | (value & ((1 << nbits) - 1))
        self._nbits += nbits

    def getvalue(self) -> bytes:
        """Bytes written so far, last byte padded with 1-bits."""
        pad = -self._nbits % 8
        acc = (self._acc << pad) | ((1 << pad) - 1)
        return acc.to_bytes((self._nbits + pad) // 8, "big")


class BitReader:
    def __init__(self, data: bytes):
        self._value = int.from_bytes(data, "big")
        self._total = len(data) * 8
        self._pos = 0

    @property
    def remaining(self) -> int:
        return self._total - self._pos

    def read(self, nbits: int) -> int:
        if nbits > self.remaining:
            raise DecodeError(f"truncated payload: needed {nbits} bits at bit {self._pos}")
        self._pos += nbits
        return (self._value >> (self._total - self._pos)) & ((1 << nbits) - 1)

    def read_symbol(self, table: HuffmanTable) -> int:
        code = 0
        for length in range(1, table.max_length + 1):
            code = (code << 1) | self.read(1)
            symbol = table.decode.get((length, code))
            if symbol is not None:
                return symbol
        raise DecodeError(f"undefined Huffman code ending at bit {self._pos}")

    def rest(self) -> int:
        """Value of the unread bits."""
        return self._value & ((1 << self.remaining) - 1)
