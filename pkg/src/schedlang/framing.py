"""Length-prefixed message framing (4-byte big-endian length + payload)."""

from __future__ import annotations

import asyncio
import struct

HEADER = struct.Struct(">I")
DEFAULT_MAX_FRAME = 1 << 20


class FrameError(Exception):
    pass


class FrameTooLarge(FrameError):
    pass


class ConnectionClosedMidFrame(FrameError):
    pass


def frame(payload: bytes, max_size: int = DEFAULT_MAX_FRAME) -> bytes:
    if len(payload) > max_size:
        raise FrameTooLarge(f"payload of {len(payload)} bytes exceeds {max_size}")
    return HEADER.pack(len(payload)) + payload


class FrameDecoder:
    """Incremental decoder; feed it reads of any size, collect whole messages."""

    def __init__(self, max_size: int = DEFAULT_MAX_FRAME) -> None:
        self.max_size = max_size
        self._buf = bytearray()

    def feed(self, data: bytes) -> list[bytes]:
        self._buf.extend(data)
        messages = []
        while len(self._buf) >= HEADER.size:
            (length,) = HEADER.unpack_from(self._buf)
            if length > self.max_size:
                raise FrameTooLarge(f"announced frame of {length} bytes exceeds {self.max_size}")
            end = HEADER.size + length
            if len(self._buf) < end:
                break
            messages.append(bytes(self._buf[HEADER.size:end]))
            del self._buf[:end]
        return messages

    @property
    def pending(self) -> int:
        return len(self._buf)

    def close(self) -> None:
        """Signal end of stream; raises if a partial frame is still buffered."""
        if self._buf:
            raise ConnectionClosedMidFrame(f"{len(self._buf)} bytes of an incomplete frame")


def unframe(data: bytes, max_size: int = DEFAULT_MAX_FRAME) -> list[bytes]:
    decoder = FrameDecoder(max_size)
    messages = decoder.feed(data)
    decoder.close()
    return messages


async def read_frame(reader: asyncio.StreamReader, max_size: int = DEFAULT_MAX_FRAME) -> bytes | None:
    """Read one frame; None on clean EOF between frames."""
    try:
        header = await reader.readexactly(HEADER.size)
    except asyncio.IncompleteReadError as exc:
        if not exc.partial:
            return None
        raise ConnectionClosedMidFrame("stream ended inside a frame header") from exc
    (length,) = HEADER.unpack(header)
    if length > max_size:
        raise FrameTooLarge(f"announced frame of {length} bytes exceeds {max_size}")
    try:
        return await reader.readexactly(length)
    except asyncio.IncompleteReadError as exc:
        raise ConnectionClosedMidFrame("stream ended inside a frame body") from exc
