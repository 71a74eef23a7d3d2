"""Generic server interface: wire language, framing and the request vocabulary.

The server itself lives in :mod:`schedlang.gsi.server` and the clients in
:mod:`schedlang.gsi.client`; they are not imported here so that the kernel
can depend on the envelope types without a cycle.
"""

from ..featstruct import DuplicateFeatureError, FSError, FSSyntaxError, Sym, decode, encode, get_path, validate
from ..framing import ConnectionClosedMidFrame, FrameDecoder, FrameTooLarge, frame, read_frame, unframe
from .protocol import OPS, STATUSES, ProtocolError, Request, Response

__all__ = [
    "ConnectionClosedMidFrame",
    "DuplicateFeatureError",
    "FSError",
    "FSSyntaxError",
    "FrameDecoder",
    "FrameTooLarge",
    "OPS",
    "ProtocolError",
    "Request",
    "Response",
    "STATUSES",
    "Sym",
    "decode",
    "encode",
    "frame",
    "get_path",
    "read_frame",
    "unframe",
    "validate",
]
