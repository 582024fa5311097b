"""Key files and the persist-before-release signing discipline.

File layout (all integers big-endian)::

    magic "SGBK" | scheme tag (1) | version (1)
    len (4) | public section
    len (4) | secret section      (empty in a public-key export)
    len (4) | state section       uses_consumed (8) | uses_max (8, 0 = unbounded)

Signing takes an exclusive ``flock`` on a ``<path>.lock`` sidecar, writes the
advanced usage counter with an fsync'd atomic rename, and only then returns
the signature. A crash after the write wastes one use; it never allows reuse.
"""
from __future__ import annotations

import fcntl
import os
import struct
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator

from .api import SCHEME_TAGS, TAG_SCHEMES, KeyRecord, sign
from .errors import InvalidInputError

MAGIC = b"SGBK"
VERSION = 1
_HEADER = struct.Struct(">4sBB")
_STATE = struct.Struct(">QQ")


def encode_record(record: KeyRecord, public_only: bool = False) -> bytes:
    out = [_HEADER.pack(MAGIC, SCHEME_TAGS[record.scheme], VERSION)]
    if public_only:
        sections = [record.public_blob, b"", b""]
    else:
        state = _STATE.pack(record.uses_consumed, record.uses_max or 0)
        sections = [record.public_blob, record.secret_blob, state]
    for sec in sections:
        out.append(len(sec).to_bytes(4, "big") + sec)
    return b"".join(out)


def is_key_file(data: bytes) -> bool:
    return data[:4] == MAGIC


def decode_record(data: bytes) -> KeyRecord:
    if len(data) < _HEADER.size or not is_key_file(data):
        raise InvalidInputError("not a key file (bad magic)")
    _, tag, version = _HEADER.unpack_from(data)
    if version != VERSION:
        raise InvalidInputError(f"unsupported key file version {version}")
    if tag not in TAG_SCHEMES:
        raise InvalidInputError(f"unknown scheme tag 0x{tag:02x}")
    pos = _HEADER.size
    sections = []
    for _ in range(3):
        if pos + 4 > len(data):
            raise InvalidInputError("truncated key file")
        n = int.from_bytes(data[pos:pos + 4], "big")
        pos += 4
        if pos + n > len(data):
            raise InvalidInputError("truncated key file")
        sections.append(data[pos:pos + n])
        pos += n
    if pos != len(data):
        raise InvalidInputError("trailing bytes after key file sections")
    public, secret, state = sections
    if not state:
        return KeyRecord(TAG_SCHEMES[tag], public, secret)
    if len(state) != _STATE.size:
        raise InvalidInputError("malformed state section")
    used, cap = _STATE.unpack(state)
    return KeyRecord(TAG_SCHEMES[tag], public, secret, used, cap or None)


def write_atomic(path: str | os.PathLike, data: bytes) -> None:
    path = Path(path)
    tmp = path.with_name(f".{path.name}.tmp")
    with open(tmp, "wb") as f:
        f.write(data)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
    dir_fd = os.open(path.parent, os.O_RDONLY)
    try:
        os.fsync(dir_fd)
    finally:
        os.close(dir_fd)


def load_record(path: str | os.PathLike) -> KeyRecord:
    return decode_record(Path(path).read_bytes())


def save_record(path: str | os.PathLike, record: KeyRecord, public_only: bool = False) -> None:
    write_atomic(path, encode_record(record, public_only))


@contextmanager
def exclusive(path: str | os.PathLike) -> Iterator[None]:
    """Hold an exclusive lock for ``path`` (via a sidecar ``.lock`` file)."""
    lock_path = Path(f"{path}.lock")
    with open(lock_path, "a+b") as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def sign_with_store(path: str | os.PathLike, message: bytes,
                    after_persist: Callable[[], None] | None = None) -> bytes:
    """Sign with the key at ``path``; the usage counter is durable before return.

    ``after_persist`` runs between the state write and the return (a fault
    injection point for tests).
    """
    with exclusive(path):
        record = load_record(path)
        sig, updated = sign(record, message)
        if updated != record:
            save_record(path, updated)
        if after_persist is not None:
            after_persist()
        return sig
