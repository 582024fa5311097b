"""Key and signature sizes: measured for each scheme here, plus SPHINCS+ reference rows.

The SPHINCS+ rows are published reference figures, not measurements; full
SPHINCS+ (FORS, hypertree) is not implemented in this package.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import api, lattice

# fixed seed so the table is byte-stable
SIZES_SEED = bytes(range(32))
SIZES_MESSAGE = b"size measurement"

MEASURED = "measured"
REFERENCE = "published reference"


@dataclass(frozen=True)
class SizeTableRow:
    method_name: str
    public_key_bytes: int
    secret_key_bytes: int
    signature_bytes: int
    security_level: str
    source: str = MEASURED


REFERENCE_ROWS = (
    SizeTableRow("SPHINCS+ SHA-256 128-bit", 32, 64, 17088, "1 (128-bit)", REFERENCE),
    SizeTableRow("SPHINCS+ SHA-256 192-bit", 48, 96, 35664, "3 (192-bit)", REFERENCE),
    SizeTableRow("SPHINCS+ SHA-256 256-bit", 64, 128, 49856, "5 (256-bit)", REFERENCE),
)

_P = lattice.DEFAULT_PARAMS
_DESCRIPTIONS = {
    "rsa": (f"RSA-{api.DEFAULT_RSA_BITS} textbook", "trapdoor; unpadded"),
    "lamport": ("Lamport SHA-256", "one-time"),
    "wots": ("WOTS w=256 (no checksum)", "one-time; malleable"),
    "wots-checksum": ("WOTS w=256 + checksum", "one-time"),
    "merkle": (f"Merkle WOTS h={api.DEFAULT_MERKLE_HEIGHT}", f"{1 << api.DEFAULT_MERKLE_HEIGHT} uses"),
    "lattice-fs": (f"Lattice FS q={_P.q} n={_P.n} m={_P.m}", "toy parameters"),
}


def measure(scheme: str, seed: bytes = SIZES_SEED) -> SizeTableRow:
    record = api.keygen(scheme, {}, seed)
    sig, _ = api.sign(record, SIZES_MESSAGE)
    name, level = _DESCRIPTIONS[scheme]
    # signature size excludes the 1-byte scheme tag
    return SizeTableRow(name, len(record.public_blob), len(record.secret_blob), len(sig) - 1, level)


def size_table(schemes: list[str] | None = None) -> list[SizeTableRow]:
    for s in schemes or ():
        api.scheme_tag(s)
    rows = [measure(s) for s in api.SCHEMES if not schemes or s in schemes]
    return rows + list(REFERENCE_ROWS)


_HEADERS = ("method", "public key", "secret key", "signature", "security", "source")


def _cells(row: SizeTableRow) -> tuple[str, ...]:
    return (row.method_name, str(row.public_key_bytes), str(row.secret_key_bytes),
            str(row.signature_bytes), row.security_level, row.source)


def format_table(rows: list[SizeTableRow]) -> str:
    cells = [_HEADERS] + [_cells(r) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(_HEADERS))]
    numeric = {1, 2, 3}
    lines = []
    for k, c in enumerate(cells):
        parts = [
            c[i].rjust(widths[i]) if i in numeric and k else c[i].ljust(widths[i])
            for i in range(len(c))
        ]
        lines.append("  ".join(parts).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def format_csv(rows: list[SizeTableRow]) -> str:
    return "".join(", ".join(_cells(r)) + "\n" for r in rows)
