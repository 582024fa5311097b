"""Command-line front end.

Exit codes: 0 success / valid, 1 verification failed, 2 usage or malformed
input, 3 key exhausted.
"""
from __future__ import annotations

import argparse
import os
import secrets
import sys
from pathlib import Path

from . import api, keystore, sizes
from .errors import InvalidInputError, KeyExhaustedError, ParameterError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3

# test hook: die right after the usage counter hits disk
CRASH_ENV = "SIGBENCH_CRASH_AFTER_PERSIST"


def _seed(text: str | None) -> bytes:
    if text is None:
        return secrets.token_bytes(32)
    try:
        seed = bytes.fromhex(text)
    except ValueError:
        raise InvalidInputError("--seed must be hexadecimal") from None
    if len(seed) != 32:
        raise InvalidInputError("--seed must encode exactly 32 bytes (64 hex digits)")
    return seed


def cmd_keygen(args) -> int:
    scheme = args.scheme
    params = {}
    if args.checksum:
        if scheme == "wots":
            scheme = "wots-checksum"
        elif scheme == "merkle":
            params["checksum"] = True
        elif scheme != "wots-checksum":
            raise ParameterError(f"--checksum does not apply to {scheme}")
    if args.height is not None:
        params["height"] = args.height
    if args.bits is not None:
        params["bits"] = args.bits
    api.scheme_tag(scheme)
    record = api.keygen(scheme, params, _seed(args.seed))
    out = Path(args.out)
    keystore.save_record(out, record)
    keystore.save_record(f"{out}.pub", record, public_only=True)
    print(f"{scheme} key written to {out} (public key also in {out}.pub, "
          f"{len(record.public_blob)} bytes)", file=sys.stderr)
    print(record.public_blob.hex())
    return EXIT_OK


def cmd_sign(args) -> int:
    message = Path(args.message).read_bytes()
    hook = (lambda: os._exit(70)) if os.environ.get(CRASH_ENV) else None
    sig = keystore.sign_with_store(args.key, message, after_persist=hook)
    keystore.write_atomic(args.out, sig)
    print(f"signature ({len(sig)} bytes) written to {args.out}", file=sys.stderr)
    return EXIT_OK


def _public_key(path: str, sig: bytes) -> tuple[str, bytes]:
    data = Path(path).read_bytes()
    if keystore.is_key_file(data):
        rec = keystore.decode_record(data)
        return rec.scheme, rec.public_blob
    # a bare hex dump of the public key; the scheme comes from the signature tag
    try:
        blob = bytes.fromhex(data.decode("ascii").strip())
    except (UnicodeDecodeError, ValueError):
        raise InvalidInputError(f"{path} is neither a key file nor hex") from None
    return api.split_signature(sig)[0], blob


def cmd_verify(args) -> int:
    message = Path(args.message).read_bytes()
    sig = Path(args.signature).read_bytes()
    scheme, public = _public_key(args.public_key, sig)
    if api.verify(scheme, public, message, sig):
        print("OK")
        return EXIT_OK
    print("FAIL")
    return EXIT_FAIL


def cmd_sizes(args) -> int:
    rows = sizes.size_table(args.scheme or None)
    fmt = sizes.format_csv if args.format == "csv" else sizes.format_table
    sys.stdout.write(fmt(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigbench",
        description="Keygen, sign and verify with RSA, Lamport, WOTS, Merkle and lattice Fiat-Shamir signatures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kg = sub.add_parser("keygen", help="generate a key file")
    kg.add_argument("--scheme", required=True, help=", ".join(api.SCHEMES))
    kg.add_argument("--height", type=int, help="merkle tree height (default 8)")
    kg.add_argument("--bits", type=int, help="RSA modulus size (default 512)")
    kg.add_argument("--checksum", action="store_true", help="Winternitz checksum chains (wots, merkle)")
    kg.add_argument("--seed", help="32-byte seed as hex; system entropy when absent")
    kg.add_argument("--out", required=True, help="key file to write; <out>.pub gets the public part")
    kg.set_defaults(func=cmd_keygen)

    sg = sub.add_parser("sign", help="sign a file")
    sg.add_argument("key")
    sg.add_argument("message")
    sg.add_argument("--out", required=True, help="signature file to write")
    sg.set_defaults(func=cmd_sign)

    vf = sub.add_parser("verify", help="verify a signature; prints OK or FAIL")
    vf.add_argument("public_key", help="key file, .pub export, or hex public key")
    vf.add_argument("message")
    vf.add_argument("signature")
    vf.set_defaults(func=cmd_verify)

    sz = sub.add_parser("sizes", help="print the key/signature size table")
    sz.add_argument("--scheme", action="append", help="restrict measured rows (repeatable)")
    sz.add_argument("--format", choices=("table", "csv"), default="table")
    sz.set_defaults(func=cmd_sizes)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyExhaustedError as exc:
        print(f"sigbench: key exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (InvalidInputError, ParameterError) as exc:
        print(f"sigbench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sigbench: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
