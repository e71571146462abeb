"""Toy-width block-cipher modes: CBC-MAC, encrypt-last-block CBC-MAC, CMAC,
and a minimal counter-mode AEAD with a polynomial hash and truncated tag.

Block messages are lists of n-bit ints.  Raw-bit messages (CMAC padding path,
AEAD plaintext/associated data) are strings of '0'/'1' so partial blocks are
representable at any toy width.

Known-answer vectors serialize one record per line as space-separated
key=value fields with hex-encoded values (bit-strings keep an explicit length:
value "0x<hex>/<bitlen>").
"""

from __future__ import annotations

from dataclasses import dataclass

from .cipher_core import IdealCipher
from .gf2n import field, gf_mul


class EmptyMessage(ValueError):
    pass


class PartialBlock(ValueError):
    pass


class TagMismatch(ValueError):
    pass


class NonceWidth(ValueError):
    pass


@dataclass(frozen=True)
class AeadOutput:
    ciphertext: str  # bit-string, same length as the plaintext
    tag: str         # bit-string of width s


def _check_blocks(E: IdealCipher, blocks) -> None:
    if not blocks:
        raise EmptyMessage("MAC modes need at least one block")
    for b in blocks:
        E.params.check_block(b)


def cbc_mac(E: IdealCipher, k: int, blocks: list[int]) -> int:
    _check_blocks(E, blocks)
    acc = 0
    for b in blocks:
        acc = E.forward(k, acc ^ b)
    return acc


def ecbc_mac(E: IdealCipher, k1: int, k2: int, blocks: list[int]) -> int:
    return E.forward(k2, cbc_mac(E, k1, blocks))


def bits_to_blocks(bits: str, n: int) -> tuple[list[int], str]:
    """Split a bit-string into full n-bit blocks plus the leftover tail."""
    if bits.strip("01"):
        raise ValueError("message must be a string over {0,1}")
    full = len(bits) // n * n
    blocks = [int(bits[i:i + n], 2) for i in range(0, full, n)]
    return blocks, bits[full:]


def block_to_bits(b: int, n: int) -> str:
    return format(b, f"0{n}b")


def cmac_subkeys(E: IdealCipher, k: int) -> tuple[int, int]:
    """Doubling-derived final-block whitening keys: L*x for full final
    blocks, L*x^2 for padded partial ones, with L = E_k(0)."""
    f = field(E.params.n)
    k_full = gf_mul(E.forward(k, 0), 2, f)
    k_part = gf_mul(k_full, 2, f)
    return k_full, k_part


def cmac(E: IdealCipher, k: int, msg: str) -> int:
    if not msg:
        raise EmptyMessage("empty message")
    n = E.params.n
    blocks, tail = bits_to_blocks(msg, n)
    k_full, k_part = cmac_subkeys(E, k)
    if tail or not blocks:
        pad = tail + "1" + "0" * (n - len(tail) - 1)
        last = int(pad, 2) ^ k_part
    else:
        last = blocks.pop() ^ k_full
    acc = 0
    for b in blocks:
        acc = E.forward(k, acc ^ b)
    return E.forward(k, acc ^ last)


def _ghash(E: IdealCipher, hkey: int, aad: str, ct: str) -> int:
    n = E.params.n
    f = field(n)
    acc = 0

    def absorb(bits: str):
        nonlocal acc
        blocks, tail = bits_to_blocks(bits, n)
        if tail:
            blocks.append(int(tail + "0" * (n - len(tail)), 2))
        for b in blocks:
            acc = gf_mul(acc ^ b, hkey, f)

    absorb(aad)
    absorb(ct)
    half = n // 2
    length_block = ((len(aad) % (1 << half)) << half) | (len(ct) % (1 << half))
    acc = gf_mul(acc ^ length_block, hkey, f)
    return acc


def _ctr_stream(E: IdealCipher, k: int, nonce: int, nbits: int) -> str:
    n = E.params.n
    half = n // 2
    out = []
    ctr = 1
    while sum(len(s) for s in out) < nbits:
        if ctr >= (1 << half):
            raise ValueError("message too long for the counter space")
        block = E.forward(k, (nonce << half) | ctr)
        out.append(block_to_bits(block, n))
        ctr += 1
    return "".join(out)[:nbits]


def gcm_seal(E: IdealCipher, k: int, nonce: int, aad: str, pt: str, s: int) -> AeadOutput:
    n = E.params.n
    if n % 2:
        raise NonceWidth("counter-mode AEAD needs even block width")
    half = n // 2
    if not 0 <= nonce < (1 << half):
        raise NonceWidth(f"nonce must be {half}-bit")
    if not 1 <= s <= n:
        raise ValueError("tag width must be in [1, n]")
    stream = _ctr_stream(E, k, nonce, len(pt))
    ct = "".join("1" if a != b else "0" for a, b in zip(pt, stream))
    hkey = E.forward(k, 0)
    mask = E.forward(k, nonce << half)  # counter 0 reserved for the tag
    tag_full = _ghash(E, hkey, aad, ct) ^ mask
    tag = block_to_bits(tag_full, n)[:s]
    return AeadOutput(ciphertext=ct, tag=tag)


def gcm_open(E: IdealCipher, k: int, nonce: int, aad: str, out: AeadOutput) -> str:
    n = E.params.n
    half = n // 2
    if not 0 <= nonce < (1 << half):
        raise NonceWidth(f"nonce must be {half}-bit")
    hkey = E.forward(k, 0)
    mask = E.forward(k, nonce << half)
    tag_full = _ghash(E, hkey, aad, out.ciphertext) ^ mask
    expect = block_to_bits(tag_full, n)[:len(out.tag)]
    if expect != out.tag:
        raise TagMismatch("authentication tag does not verify")
    stream = _ctr_stream(E, k, nonce, len(out.ciphertext))
    return "".join("1" if a != b else "0" for a, b in zip(out.ciphertext, stream))


def format_kat_record(fields: dict[str, object]) -> str:
    """One line per vector: key=value fields, ints as hex, bit-strings as
    0x<hex>/<bitlen> (so leading zeros survive)."""
    parts = []
    for key, val in fields.items():
        if isinstance(val, str):
            enc = format(int(val, 2), "x") if val else "0"
            parts.append(f"{key}=0x{enc}/{len(val)}")
        elif isinstance(val, int):
            parts.append(f"{key}=0x{val:x}")
        else:
            parts.append(f"{key}={val}")
    return " ".join(parts)


def parse_kat_record(line: str) -> dict[str, object]:
    out: dict[str, object] = {}
    for part in line.split():
        key, val = part.split("=", 1)
        if "/" in val:
            hexpart, blen = val.split("/")
            out[key] = format(int(hexpart, 16), f"0{int(blen)}b") if int(blen) else ""
        elif val.startswith("0x"):
            out[key] = int(val, 16)
        else:
            out[key] = val
    return out
