#!/usr/bin/env python3
# Copyright 2026 The dualcore Authors
# SPDX-License-Identifier: Apache-2.0
"""Generates data/kat_vectors.txt from the OpenSSL-backed `cryptography` package.

Every expected value in the corpus comes from this script, never from the C++
implementation. AES-192 XTS is not offered by OpenSSL, so it is computed with a
small Python XTS built on OpenSSL's AES-ECB; that helper is first checked
against OpenSSL's own XTS for the 128/256-bit key sizes.

Line format (hex values, one vector per line):
    <kind> name=value ...
kinds: aes ecb cbc ctr gcm xts des tdes. `in`/`out` hold the encrypt direction;
the runner also checks the inverse.
"""

import argparse
import random
import warnings

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    try:
        from cryptography.hazmat.decrepit.ciphers.algorithms import TripleDES
    except ImportError:  # older releases
        from cryptography.hazmat.primitives.ciphers.algorithms import TripleDES


def run(alg, mode, data, encrypt=True):
    c = Cipher(alg, mode)
    op = c.encryptor() if encrypt else c.decryptor()
    return op.update(data) + op.finalize()


def aes_ecb(key, data):
    return run(algorithms.AES(key), modes.ECB(), data)


def mul_alpha(t):
    v = int.from_bytes(t, "little") << 1
    if v >> 128:
        v = (v & ((1 << 128) - 1)) ^ 0x87
    return v.to_bytes(16, "little")


def xor(a, b):
    return bytes(x ^ y for x, y in zip(a, b))


def py_xts_encrypt(k1, k2, tweak, pt):
    t = aes_ecb(k2, tweak)
    n = len(pt)
    full, tail = divmod(n, 16)
    plain = full if tail == 0 else full - 1
    out = bytearray()
    for j in range(plain):
        blk = pt[16 * j:16 * j + 16]
        out += xor(aes_ecb(k1, xor(blk, t)), t)
        t = mul_alpha(t)
    if tail:
        last = pt[16 * plain:16 * plain + 16]
        cc = xor(aes_ecb(k1, xor(last, t)), t)
        t2 = mul_alpha(t)
        pp = pt[16 * plain + 16:] + cc[tail:]
        out += xor(aes_ecb(k1, xor(pp, t2)), t2)
        out += cc[:tail]
    return bytes(out)


def ossl_xts(k1, k2, tweak, pt):
    return run(algorithms.AES(k1 + k2), modes.XTS(tweak), pt)


def tdes(k1, k2, k3, data):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return run(TripleDES(k1 + k2 + k3), modes.ECB(), data)


def fmt(kind, **fields):
    return kind + " " + " ".join(f"{k}={v.hex()}" for k, v in fields.items())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=20261015)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    rb = lambda n: bytes(rng.getrandbits(8) for _ in range(n))
    lines = [
        "# Copyright 2026 The dualcore Authors",
        "# SPDX-License-Identifier: Apache-2.0",
        "# Known-answer vectors; regenerate with tools/gen_kat_corpus.py",
    ]

    # Raw AES blocks: the standard example keys, then random ones.
    pt = bytes.fromhex("00112233445566778899aabbccddeeff")
    for n in (16, 24, 32):
        key = bytes(range(n))
        lines.append(fmt("aes", key=key, **{"in": pt, "out": aes_ecb(key, pt)}))
    for n in (16, 24, 32):
        for _ in range(4):
            key, blk = rb(n), rb(16)
            lines.append(fmt("aes", key=key, **{"in": blk, "out": aes_ecb(key, blk)}))

    # Multi-block mode vectors with the classic mode-test keys and message.
    std_keys = [
        bytes.fromhex("2b7e151628aed2a6abf7158809cf4f3c"),
        bytes.fromhex("8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b"),
        bytes.fromhex("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4"),
    ]
    msg = bytes.fromhex(
        "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51"
        "30c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710")
    iv = bytes.fromhex("000102030405060708090a0b0c0d0e0f")
    ctr0 = bytes.fromhex("f0f1f2f3f4f5f6f7f8f9fafbfcfdfeff")
    for key in std_keys:
        lines.append(fmt("ecb", key=key, **{"in": msg, "out": aes_ecb(key, msg)}))
        lines.append(fmt("cbc", key=key, iv=iv, **{"in": msg, "out": run(algorithms.AES(key), modes.CBC(iv), msg)}))
        lines.append(fmt("ctr", key=key, iv=ctr0, **{"in": msg, "out": run(algorithms.AES(key), modes.CTR(ctr0), msg)}))

    for n in (16, 24, 32):
        for _ in range(3):
            key, data, civ = rb(n), rb(16 * rng.randint(1, 6)), rb(16)
            lines.append(fmt("ecb", key=key, **{"in": data, "out": aes_ecb(key, data)}))
            lines.append(fmt("cbc", key=key, iv=civ, **{"in": data, "out": run(algorithms.AES(key), modes.CBC(civ), data)}))
            # Keep the low counter word far from wrapping; the core increments 32 bits only.
            cnt = rb(12) + rng.randrange(0, 1 << 30).to_bytes(4, "big")
            data = rb(rng.randint(1, 90))
            lines.append(fmt("ctr", key=key, iv=cnt, **{"in": data, "out": run(algorithms.AES(key), modes.CTR(cnt), data)}))

    # GCM, 96-bit nonce, no AAD. `iv` is J0 = nonce || 00000001.
    gcm_cases = [
        (bytes(16), bytes(12), b""),
        (bytes(16), bytes(12), bytes(16)),
        (bytes.fromhex("feffe9928665731c6d6a8f9467308308"), bytes.fromhex("cafebabefacedbaddecaf888"),
         bytes.fromhex("d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a72"
                       "1c3c0c95956809532fcf0e2449a6b525b16aedf5aa0de657ba637b391aafd255")),
    ]
    for n in (16, 24, 32):
        for length in (0, 1, 15, 16, 17, 40, 64):
            gcm_cases.append((rb(n), rb(12), rb(length)))
    for key, nonce, data in gcm_cases:
        sealed = AESGCM(key).encrypt(nonce, data, None)
        lines.append(fmt("gcm", key=key, iv=nonce + b"\x00\x00\x00\x01",
                         **{"in": data, "out": sealed[:-16], "tag": sealed[-16:]}))

    # XTS; includes every stealing length from 17 to 31 octets.
    for n in (16, 32):
        for _ in range(3):
            k1, k2, tw, data = rb(n), rb(n), rb(16), rb(16 * rng.randint(1, 4))
            assert py_xts_encrypt(k1, k2, tw, data) == ossl_xts(k1, k2, tw, data)
            lines.append(fmt("xts", key=k1, key2=k2, iv=tw, **{"in": data, "out": ossl_xts(k1, k2, tw, data)}))
    for n in (16, 24, 32):
        for length in range(17, 32):
            k1, k2, tw, data = rb(n), rb(n), rb(16), rb(length)
            out = py_xts_encrypt(k1, k2, tw, data)
            if n != 24:
                assert out == ossl_xts(k1, k2, tw, data)
            lines.append(fmt("xts", key=k1, key2=k2, iv=tw, **{"in": data, "out": out}))
        for length in (32, 48, 50, 77):
            k1, k2, tw, data = rb(n), rb(n), rb(16), rb(length)
            out = py_xts_encrypt(k1, k2, tw, data)
            if n != 24:
                assert out == ossl_xts(k1, k2, tw, data)
            lines.append(fmt("xts", key=k1, key2=k2, iv=tw, **{"in": data, "out": out}))

    # Single DES through the E-D-E construction with equal keys.
    des_cases = [(bytes.fromhex("0101010101010101"), bytes(8))]
    des_cases += [(rb(8), rb(8)) for _ in range(8)]
    for key, blk in des_cases:
        lines.append(fmt("des", key=key, **{"in": blk, "out": tdes(key, key, key, blk)}))

    tdes_cases = [(bytes.fromhex("0123456789abcdef"), bytes.fromhex("23456789abcdef01"),
                   bytes.fromhex("456789abcdef0123"), bytes.fromhex("5468652071756663"))]
    tdes_cases += [(rb(8), rb(8), rb(8), rb(8 * rng.randint(1, 4))) for _ in range(8)]
    for k1, k2, k3, data in tdes_cases:
        lines.append(fmt("tdes", k1=k1, k2=k2, k3=k3, **{"in": data, "out": tdes(k1, k2, k3, data)}))

    with open(args.out, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {sum(not l.startswith('#') for l in lines)} vectors to {args.out}")


if __name__ == "__main__":
    main()
