#!/usr/bin/env python3
"""Builds the wire-format fixtures from a standalone implementation of the
parameter blob, encoder, puncturing, noise combiner and frame container.

Run from this directory. Outputs are checked in; the C++ tests only read them.
"""

import random
import struct
import zlib

LENGTHS = [19, 23, 29, 31]
TAPS = [0x47E07, 0x1772AF, 0x1C95269, 0x43E98841]


def pack_msb(bits):
    out = bytearray((len(bits) + 7) // 8)
    for i, b in enumerate(bits):
        if b:
            out[i // 8] |= 0x80 >> (i % 8)
    return bytes(out)


def blob(p):
    k, n, mem, width = p["k"], p["n"], p["mem"], p["width"]
    body = b"PRSS" + struct.pack("<BBBHHBH", 1, k, n, mem, width, p["proba"], p["bf"])
    body += struct.pack("<4I", *p["init"])
    nbytes = (mem + 1 + 7) // 8
    for poly in p["polys"]:
        bits = [(poly >> d) & 1 for d in range(nbytes * 8)]
        body += pack_msb(bits)
    body += pack_msb(p["pmatrix"])
    return body + struct.pack("<I", zlib.crc32(body) & 0xFFFFFFFF)


def clmul(a, b):
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def encode(p, msg_bits):
    k, n, mem = p["k"], p["n"], p["mem"]
    steps = len(msg_bits) // k
    streams = [0] * k
    for t in range(steps):
        for i in range(k):
            if msg_bits[t * k + i]:
                streams[i] |= 1 << t
    outs = [0] * n
    for i in range(k):
        for j in range(n):
            outs[j] ^= clmul(streams[i], p["polys"][i * n + j])
    sections = steps + mem
    coded = []
    for t in range(sections):
        for j in range(n):
            coded.append((outs[j] >> t) & 1)
    return coded, sections


def puncture(p, coded, sections):
    n, width, pm = p["n"], p["width"], p["pmatrix"]
    return [coded[s * n + j] for s in range(sections) for j in range(n) if pm[j * width + s % width]]


class Noise:
    def __init__(self, p):
        self.regs = list(p["init"])
        self.bf = p["bf"]

    def step(self):
        idx = 0
        for i in range(4):
            r = self.regs[i]
            fb = bin(r & TAPS[i]).count("1") & 1
            idx = (idx << 1) | (r & 1)
            self.regs[i] = (r >> 1) | (fb << (LENGTHS[i] - 1))
        return (self.bf >> idx) & 1


def message_bits(chunk, k):
    bits = [(byte >> (7 - b)) & 1 for byte in chunk for b in range(8)]
    while len(bits) % k:
        bits.append(0)
    return bits


def frames(p, data, chunk_bytes, binary):
    noise = Noise(p)
    out = bytearray()
    for index, off in enumerate(range(0, len(data), chunk_bytes)):
        chunk = data[off:off + chunk_bytes]
        coded, sections = encode(p, message_bits(chunk, p["k"]))
        sent = [b ^ noise.step() for b in puncture(p, coded, sections)]
        if binary:
            payload = pack_msb(sent)
        else:
            padded = sent + [0] * (-len(sent) % 4)
            payload = "".join(
                "%x" % (padded[i] << 3 | padded[i + 1] << 2 | padded[i + 2] << 1 | padded[i + 3])
                for i in range(0, len(padded), 4)).encode()
        version = 0x81 if binary else 0x01
        out += struct.pack("<BIII", version, index, len(chunk), len(sent)) + payload
    return bytes(out)


def random_params(rng, k, n, mem, width, divisor, proba):
    polys = []
    for _ in range(k):
        row = [0] * n
        while not any(row):
            row = [rng.getrandbits(mem + 1) for _ in range(n)]
        polys += row
    cells = n * width
    while True:
        zeros = set(rng.sample(range(cells), cells // divisor))
        pm = [0 if c in zeros else 1 for c in range(cells)]
        if all(any(pm[j * width + c] for j in range(n)) for c in range(width)):
            break
    bf = 0
    while bf in (0, 0xFFFF):
        bf = sum(1 << w for w in range(16) if rng.randrange(100) < proba)
    init = [rng.randrange(1, 1 << length) for length in LENGTHS]
    return dict(k=k, n=n, mem=mem, width=width, proba=proba, bf=bf, init=init, polys=polys, pmatrix=pm)


def manifest_line(name, p, chunk, binary):
    polys = ",".join(format(poly, "b").zfill(p["mem"] + 1)[::-1] for poly in p["polys"])
    pm = "".join(str(b) for b in p["pmatrix"])
    init = " ".join(str(v) for v in p["init"])
    mode = "binary" if binary else "hex"
    return f"{name} {chunk} {mode} {p['k']} {p['n']} {p['mem']} {p['width']} {p['proba']} {p['bf']} {init} {polys} {pm}\n"


def main():
    rng = random.Random(20240517)
    corpus = open("corpus.txt", "rb").read()
    cases = [
        ("minimal", random_params(rng, 1, 5, 10, 6, 8, 15), corpus[:700], 256, False),
        ("wide", random_params(rng, 3, 8, 24, 10, 8, 30), corpus[1000:6000], 2048, True),
        ("lowentropy", random_params(rng, 2, 6, 17, 13, 8, 5), bytes(range(256)) * 3, 100, False),
    ]
    with open("manifest.txt", "w") as manifest:
        manifest.write("# name chunk_bytes mode k n mem width proba bf init1 init2 init3 init4 polys(coefficient 0 first) pmatrix\n")
        for name, p, data, chunk, binary in cases:
            with open(f"{name}.params", "wb") as f:
                f.write(blob(p))
            with open(f"{name}.plain", "wb") as f:
                f.write(data)
            with open(f"{name}.frames", "wb") as f:
                f.write(frames(p, data, chunk, binary))
            manifest.write(manifest_line(name, p, chunk, binary))


if __name__ == "__main__":
    main()
