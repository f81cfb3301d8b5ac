"""Plain-text channel serialization and CSV formatting.

Channel file grammar (one item per line, ``#`` starts a comment)::

    kraus_channel v1
    dim_in <int>
    dim_out <int>
    count <int>
    kraus <index>            # repeated count times, index 0, 1, ...
    <re,im> <re,im> ...      # dim_out rows of dim_in space-separated pairs
"""
from __future__ import annotations

import numpy as np

from .channel import KrausChannel

HEADER = "kraus_channel v1"


class ChannelFormatError(ValueError):
    pass


def fmt(x) -> str:
    """Fixed CSV number formatting: 9 significant digits."""
    if x is None:
        return ""
    return f"{float(x):.9g}"


def dumps_channel(ch: KrausChannel) -> str:
    lines = [HEADER, f"dim_in {ch.dim_in}", f"dim_out {ch.dim_out}", f"count {len(ch)}"]
    for n, k in enumerate(ch.kraus):
        lines.append(f"kraus {n}")
        for row in k:
            lines.append(" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row))
    return "\n".join(lines) + "\n"


def loads_channel(text: str, check: bool = False) -> KrausChannel:
    """Parse the text format; completeness is left to the caller unless ``check``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != HEADER:
        raise ChannelFormatError(f"first line must be {HEADER!r}")
    pos = 1

    def field(name):
        nonlocal pos
        if pos >= len(lines):
            raise ChannelFormatError(f"missing '{name}' line")
        parts = lines[pos].split()
        if len(parts) != 2 or parts[0] != name:
            raise ChannelFormatError(f"expected '{name} <int>', got {lines[pos]!r}")
        pos += 1
        try:
            value = int(parts[1])
        except ValueError:
            raise ChannelFormatError(f"'{name}' needs an integer") from None
        if value <= 0:
            raise ChannelFormatError(f"'{name}' must be positive")
        return value

    d_in, d_out, count = field("dim_in"), field("dim_out"), field("count")
    ops = []
    for n in range(count):
        if pos >= len(lines) or lines[pos] != f"kraus {n}":
            raise ChannelFormatError(f"expected 'kraus {n}'")
        pos += 1
        rows = lines[pos:pos + d_out]
        if len(rows) != d_out:
            raise ChannelFormatError(f"kraus {n}: expected {d_out} rows")
        pos += d_out
        m = np.empty((d_out, d_in), dtype=np.complex128)
        for i, row in enumerate(rows):
            pairs = row.split()
            if len(pairs) != d_in:
                raise ChannelFormatError(f"kraus {n} row {i}: expected {d_in} entries")
            for j, pair in enumerate(pairs):
                try:
                    re, im = pair.split(",")
                    m[i, j] = complex(float(re), float(im))
                except ValueError:
                    raise ChannelFormatError(f"kraus {n} row {i}: bad entry {pair!r}") from None
        ops.append(m)
    if pos != len(lines):
        raise ChannelFormatError("trailing content after the last Kraus operator")
    return KrausChannel(ops, check=check)


def save_channel(ch: KrausChannel, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_channel(ch))


def load_channel(path, check: bool = False) -> KrausChannel:
    with open(path) as fh:
        return loads_channel(fh.read(), check=check)


def write_csv(path, header, rows) -> None:
    """Write rows of already formatted strings; '-' means standard output."""
    text = ",".join(header) + "\n" + "".join(",".join(r) + "\n" for r in rows)
    if path in (None, "-"):
        import sys
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
