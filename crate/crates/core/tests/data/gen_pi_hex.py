"""Writes the first N fractional hex digits of pi using mpmath.

Independent of the BBP engine; used to produce the test fixture
pi_hex_1048832.txt (no "3." prefix, no whitespace).
"""
import sys

import mpmath

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1048832
out = sys.argv[2] if len(sys.argv) > 2 else f"pi_hex_{n}.txt"

mpmath.mp.prec = 4 * n + 64
frac = mpmath.pi - 3
digits = int(mpmath.floor(frac * mpmath.mpf(16) ** n))
text = format(digits, "x").rjust(n, "0")
with open(out, "w") as fh:
    fh.write(text)
