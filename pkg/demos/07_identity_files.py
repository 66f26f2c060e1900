"""
Identity files and the command line
===================================

The `commforce` command reads a small line-based format.  This script
writes one, decides it, and re-verifies the emitted witness document.
"""

import json
import tempfile

from commforce.cli import main

SOURCE = """\
# satisfied by upper triangular matrices mod 2
vars X Y
id X^2*Y*X*Y - X^2*Y^2*X - X*Y*X^2*Y + X*Y^2*X^2 + Y*X^2*Y*X - Y*X*Y*X^2
"""

with tempfile.NamedTemporaryFile("w", suffix=".ids", delete=False) as fh:
    fh.write(SOURCE)
    path = fh.name

print("$ commforce decide", path)
main(["decide", path])

print()
print("$ commforce decide --json", path)
main(["decide", path, "--json"])
