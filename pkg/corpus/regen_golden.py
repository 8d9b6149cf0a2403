"""Rewrite golden/<name>.json from the current analyze output.

Run only after an intentional report change; review the diff before committing.
"""

import contextlib
import io
import pathlib

from invdiv.cli import main

HERE = pathlib.Path(__file__).parent

for path in sorted(HERE.glob("*.json")):
    if path.name == "expected.json":
        continue
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        main(["analyze", str(path)])
    (HERE / "golden" / path.name).write_text(buf.getvalue(), encoding="utf-8")
    print(path.stem)
