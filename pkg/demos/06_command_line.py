"""Driving the command line from Python; each call writes a JSON report."""
# %%
import json
import tempfile
from pathlib import Path

from cornering.cli import main

work = Path(tempfile.mkdtemp())
main(["algebra", "build", "--preset", "mckay:2", "--truncation", "3", "--out", str(work / "alg.json")])
main(["hilb", "m=2", "n=2,1", "covering=[∞0|∞1]", "--out", str(work / "hilb.json")])
print(json.loads((work / "hilb.json").read_text())["pairs"])

# %% a malformed input fails with a position and exit code 2
(work / "bad.json").write_text('{"vertices": ["0"],\n "arrows": [}')
print("exit code", main(["algebra", "inspect", "--algebra", str(work / "bad.json")]))
