# JSON documents and the command line
#
# Groupoids, maps and natural isos serialize to a canonical JSON document.
# The same documents feed the `pathcat` command.

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from pathcat.groupoids import GroupoidMap, discrete, interval
from pathcat.serialize import Document, dumps, loads

doc = Document()
doc.add_map(GroupoidMap(discrete(2), interval(), [0, 1], [0, 3]), "m")
text = dumps(doc)
print(text[:300], "...")
assert dumps(loads(text)) == text

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "m.json"
    path.write_text(text)
    for argv in (["check", str(path)],
                 ["classify", "--map", str(path), "--class", "cof"],
                 ["kraus", "trunc-mono", "--group", "Z2"]):
        out = subprocess.run([sys.executable, "-m", "pathcat", *argv], capture_output=True, text=True)
        print("$ pathcat", " ".join(argv), f"(exit {out.returncode})")
        print(out.stdout)

    out = subprocess.run([sys.executable, "-m", "pathcat", "univalence", "--universe", "delooping:S3",
                          "--format", "json"], capture_output=True, text=True)
    print(json.loads(out.stdout)["report"]["results"])
